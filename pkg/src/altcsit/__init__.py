"""Simulation and analysis of SISO X-networks with alternating CSIT."""

from .channel import (ChannelProcess, NoiseConfig, PowerConfig, apply_channel,
                      sample_channel)
from .csit import (CsitPattern, CsitState, CsitView, LambdaDistribution, census,
                   dominates, enumerate_patterns, is_synergistic, lambda_of, match_scheme)
from .errors import (AccessDenied, AltCsitError, InvalidDimension, InvalidSweep,
                     InvalidWeights, NotIdentifiable, PatternMismatch, SlotOutOfRange,
                     UnboundedRegion)
from .scheme_ids import (SCHEME1, SCHEME1M, SCHEME2, SCHEME2M, SCHEME3, SCHEME3M,
                         THREE_USER, KUser, Kx2, SchemeId, TwoXK)

__version__ = "0.1.0"
