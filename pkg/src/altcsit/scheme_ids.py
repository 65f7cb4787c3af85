"""Scheme identifiers."""

from dataclasses import dataclass

# two-user families; "m" suffix marks the receiver-swapped variant
TWO_USER = ("scheme1", "scheme2", "scheme3", "scheme1m", "scheme2m", "scheme3m")
PARAMETRIC = ("kuser", "kx2", "twoxk")
NAMES = TWO_USER + ("threeuser",) + PARAMETRIC


@dataclass(frozen=True)
class SchemeId:
    """Name of a transmission scheme plus its size parameter, if any.

    ``kuser``, ``kx2`` and ``twoxk`` take ``k >= 2``: the K-user network,
    K transmitters with two receivers, and two transmitters with K receivers.
    """

    name: str
    k: int | None = None

    def __post_init__(self):
        name = self.name.lower()
        object.__setattr__(self, "name", name)
        if name not in NAMES:
            raise ValueError(f"unknown scheme {self.name!r}")
        if name in PARAMETRIC:
            if self.k is None or int(self.k) != self.k or self.k < 2:
                raise ValueError(f"{name} needs an integer k >= 2")
        elif self.k is not None:
            raise ValueError(f"{name} takes no k parameter")

    @property
    def family(self):
        """``"scheme1"`` for both ``scheme1`` and ``scheme1m``, else the name."""
        return self.name.rstrip("m") if self.name in TWO_USER else self.name

    @property
    def mirrored(self):
        return self.name in TWO_USER and self.name.endswith("m")

    def __str__(self):
        return self.name if self.k is None else f"{self.name}({self.k})"


SCHEME1 = SchemeId("scheme1")
SCHEME2 = SchemeId("scheme2")
SCHEME3 = SchemeId("scheme3")
SCHEME1M = SchemeId("scheme1m")
SCHEME2M = SchemeId("scheme2m")
SCHEME3M = SchemeId("scheme3m")
THREE_USER = SchemeId("threeuser")


def KUser(k):
    return SchemeId("kuser", k)


def Kx2(k):
    return SchemeId("kx2", k)


def TwoXK(k):
    return SchemeId("twoxk", k)
