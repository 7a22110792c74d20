"""The rational weight W_F turning the area A_F into the leading constant C_F."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .autgroup import LABELS
from .errors import InternalCheckError, InvalidFormError

# how many m_i each row of the weight table uses
_NEEDS = {"D3": 4, "D4": 3, "D6": 4}


@dataclass(frozen=True)
class WeightInput:
    label: str
    m: int = 1
    ms: tuple = ()

    def __post_init__(self):
        if self.label not in LABELS:
            raise InvalidFormError("unknown group label %r" % self.label)
        if self.m < 1 or any(x < 1 for x in self.ms):
            raise InvalidFormError("lattice determinants must be positive")
        need = _NEEDS.get(self.label, 0)
        if len(self.ms) != need:
            raise InvalidFormError("%s needs %d subgroup determinants, got %d"
                                   % (self.label, need, len(self.ms)))
        if self.label in ("C1", "C2") and self.m != 1:
            raise InvalidFormError("m is always 1 for %s" % self.label)
        if need and reduce(math.lcm, self.ms, 1) != self.m:
            raise InvalidFormError("m = %d is not lcm%s" % (self.m, tuple(self.ms)))


def w_f(inp: WeightInput) -> Fraction:
    L, m = inp.label, Fraction(inp.m)
    half = Fraction(1, 2)
    if L == "C1":
        w = Fraction(1)
    elif L == "C2":
        w = half
    elif L == "C3":
        w = 1 - 2 / (3 * m)
    elif L == "C4":
        w = half * (1 - 1 / (2 * m))
    elif L == "C6":
        w = half * (1 - 2 / (3 * m))
    elif L == "D1":
        w = 1 - 1 / (2 * m)
    elif L == "D2":
        w = half * (1 - 1 / (2 * m))
    elif L == "D4":
        m1, m2, m3 = inp.ms
        w = half * (1 - sum(Fraction(1, 2 * x) for x in (m1, m2, m3)) + 3 / (4 * m))
    else:
        m1, m2, m3, m4 = inp.ms
        w = (1 - sum(Fraction(1, 2 * x) for x in (m1, m2, m3))
             - Fraction(2, 3 * m4) + 4 / (3 * m))
        if L == "D6":
            w *= half
    if not 0 < w <= 1:
        raise InternalCheckError("weight %s outside (0, 1]" % w)
    return w
