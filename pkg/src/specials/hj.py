"""Hirzebruch-Jung continued fractions and the i-series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class HJError(ValueError):
    pass


@dataclass(frozen=True)
class HJData:
    r: int
    a: int
    alphas: tuple
    iseries: tuple

    @property
    def length(self):
        return len(self.alphas)

    def to_dict(self):
        return {"alphas": list(self.alphas), "iseries": list(self.iseries)}


def hj_evaluate(alphas) -> Fraction:
    """Value of alpha_1 - 1/(alpha_2 - 1/(...)) as an exact rational."""
    alphas = list(alphas)
    if not alphas or any(x < 2 for x in alphas):
        raise HJError(f"entries must be >= 2: {alphas}")
    value = Fraction(alphas[-1])
    for x in reversed(alphas[:-1]):
        value = x - 1 / value
    return value


def hj_expand(r: int, a: int) -> HJData:
    if not (0 < a < r) or gcd(r, a) != 1:
        raise HJError(f"need 0 < a < r with gcd 1, got r={r}, a={a}")
    alphas = []
    x, y = r, a
    while y:
        alpha = -(-x // y)
        alphas.append(alpha)
        x, y = y, alpha * y - x
    iseries = [r, a]
    for t in range(2, len(alphas) + 2):
        iseries.append(alphas[t - 2] * iseries[t - 1] - iseries[t - 2])
    if hj_evaluate(alphas) != Fraction(r, a):
        raise HJError(f"back-evaluation failed for {r}/{a}")
    if iseries[-2:] != [1, 0] or any(p <= q for p, q in zip(iseries, iseries[1:])):
        raise HJError(f"bad i-series {iseries}")
    return HJData(r, a, tuple(alphas), tuple(iseries))
