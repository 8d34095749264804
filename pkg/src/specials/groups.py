"""Discrete parameters of the small finite subgroups of GL(2, C)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .hj import hj_expand

FAMILIES = ("A", "D", "T", "O", "I")

# modulus k and allowed residues delta for m = k(b - 2) + delta
RESIDUES = {
    "T": (6, (1, 3, 5)),
    "O": (12, (1, 5, 7, 11)),
    "I": (30, (1, 7, 11, 13, 17, 19, 23, 29)),
}

_GRAMMAR = re.compile(r"([AD]):(\d+),(\d+)|([TOI]):(\d+)")


class GroupError(ValueError):
    """Parameters do not describe a small subgroup."""


class GroupSyntaxError(GroupError):
    """Text does not match the group grammar."""


@dataclass(frozen=True, order=True)
class GroupParams:
    family: str
    params: tuple

    def __str__(self):
        return f"{self.family}:{','.join(map(str, self.params))}"

    @property
    def r(self):
        return self.params[0]

    @property
    def a(self):
        return self.params[1]

    n = r
    q = a

    @property
    def m(self):
        return self.params[0]

    @property
    def period(self):
        if self.family == "A":
            return self.r
        if self.family == "D":
            return self.n - self.q
        return self.m

    @property
    def order(self):
        f = self.family
        if f == "A":
            return self.r
        if f == "D":
            return 4 * self.q * (self.n - self.q)
        return {"T": 24, "O": 48, "I": 120}[f] * self.m

    @property
    def gorenstein(self):
        if self.family == "A":
            return self.a == self.r - 1
        return self.family in RESIDUES and self.m == 1


@dataclass(frozen=True)
class FamilyData:
    family: str
    b: int | None = None
    delta: int | None = None
    nu: int | None = None
    nq_parity: int | None = None


def validate(g: GroupParams) -> None:
    """Raise GroupError naming the violated condition."""
    f, p = g.family, g.params
    if f not in FAMILIES:
        raise GroupError(f"unknown family {f!r}")
    if f in ("A", "D"):
        if len(p) != 2:
            raise GroupError(f"{f} takes two parameters")
        big, small = p
        lo = "a" if f == "A" else "q"
        if not 1 < small < big:
            raise GroupError(f"range: need 1 < {lo} < {'r' if f == 'A' else 'n'}, got {g}")
        if gcd(big, small) != 1:
            raise GroupError(f"coprimality: gcd{p} = {gcd(big, small)}")
        return
    if len(p) != 1 or p[0] < 1:
        raise GroupError(f"{f} takes one positive parameter")
    k, allowed = RESIDUES[f]
    if p[0] % k not in allowed:
        raise GroupError(f"residue: m mod {k} = {p[0] % k} not in {allowed}")


def parse_group(spec: str) -> GroupParams:
    m = _GRAMMAR.fullmatch(spec)
    if not m:
        raise GroupSyntaxError(f"cannot parse group {spec!r}")
    if m.group(1):
        g = GroupParams(m.group(1), (int(m.group(2)), int(m.group(3))))
    else:
        g = GroupParams(m.group(4), (int(m.group(5)),))
    validate(g)
    return g


def format_group(g: GroupParams) -> str:
    return str(g)


def nu_from_hj(alphas) -> int:
    """Leading run of 2's, capped at N-1 so that alpha_{nu+1} exists."""
    run = 0
    for x in alphas:
        if x != 2:
            break
        run += 1
    return min(run, len(alphas) - 1)


def family_data(g: GroupParams) -> FamilyData:
    if g.family in RESIDUES:
        k, _ = RESIDUES[g.family]
        delta = g.m % k
        return FamilyData(g.family, b=(g.m - delta) // k + 2, delta=delta)
    if g.family == "D":
        from .resolution import dual_graph, fundamental_cycle

        nu = nu_from_hj(hj_expand(g.n, g.q).alphas)
        laufer = fundamental_cycle(dual_graph(g)).coeffs.count(2)
        if nu != laufer:
            raise AssertionError(f"nu mismatch for {g}: continued fraction {nu}, Laufer {laufer}")
        return FamilyData("D", nu=nu, nq_parity=(g.n - g.q) % 2)
    return FamilyData(g.family)


def iter_groups(family: str, limit: int):
    """All valid groups of a family whose leading parameter is at most limit."""
    if family in ("A", "D"):
        for big in range(3, limit + 1):
            for small in range(2, big):
                if gcd(big, small) == 1:
                    yield GroupParams(family, (big, small))
    else:
        k, allowed = RESIDUES[family]
        for m in range(1, limit + 1):
            if m % k in allowed:
                yield GroupParams(family, (m,))
