"""Dual graphs of minimal resolutions and fundamental cycles."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .groups import GroupParams, family_data, nu_from_hj
from .hj import hj_expand


class LauferError(RuntimeError):
    pass


@dataclass(frozen=True)
class ResolutionGraph:
    self_ints: tuple
    edges: tuple
    layout: str = "chain"

    @property
    def size(self):
        return len(self.self_ints)

    def neighbours(self, i):
        return [v if u == i else u for u, v in self.edges if i in (u, v)]

    def to_dict(self):
        return {
            "curves": [{"id": i, "self_int": s} for i, s in enumerate(self.self_ints)],
            "edges": [list(e) for e in self.edges],
            "layout": self.layout,
        }


@dataclass(frozen=True)
class FundamentalCycle:
    coeffs: tuple
    steps: int = field(default=0, compare=False)


def chain(alphas, layout="chain"):
    n = len(alphas)
    return ResolutionGraph(tuple(-a for a in alphas), tuple((i, i + 1) for i in range(n - 1)), layout)


def star(row, branch_at, branch=2):
    """Chain `row` plus one extra curve attached at position branch_at, listed last."""
    g = chain(row, "star")
    k = len(row)
    return ResolutionGraph(g.self_ints + (-branch,), g.edges + ((branch_at, k),), "star")


# chain entries per subfamily; None marks the b curve, the branch (-2) hangs off it
STAR_ROWS = {
    ("T", 1): [2, 2, None, 2, 2],
    ("T", 3): [3, None, 2, 2],
    ("T", 5): [3, None, 3],
    ("O", 1): [2, 2, None, 2, 2, 2],
    ("O", 5): [3, None, 2, 2, 2],
    ("O", 7): [4, None, 2, 2],
    ("O", 11): [3, None, 4],
    ("I", 1): [2, 2, None, 2, 2, 2, 2],
    ("I", 7): [2, 2, None, 2, 3],
    ("I", 11): [3, None, 2, 2, 2, 2],
    ("I", 13): [2, 2, None, 3, 2],
    ("I", 17): [3, None, 2, 3],
    ("I", 19): [5, None, 2, 2],
    ("I", 23): [3, None, 3, 2],
    ("I", 29): [3, None, 5],
}


def dual_graph(g: GroupParams) -> ResolutionGraph:
    if g.family == "A":
        return chain(hj_expand(g.r, g.a).alphas)
    if g.family == "D":
        alphas = hj_expand(g.n, g.q).alphas
        n = len(alphas)
        selfs = (-2, -2) + tuple(-a for a in alphas)
        edges = ((0, 2), (1, 2)) + tuple((i, i + 1) for i in range(2, n + 1))
        return ResolutionGraph(selfs, edges, "fork")
    fd = family_data(g)
    row = STAR_ROWS[(g.family, fd.delta)]
    pos = row.index(None)
    return star([fd.b if x is None else x for x in row], pos)


def intersection_matrix(G: ResolutionGraph) -> np.ndarray:
    M = np.diag(np.array(G.self_ints, dtype=np.int64))
    for u, v in G.edges:
        M[u, v] = M[v, u] = 1
    return M


def is_negative_definite(M) -> bool:
    """Exact test: every pivot of -M in fraction-free elimination is positive."""
    A = [[Fraction(-int(x)) for x in row] for row in np.asarray(M)]
    n = len(A)
    for k in range(n):
        if A[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return True


def fundamental_cycle(G: ResolutionGraph) -> FundamentalCycle:
    """Laufer's algorithm seeded with the reduced cycle."""
    M = intersection_matrix(G)
    z = np.ones(G.size, dtype=np.int64)
    cap = sum(-s for s in G.self_ints) * G.size * 16
    steps = 0
    while True:
        prod = M @ z
        bad = np.flatnonzero(prod > 0)
        if bad.size == 0:
            return FundamentalCycle(tuple(int(x) for x in z), steps)
        z[bad[0]] += 1
        steps += 1
        if steps > cap:
            raise LauferError(f"Laufer did not terminate within {cap} steps")


def is_fundamental(G: ResolutionGraph, coeffs) -> bool:
    """Anti-nef and no single decrement stays anti-nef."""
    M = intersection_matrix(G)
    z = np.array(coeffs, dtype=np.int64)
    if (z < 1).any() or (M @ z > 0).any():
        return False
    for i in range(len(z)):
        if z[i] > 1:
            w = z.copy()
            w[i] -= 1
            if not (M @ w > 0).any():
                return False
    return True


def zf_closed_form_D(n: int, q: int) -> FundamentalCycle:
    alphas = hj_expand(n, q).alphas
    if alphas[0] >= 3:
        return FundamentalCycle((1,) * (len(alphas) + 2))
    nu = nu_from_hj(alphas)
    return FundamentalCycle((1, 1) + (2,) * nu + (1,) * (len(alphas) - nu))

