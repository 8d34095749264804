"""Finite AR quivers as quotients of the translation quiver ZQ over an extended Dynkin diagram."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .diagrams import Diagram, quotient_data
from .groups import GroupParams


class QuiverError(RuntimeError):
    pass


class DualAmbiguityError(QuiverError):
    def __init__(self, candidates):
        self.candidates = candidates
        super().__init__(f"{len(candidates)} anti-automorphisms satisfy the duality constraints")


class UnknownVertexName(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class TranslationQuiver:
    group: GroupParams
    nodes: tuple  # diagram node of each vertex
    columns: tuple
    ranks: tuple
    arrows: dict  # (u, v) -> multiplicity
    tau: tuple
    tau_inv: tuple
    R: int
    period: int
    diagram: Diagram | None = None
    sigma: dict | None = None
    flip: int = 0

    @property
    def size(self):
        return len(self.nodes)

    @property
    def omega(self):
        return self.tau[self.R]

    @cached_property
    def succ(self):
        out = [dict() for _ in range(self.size)]
        for (u, v), m in self.arrows.items():
            out[u][v] = m
        return out

    @cached_property
    def pred(self):
        out = [dict() for _ in range(self.size)]
        for (u, v), m in self.arrows.items():
            out[v][u] = m
        return out

    def mult(self, u, v):
        return self.arrows.get((u, v), 0)

    # cover coordinates ---------------------------------------------------

    def label(self, v):
        """Label of the representative in the cover; arrows raise labels by one."""
        if self.diagram is None:
            return self.columns[v]
        return 2 * self.columns[v] + (self.diagram.parity[self.nodes[v]] ^ self.flip)

    def at(self, t, node):
        """Image of the cover vertex (t, node)."""
        dia = self.diagram
        k, t0 = divmod(t, self.period)
        x = node
        inv = {y: z for z, y in self.sigma.items()}
        step = inv if k > 0 else self.sigma
        for _ in range(abs(k)):
            x = step[x]
        return t0 * len(dia.nodes) + dia.index[x]

    def at_label(self, node, offset):
        """Vertex for `node` drawn `offset` labels to the right of R."""
        dia = self.diagram
        if dia is None:
            raise UnknownVertexName("cyclic quivers have no cover labels")
        if node not in dia.index:
            raise UnknownVertexName(node)
        absolute = offset + self.label(self.R)
        p = dia.parity[node] ^ self.flip
        if (absolute - p) % 2:
            raise UnknownVertexName(f"{node} is never drawn at offset {offset}")
        return self.at((absolute - p) // 2, node)

    def at_cell(self, row, offset):
        """Vertex in drawing row `row` at label offset `offset` from R."""
        slots = self.diagram.rows[row]
        node = slots.get(offset % 2)
        if node is None:
            raise UnknownVertexName(f"row {row} has no vertex at offset {offset}")
        return self.at_label(node, offset)

    def name_of(self, v):
        if self.diagram is None:
            return f"S{v}"
        return f"{self.nodes[v]}@{self.label(v) - self.label(self.R)}"

    def check_mesh(self):
        """Vertices where the sources into x differ from the targets out of tau x."""
        return [x for x in range(self.size) if self.pred[x] != self.succ[self.tau[x]]]

    def to_dict(self, dual=None, named=None):
        return {
            "group": str(self.group),
            "vertices": [
                {"id": v, "node": self.nodes[v], "column": self.columns[v], "rank": self.ranks[v]}
                for v in range(self.size)
            ],
            "arrows": [{"from": u, "to": v, "mult": m} for (u, v), m in sorted(self.arrows.items())],
            "tau": {str(v): self.tau[v] for v in range(self.size)},
            "R": self.R,
            "omega": self.omega,
            "dual": None if dual is None else {str(v): dual[v] for v in range(self.size)},
            "named": named or {},
        }


def _cyclic_quiver(g):
    r, a = g.r, g.a
    arrows = Counter()
    for j in range(r):
        arrows[(j, (j + 1) % r)] += 1
        arrows[(j, (j + a) % r)] += 1
    return TranslationQuiver(
        group=g,
        nodes=("x",) * r,
        columns=tuple(range(r)),
        ranks=(1,) * r,
        arrows=dict(arrows),
        tau=tuple((j - 1 - a) % r for j in range(r)),
        tau_inv=tuple((j + 1 + a) % r for j in range(r)),
        R=0,
        period=r,
    )


def build_ar_quiver(g: GroupParams, flip: int = 0) -> TranslationQuiver:
    """flip=1 knits over the opposite bipartite orientation (odd nodes as sources)."""
    if g.family == "A":
        return _cyclic_quiver(g)
    dia, period, sigma = quotient_data(g)
    if not dia.is_automorphism(sigma):
        raise QuiverError(f"twist for {g} is not a usable diagram automorphism")
    if any(dia.parity[x] != dia.parity[sigma[x]] for x in dia.nodes):
        raise QuiverError(f"twist for {g} does not preserve the orientation")
    k = len(dia.nodes)
    size = period * k
    shell = TranslationQuiver(g, (), (), (), {}, (), (), 0, period, dia, sigma, flip)
    arrows = Counter()
    tau, tau_inv = [0] * size, [0] * size
    for t in range(period):
        for x in dia.nodes:
            v = t * k + dia.index[x]
            source = (dia.parity[x] ^ flip) == 0
            for y in dia.adjacency[x]:
                arrows[(v, shell.at(t if source else t + 1, y))] += 1
            tau[v] = shell.at(t - 1, x)
            tau_inv[v] = shell.at(t + 1, x)
    Q = TranslationQuiver(
        group=g,
        nodes=tuple(dia.nodes[i % k] for i in range(size)),
        columns=tuple(i // k for i in range(size)),
        ranks=tuple(dia.marks[i % k] for i in range(size)),
        arrows=dict(arrows),
        tau=tuple(tau),
        tau_inv=tuple(tau_inv),
        R=dia.index[dia.extending],
        period=period,
        diagram=dia,
        sigma=sigma,
        flip=flip,
    )
    if Q.check_mesh():
        raise QuiverError(f"mesh relation fails for {g}")
    return Q


def vertex_rank(Q: TranslationQuiver, v: int) -> int:
    return Q.ranks[v]


# named vertices ------------------------------------------------------------

O_NAMES = {"D1": ("q0", 6), "F": ("q0", 12), "D3": ("q0", 18), "E1": ("r", 8), "D2": ("r", 12), "E2": ("r", 16), "N": ("r", 24)}
I_NAMES = {"A1": 12, "B1": 20, "A2": 24, "C": 30, "A3": 36, "B2": 40, "A4": 48, "M": 60}

_POSITION = re.compile(r"([a-z][a-z0-9+-]*)@(-?\d+)")


def locate_named_vertices(Q: TranslationQuiver, g: GroupParams | None = None) -> dict:
    g = g or Q.group
    named = {"R": Q.R}
    f = g.family
    if f == "A":
        named.update({f"S{j}": j for j in range(g.r)})
    elif f == "D":
        n, q = g.n, g.q
        named.update({f"V{t}": Q.at_label(f"c{t}", t) for t in range(1, q)})
        named["W+"] = Q.at_label("w+", q)
        named["W-"] = Q.at_label("w-", q)
        named.update({f"W{t}": Q.at_label("r" if t % 2 == 0 else "s", 2 * t) for t in range(1, n - q + 1)})
    elif f == "O":
        named.update({k: Q.at_label(node, off) for k, (node, off) in O_NAMES.items()})
    elif f == "I":
        named.update({k: Q.at_label("r", off) for k, off in I_NAMES.items()})
    return named


def resolve_name(Q: TranslationQuiver, name, named=None) -> int:
    """Vertex for a family name, a position such as ``c@3``, or a plain integer id."""
    if isinstance(name, int) or (isinstance(name, str) and name.isdigit()):
        v = int(name)
        if not 0 <= v < Q.size:
            raise UnknownVertexName(name)
        return v
    named = named if named is not None else locate_named_vertices(Q)
    if name in named:
        return named[name]
    m = _POSITION.fullmatch(name)
    if m and Q.diagram is not None:
        return Q.at_label(m.group(1), int(m.group(2)))
    raise UnknownVertexName(f"{name!r} is not defined for {Q.group}")


# structure-preserving maps -------------------------------------------------


def _search_maps(Q1, Q2, anti, limit=64):
    """All bijections fixing R that commute with tau (anti: invert tau) and carry arrows to arrows
    (anti: reversed), multiplicities included."""
    n = Q1.size
    if Q2.size != n:
        return []
    t1, ti1 = Q1.tau, Q1.tau_inv
    t2, ti2 = (Q2.tau_inv, Q2.tau) if anti else (Q2.tau, Q2.tau_inv)
    out2, in2 = (Q2.pred, Q2.succ) if anti else (Q2.succ, Q2.pred)
    phi, inv = [-1] * n, [-1] * n
    found = []

    def push(x, y, trail):
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if phi[x] == y:
                continue
            if phi[x] != -1 or inv[y] != -1 or Q1.ranks[x] != Q2.ranks[y]:
                return False
            if len(Q1.succ[x]) != len(out2[y]) or len(Q1.pred[x]) != len(in2[y]):
                return False
            for w, m in Q1.succ[x].items():
                if phi[w] != -1 and out2[y].get(phi[w], 0) != m:
                    return False
            for w, m in Q1.pred[x].items():
                if phi[w] != -1 and in2[y].get(phi[w], 0) != m:
                    return False
            phi[x], inv[y] = y, x
            trail.append(x)
            stack.append((t1[x], t2[y]))
            stack.append((ti1[x], ti2[y]))
        return True

    def undo(trail):
        for x in trail:
            inv[phi[x]] = -1
            phi[x] = -1

    def frontier():
        for z in range(n):
            if phi[z] == -1:
                continue
            for w in Q1.succ[z]:
                if phi[w] == -1:
                    return w, list(out2[phi[z]])
            for w in Q1.pred[z]:
                if phi[w] == -1:
                    return w, list(in2[phi[z]])
        return None, None

    def rec():
        if len(found) >= limit:
            return
        x, cands = frontier()
        if x is None:
            if all(v != -1 for v in phi):
                found.append(tuple(phi))
            return
        for y in cands:
            trail = []
            if push(x, y, trail):
                rec()
            undo(trail)

    trail = []
    if push(Q1.R, Q2.R, trail):
        rec()
    return found


def dual_candidates(Q: TranslationQuiver) -> list:
    """Involutive anti-automorphisms fixing R with tau(x*) = (tau^- x)*."""
    return [phi for phi in _search_maps(Q, Q, anti=True) if all(phi[phi[x]] == x for x in range(Q.size))]


def compute_dual(Q: TranslationQuiver) -> tuple:
    cands = dual_candidates(Q)
    if len(cands) != 1:
        raise DualAmbiguityError(cands)
    return cands[0]


def find_isomorphism(Q1: TranslationQuiver, Q2: TranslationQuiver):
    """An isomorphism of translation quivers sending R to R, or None."""
    maps = _search_maps(Q1, Q2, anti=False, limit=1)
    return maps[0] if maps else None


def is_anti_automorphism(Q: TranslationQuiver, phi) -> bool:
    return (
        phi[Q.R] == Q.R
        and all(Q.mult(phi[v], phi[u]) == m for (u, v), m in Q.arrows.items())
        and len({(phi[v], phi[u]) for (u, v) in Q.arrows}) == len(Q.arrows)
        and all(Q.tau[phi[x]] == phi[Q.tau_inv[x]] for x in range(Q.size))
    )


def rank_square_sum(Q: TranslationQuiver) -> int:
    return sum(r * r for r in Q.ranks)
