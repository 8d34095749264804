"""Extended Dynkin diagrams with marks, drawing rows and twists.

Every diagram calls its extending node ``r``; R sits at (0, r) in the cover.
Parity 0 nodes (even distance from ``r``) are the sources of the base
orientation.  ``rows`` lists the drawing rows top to bottom, each row mapping
a label parity to the node drawn there.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class Diagram:
    name: str
    nodes: tuple
    marks: tuple
    edges: tuple
    rows: tuple
    extending: str = "r"

    @cached_property
    def index(self):
        return {x: i for i, x in enumerate(self.nodes)}

    @cached_property
    def adjacency(self):
        adj = {x: [] for x in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def parity(self):
        par = {self.extending: 0}
        todo = [self.extending]
        while todo:
            x = todo.pop()
            for y in self.adjacency[x]:
                if y not in par:
                    par[y] = 1 - par[x]
                    todo.append(y)
        return par

    def mark(self, node):
        return self.marks[self.index[node]]

    def row_of(self, node):
        for i, row in enumerate(self.rows):
            if node in row.values():
                return i
        raise KeyError(node)

    def is_automorphism(self, perm):
        es = {frozenset(e) for e in self.edges}
        return all(frozenset((perm[u], perm[v])) in es for u, v in self.edges) and all(
            self.mark(x) == self.mark(perm[x]) for x in self.nodes
        )


def _diagram(name, marked, edges, rows):
    nodes = tuple(x for x, _ in marked)
    return Diagram(name, nodes, tuple(m for _, m in marked), tuple(edges), tuple(rows))


def affine_d(q):
    """D~_{q+2}: r and s on c1, the chain c1..c_{q-1}, w+ and w- on c_{q-1}."""
    cs = [f"c{k}" for k in range(1, q)]
    marked = [("r", 1), ("s", 1)] + [(c, 2) for c in cs] + [("w+", 1), ("w-", 1)]
    edges = [("r", "c1"), ("s", "c1")] + list(zip(cs, cs[1:])) + [(cs[-1], "w+"), (cs[-1], "w-")]
    if q == 2:
        rows = [{0: "r"}, {}, {0: "s"}, {1: "c1"}, {0: "w+"}, {}, {0: "w-"}]
    else:
        rows = [{0: "r"}, {0: "s", 1: "c1"}]
        rows += [{k % 2: f"c{k}"} for k in range(2, q - 1)]
        rows += [{(q - 1) % 2: f"c{q - 1}", q % 2: "w+"}, {q % 2: "w-"}]
    return _diagram(f"D{q + 2}", marked, edges, rows)


E6 = _diagram(
    "E6",
    [("a2", 1), ("a1", 2), ("c", 3), ("r1", 2), ("r", 1), ("b1", 2), ("b2", 1)],
    [("a2", "a1"), ("a1", "c"), ("c", "r1"), ("r1", "r"), ("c", "b1"), ("b1", "b2")],
    [{0: "a2"}, {1: "a1"}, {0: "c", 1: "r1"}, {0: "r", 1: "b1"}, {0: "b2"}],
)

E7 = _diagram(
    "E7",
    [("q0", 1), ("q1", 2), ("q2", 3), ("x", 2), ("c", 4), ("p2", 3), ("p1", 2), ("r", 1)],
    [("q0", "q1"), ("q1", "q2"), ("q2", "c"), ("c", "x"), ("c", "p2"), ("p2", "p1"), ("p1", "r")],
    [{0: "q0"}, {1: "q1"}, {0: "q2"}, {0: "x", 1: "c"}, {0: "p2"}, {1: "p1"}, {0: "r"}],
)

E8 = _diagram(
    "E8",
    [("q0", 2), ("q1", 4), ("x", 3), ("c", 6), ("p4", 5), ("p3", 4), ("p2", 3), ("p1", 2), ("r", 1)],
    [("q0", "q1"), ("q1", "c"), ("c", "x"), ("c", "p4"), ("p4", "p3"), ("p3", "p2"), ("p2", "p1"), ("p1", "r")],
    [{1: "q0"}, {0: "q1"}, {0: "x", 1: "c"}, {0: "p4"}, {1: "p3"}, {0: "p2"}, {1: "p1"}, {0: "r"}],
)

# order-3 rotation of the E6 arms, r -> b2 -> a2 -> r
E6_ROTATION = {"r": "b2", "b2": "a2", "a2": "r", "r1": "b1", "b1": "a1", "a1": "r1", "c": "c"}


def d_swap(q):
    perm = {x: x for x in affine_d(q).nodes}
    perm["r"], perm["s"] = "s", "r"
    return perm


def quotient_data(g):
    """(diagram, period, twist) with the identification (t, x) ~ (t + period, twist[x])."""
    f = g.family
    if f == "D":
        dia = affine_d(g.q)
        p = g.n - g.q
        sigma = d_swap(g.q) if p % 2 == 0 else {x: x for x in dia.nodes}
        return dia, p, sigma
    dia = {"T": E6, "O": E7, "I": E8}[f]
    sigma = {x: x for x in dia.nodes}
    if f == "T" and g.m % 6 == 3:
        sigma = dict(E6_ROTATION)
    return dia, g.m, sigma
