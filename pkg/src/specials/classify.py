"""Special CM modules: counting criterion, closed-form tables and cross-checks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .corpus import specials_fixture_cells
from .groups import GroupParams, family_data
from .hj import hj_expand
from .ladder import ext1_profile, syzygy_all
from .quiver import (
    build_ar_quiver,
    dual_candidates,
    locate_named_vertices,
    resolve_name,
)
from .resolution import dual_graph, fundamental_cycle

# b >= 3 positions, as (node, label offset from R)
T_POSITIONS = {
    1: [("a2", 4), ("a2", 8), ("r", 6), ("r", 12), ("b2", 4), ("b2", 8)],
    3: [("a2", 4), ("r", 6), ("r", 12), ("b2", 4), ("b2", 8)],
    5: [("a2", 4), ("r", 6), ("r", 12), ("b2", 4)],
}
O_SETS = {
    1: ["D1", "D2", "D3", "E1", "E2", "F", "N"],
    5: ["D1", "D2", "D3", "E1", "F", "N"],
    7: ["D1", "E1", "E2", "F", "N"],
    11: ["D1", "E1", "F", "N"],
}
I_SETS = {
    1: ["A1", "A2", "A3", "A4", "B1", "B2", "C", "M"],
    7: ["A1", "A3", "B1", "B2", "C", "M"],
    11: ["A1", "A2", "A3", "A4", "B1", "C", "M"],
    13: ["A1", "A2", "B1", "B2", "C", "M"],
    17: ["A1", "A3", "B1", "C", "M"],
    19: ["A1", "B1", "B2", "C", "M"],
    23: ["A1", "A2", "B1", "C", "M"],
    29: ["A1", "B1", "C", "M"],
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"pass": self.passed, **self.detail}


@dataclass
class ClassificationReport:
    group: GroupParams
    vertex_count: int
    specials_by_counting: list
    specials_closed_form: list
    closed_form_names: list
    ranks: dict
    dual_graph: dict
    zf: list
    R: int = 0
    checks: dict = field(default_factory=dict)
    vertex_names: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def to_dict(self):
        return {
            "group": str(self.group),
            "vertex_count": self.vertex_count,
            "specials_by_counting": self.specials_by_counting,
            "specials_closed_form": self.specials_closed_form,
            "closed_form_names": self.closed_form_names,
            "special_names": [self.vertex_names[v] for v in self.specials_by_counting],
            "ranks": {str(v): r for v, r in self.ranks.items()},
            "dual_graph": self.dual_graph,
            "zf": self.zf,
            "checks": {k: c.to_dict() for k, c in self.checks.items()},
            "pass": self.passed,
        }


def specials_by_counting(Q) -> set:
    profile = ext1_profile(Q)
    return {Q.R} | {int(v) for v in range(Q.size) if profile[v] == 0}


def _all_positions(g):
    from .diagrams import quotient_data

    dia, period, _ = quotient_data(g)
    return [f"{x}@{2 * t + dia.parity[x]}" for t in range(period) for x in dia.nodes]


def specials_closed_form(g: GroupParams) -> list:
    """Names of the specials from the closed-form tables (R included)."""
    f = g.family
    if f == "A":
        i = hj_expand(g.r, g.a).iseries
        return ["R"] + [f"S{x}" for x in i[1:-1]]
    if f == "D":
        hj = hj_expand(g.n, g.q)
        i, N = hj.iseries, hj.length
        names = ["R", "W+", "W-"]
        if g.n > 2 * g.q:
            return names + [f"W{i[p]}" for p in range(1, N + 1)]
        nu = family_data(g).nu
        names += [f"W{i[p]}" for p in range(nu + 1, N + 1)]
        return names + [f"V{i[nu + 1] + s * (g.n - g.q)}" for s in range(nu)]
    fd = family_data(g)
    if fd.b == 2:
        if fd.delta == 1:
            return _all_positions(g)
        from .diagrams import quotient_data

        dia = quotient_data(g)[0]
        return ["R"] + [f"{dia.rows[row][off % 2]}@{off}" for row, off in specials_fixture_cells(g)]
    if f == "T":
        return ["R"] + [f"{x}@{off}" for x, off in T_POSITIONS[fd.delta]]
    return ["R"] + (O_SETS if f == "O" else I_SETS)[fd.delta]


def wunram_check(report: ClassificationReport) -> CheckResult:
    """Non-free specials match the exceptional curves in number and in rank."""
    nonfree = [v for v in report.specials_by_counting if v != report.R]
    ranks = sorted(report.ranks[v] for v in nonfree)
    zf = sorted(report.zf)
    ok = len(nonfree) == len(zf) and ranks == zf
    return CheckResult("wunram", ok, {"special_ranks": ranks, "zf": zf})


def omega_duality_check(Q, specials, candidates=None, limit=10) -> CheckResult:
    """v special iff dual(Omega v) = {v}, for every non-free v, under some admissible dual."""
    candidates = dual_candidates(Q) if candidates is None else candidates
    nonfree = [v for v in range(Q.size) if v != Q.R]
    omegas = syzygy_all(Q, nonfree)
    failures = []
    for k, phi in enumerate(candidates):
        bad = []
        for v, om in zip(nonfree, omegas):
            dual = Counter({phi[u]: c for u, c in om.items()})
            if (v in specials) != (dual == Counter({v: 1})):
                bad.append(v)
        if not bad:
            return CheckResult("omega_duality", True, {"dual_candidates": len(candidates), "dual_used": k})
        failures.append([Q.name_of(v) for v in bad[:limit]])
    return CheckResult(
        "omega_duality", False, {"dual_candidates": len(candidates), "counterexamples": failures}
    )


def classify(g: GroupParams, Q=None) -> ClassificationReport:
    Q = Q or build_ar_quiver(g)
    named = locate_named_vertices(Q, g)
    counting = sorted(specials_by_counting(Q))
    names = specials_closed_form(g)
    closed = sorted({resolve_name(Q, nm, named) for nm in names})
    G = dual_graph(g)
    zf = list(fundamental_cycle(G).coeffs)
    report = ClassificationReport(
        group=g,
        vertex_count=Q.size,
        specials_by_counting=counting,
        specials_closed_form=closed,
        closed_form_names=names,
        ranks={v: Q.ranks[v] for v in counting},
        dual_graph=G.to_dict(),
        zf=zf,
        R=Q.R,
        vertex_names={v: Q.name_of(v) for v in set(counting) | set(closed)},
    )
    report.checks["oracle"] = CheckResult(
        "oracle",
        counting == closed,
        {
            "only_counting": [Q.name_of(v) for v in sorted(set(counting) - set(closed))],
            "only_closed_form": [Q.name_of(v) for v in sorted(set(closed) - set(counting))],
        },
    )
    report.checks["wunram"] = wunram_check(report)
    report.checks["omega_duality"] = omega_duality_check(Q, set(counting))
    return report
