"""Golden fixtures: loading, schema checks and replay against the engine.

Cells are drawn-picture coordinates ``[row, offset, ...]`` where ``row`` is a
drawing row of the diagram and ``offset`` the label distance from R.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import jsonschema

from .groups import parse_group

PACKAGE_FIXTURES = Path(__file__).with_name("fixtures")

KINDS = ("quiver", "ext1_table", "syzygy_trace", "free_expansion_window", "specials_set", "zf")

_cell = {"type": "array", "minItems": 2, "prefixItems": [{"type": "integer"}, {"type": "integer"}]}
_value_cell = {
    "type": "array",
    "minItems": 3,
    "maxItems": 3,
    "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"type": ["integer", "string"]}],
}

_disputed = {
    "type": "object",
    "required": ["cells", "reason"],
    "properties": {"cells": {"type": "array", "items": _cell}, "reason": {"type": "string"}},
}

SCHEMAS = {
    "quiver": {
        "type": "object",
        "required": ["cells", "arrows"],
        "properties": {
            "cells": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}},
            "arrows": {"type": "array", "items": {"type": "array", "items": _cell, "minItems": 2, "maxItems": 2}},
        },
    },
    "ext1_table": {
        "type": "object",
        "required": ["layout", "cells"],
        "properties": {
            "layout": {"enum": ["folded", "unrolled"]},
            "cells": {"type": "array", "items": _value_cell},
            "specials": {"type": "array", "items": _cell},
            "start_label": {"type": "integer"},
            "disputed": _disputed,
        },
    },
    "syzygy_trace": {
        "type": "object",
        "required": ["cover_rank"],
        "properties": {
            "cover_rank": {"type": "integer", "minimum": 1},
            "start": _cell,
            "starts": {"type": "array", "items": {"type": "string"}},
            "cells": {"type": "array", "items": _value_cell},
            "syzygy": {"type": "array", "items": _cell},
        },
    },
    "free_expansion_window": {
        "type": "object",
        "required": ["cells", "start_label"],
        "properties": {
            "start_label": {"type": "integer"},
            "cells": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 4}},
            "t_values": {"type": "array", "items": {"type": "integer"}},
            "groups": {"type": "array", "items": {"type": "string"}},
            "period": {"type": "integer"},
        },
    },
    "specials_set": {
        "type": "object",
        "properties": {
            "cells": {"type": "array", "items": _cell},
            "strip_cells": {"type": "array", "items": _cell},
            "names": {"type": "array", "items": {"type": "string"}},
            "disputed": _disputed,
        },
    },
    "zf": {
        "type": "object",
        "required": ["zf"],
        "properties": {
            "self_ints": {"type": "array", "items": {"type": "integer", "maximum": -2}},
            "edges": {"type": "array", "items": _cell},
            "zf": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
    },
}

DOCUMENT = {
    "type": "object",
    "required": ["id", "kind", "group", "locus", "payload"],
    "properties": {
        "id": {"type": "string"},
        "kind": {"enum": list(KINDS)},
        "group": {"type": ["string", "null"]},
        "locus": {"type": "string"},
        "payload": {"type": "object"},
    },
}


class FixtureError(ValueError):
    pass


@dataclass
class Fixture:
    id: str
    kind: str
    group: str | None
    locus: str
    payload: dict
    path: Path | None = None


@dataclass
class Verdict:
    fixture: str
    passed: bool
    diff: list = field(default_factory=list)

    def to_dict(self):
        return {"fixture": self.fixture, "pass": self.passed, "diff": self.diff}


def fixtures_dir() -> Path:
    env = os.environ.get("SPECIALS_FIXTURES_DIR")
    return Path(env) if env else PACKAGE_FIXTURES


def parse_fixture(doc: dict, path=None) -> Fixture:
    try:
        jsonschema.validate(doc, DOCUMENT)
        jsonschema.validate(doc["payload"], SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as exc:
        raise FixtureError(f"{path or doc.get('id')}: {exc.message}") from exc
    if doc["group"] is not None:
        parse_group(doc["group"])
    return Fixture(doc["id"], doc["kind"], doc["group"], doc["locus"], doc["payload"], path)


def load_fixture(path) -> Fixture:
    path = Path(path)
    with path.open() as fh:
        return parse_fixture(json.load(fh), path)


def load_all(directory=None) -> list:
    directory = Path(directory) if directory else fixtures_dir()
    return [load_fixture(p) for p in sorted(directory.glob("*.json"))]


@lru_cache(maxsize=None)
def _specials_index():
    out = {}
    for p in sorted(PACKAGE_FIXTURES.glob("*-specials.json")):
        f = load_fixture(p)
        if "cells" in f.payload:
            out[f.group] = [tuple(c) for c in f.payload["cells"]]
    return out


def specials_fixture_cells(g) -> list:
    """Drawn positions of the non-free specials for a b = 2 star group."""
    try:
        return _specials_index()[str(g)]
    except KeyError:
        raise FixtureError(f"no specials picture for {g}") from None


# replay --------------------------------------------------------------------


def _quiver(spec):
    from .quiver import build_ar_quiver

    return build_ar_quiver(parse_group(spec))


def _check_quiver(f, diff):
    from .quiver import UnknownVertexName

    Q = _quiver(f.group)
    cells, arrows = f.payload["cells"], f.payload["arrows"]
    home = Q.diagram.row_of(Q.diagram.extending)
    anchors = [c for r, c, name in cells if name == "R" and r == home]
    if not anchors:
        diff.append({"error": "no R cell in the extending row"})
        return
    base = min(anchors)
    where = {}
    for r, c, name in cells:
        try:
            where[(r, c)] = Q.at_cell(r, c - base)
        except UnknownVertexName as exc:
            diff.append({"cell": [r, c], "error": str(exc)})
    by_name = {}
    for r, c, name in cells:
        if name is None or (r, c) not in where:
            continue
        by_name.setdefault(name, set()).add(where[(r, c)])
    for name, vs in by_name.items():
        if len(vs) != 1:
            diff.append({"name": name, "error": "one name drawn at several vertices", "vertices": sorted(vs)})
    images = {}
    for name, vs in by_name.items():
        for v in vs:
            images.setdefault(v, set()).add(name)
    for v, names in images.items():
        if len(names) > 1:
            diff.append({"vertex": v, "error": "several names at one vertex", "names": sorted(names)})
    if by_name.get("R", {Q.R}) != {Q.R}:
        diff.append({"error": "R is not pinned"})
    drawn = set()
    for (a, b) in arrows:
        u, v = where.get(tuple(a)), where.get(tuple(b))
        if u is None or v is None:
            continue
        if Q.mult(u, v) == 0:
            diff.append({"arrow": [a, b], "error": "not an arrow of the quiver"})
        drawn.add((u, v))
    missing = set(range(Q.size)) - set(where.values())
    if missing:
        diff.append({"error": "vertices never drawn", "vertices": sorted(missing)})
    if set(Q.arrows) - drawn:
        diff.append({"error": "quiver arrows never drawn", "arrows": sorted(set(Q.arrows) - drawn)[:20]})


def _check_ext1(f, diff):
    from .ladder import ext1_profile, run_ladder

    Q = _quiver(f.group)
    p = f.payload
    if p["layout"] == "folded":
        prof = ext1_profile(Q)
        for r, c, val in p["cells"]:
            v = Q.at_cell(r, c)
            if val == "R":
                if v != Q.R:
                    diff.append({"cell": [r, c], "expected": "R", "vertex": v})
            elif prof[v] != val:
                diff.append({"cell": [r, c], "expected": val, "got": int(prof[v])})
        if "specials" in p:
            from .classify import specials_by_counting

            want = {Q.at_cell(r, c) for r, c in p["specials"]}
            got = specials_by_counting(Q) - {Q.R}
            if want != got:
                diff.append({"specials_expected": sorted(want), "specials_got": sorted(got)})
        return
    trace = run_ladder(Q, Q.tau_inv[Q.R], "kill_R", "left")
    start = p["start_label"]
    disputed = {tuple(c) for c in p.get("disputed", {}).get("cells", [])}
    for r, c, val in p["cells"]:
        v = Q.at_cell(r, c)
        if val == "R":
            if v != Q.R:
                diff.append({"cell": [r, c], "expected": "R", "vertex": v})
            continue
        n = c - start
        got = int(trace.Y[n][v]) if 0 <= n < len(trace.Y) else 0
        if (got != val) != ((r, c) in disputed):
            state = "disputed cell agrees" if (r, c) in disputed else "mismatch"
            diff.append({"cell": [r, c], "step": n, "expected": val, "got": got, "error": state})


def _check_syzygy(f, diff):
    from .ladder import cover_rank, run_ladder, syzygy, unit
    from .quiver import dual_candidates, locate_named_vertices, resolve_name

    Q = _quiver(f.group)
    p = f.payload
    named = locate_named_vertices(Q)
    if "starts" in p:
        vs = [resolve_name(Q, s, named) for s in p["starts"]]
    else:
        vs = [Q.at_cell(*p["start"])]
        if "names" in p and named.get(p["names"]["start"]) != vs[0]:
            diff.append({"error": "start cell is not the named vertex", "name": p["names"]["start"]})
    X = sum(unit(Q, v) for v in vs)
    om = syzygy(Q, X)
    rank = cover_rank(Q, X, om)
    if rank != p["cover_rank"]:
        diff.append({"cover_rank_expected": p["cover_rank"], "got": rank})
    if "syzygy" in p:
        want = Counter(Q.at_cell(r, c) for r, c in p["syzygy"])
        if om != want:
            diff.append({"syzygy_expected": dict(want), "got": dict(om)})
    if p.get("dual_of_starts"):
        images = {tuple(sorted(phi[v] for v in vs)) for phi in dual_candidates(Q)}
        if len(images) != 1 or Counter(images.pop()) != om:
            diff.append({"error": "syzygy is not the dual of the starts", "got": dict(om)})
    if "cells" in p:
        start_label = p["start"][1]
        trace = run_ladder(Q, X, "kill_R", "right")
        for r, c, val in p["cells"]:
            v = Q.at_cell(r, c)
            if val == "R":
                if v != Q.R:
                    diff.append({"cell": [r, c], "expected": "R", "vertex": v})
                continue
            n = start_label - c
            if val < 0:
                got = -int(trace.U[n][v]) if 0 <= n < len(trace.U) else 0
            else:
                got = int(trace.Y[n][v]) if 0 <= n < len(trace.Y) else 0
            if got != val:
                diff.append({"cell": [r, c], "step": n, "expected": val, "got": got})


def _check_free(f, diff):
    from .ladder import free_expansion

    p = f.payload
    start = p["start_label"]
    if "t_values" not in p:
        Q = _quiver(f.group)
        steps = max(c for _, c, _ in p["cells"]) - start
        Y = free_expansion(Q, Q.tau_inv[Q.R], max(steps, 1))
        for r, c, val in p["cells"]:
            v = Q.at_cell(r, c)
            if val == "R":
                if v != Q.R:
                    diff.append({"cell": [r, c], "expected": "R", "vertex": v})
                continue
            n = c - start
            got = int(Y[n][v]) if n >= 0 else 0
            if got != val:
                diff.append({"cell": [r, c], "step": n, "expected": val, "got": got})
        return
    period = p["period"]
    for spec in p.get("groups", [f.group]):
        Q = _quiver(spec)
        last = max(p["t_values"])
        Y = free_expansion(Q, Q.tau_inv[Q.R], max(c for _, c, _, _ in p["cells"]) + period * (last - 2))
        for t in p["t_values"]:
            for r, c, a, b in p["cells"]:
                n = c + period * (t - 2)
                v = Q.at_cell(r, n + start)
                if int(Y[n][v]) != a * t + b:
                    diff.append({"group": spec, "t": t, "cell": [r, c], "step": n, "expected": a * t + b, "got": int(Y[n][v])})


def _check_specials(f, diff):
    from .classify import specials_by_counting
    from .quiver import locate_named_vertices, resolve_name

    Q = _quiver(f.group)
    p = f.payload
    got = specials_by_counting(Q)
    if "names" in p:
        named = locate_named_vertices(Q)
        want = {resolve_name(Q, nm, named) for nm in p["names"]}
        if want != got:
            diff.append({"names": p["names"], "expected": sorted(want), "got": sorted(got)})
    disputed = {tuple(c) for c in p.get("disputed", {}).get("cells", [])}
    for r, c in disputed:
        if Q.at_cell(r, c) in got:
            diff.append({"cell": [r, c], "error": "disputed cell is special after all"})
    for key in ("cells", "strip_cells"):
        if key in p:
            want = {Q.at_cell(r, c) for r, c in p[key] if (r, c) not in disputed} | {Q.R}
            if want != got:
                diff.append({key: "mismatch", "expected": sorted(want), "got": sorted(got)})


def _check_zf(f, diff):
    from .resolution import ResolutionGraph, dual_graph, fundamental_cycle

    p = f.payload
    if "self_ints" in p:
        G = ResolutionGraph(tuple(p["self_ints"]), tuple(tuple(e) for e in p["edges"]))
        if f.group is not None:
            ours = dual_graph(parse_group(f.group))
            if ours.self_ints != G.self_ints or sorted(map(sorted, ours.edges)) != sorted(map(sorted, G.edges)):
                diff.append({"error": "dual graph differs", "expected": G.self_ints, "got": ours.self_ints})
    else:
        G = dual_graph(parse_group(f.group))
    got = list(fundamental_cycle(G).coeffs)
    if got != p["zf"]:
        diff.append({"expected": p["zf"], "got": got})


_CHECKS = {
    "quiver": _check_quiver,
    "ext1_table": _check_ext1,
    "syzygy_trace": _check_syzygy,
    "free_expansion_window": _check_free,
    "specials_set": _check_specials,
    "zf": _check_zf,
}


def verify_fixture(f: Fixture) -> Verdict:
    diff = []
    try:
        _CHECKS[f.kind](f, diff)
    except (KeyError, IndexError, ValueError) as exc:
        diff.append({"error": f"{type(exc).__name__}: {exc}"})
    return Verdict(f.id, not diff, diff)


def verify_all(directory=None) -> list:
    return [verify_fixture(f) for f in load_all(directory)]

