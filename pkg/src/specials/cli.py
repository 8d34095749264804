"""Command-line driver."""
from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor

import click
import numpy as np

from . import corpus, render
from .classify import classify as run_classify
from .groups import GroupError, GroupParams, iter_groups, parse_group
from .hj import HJError, hj_expand
from .ladder import cosyzygy, cover_rank, ext1_profile, free_expansion, syzygy
from .quiver import (
    DualAmbiguityError,
    UnknownVertexName,
    build_ar_quiver,
    compute_dual,
    dual_candidates,
    locate_named_vertices,
    resolve_name,
)
from .resolution import dual_graph, fundamental_cycle

EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 1, 2


class CheckFailure(click.ClickException):
    exit_code = EXIT_CHECK


class GroupType(click.ParamType):
    name = "group"

    def convert(self, value, param, ctx):
        if isinstance(value, GroupParams):
            return value
        try:
            return parse_group(value)
        except GroupError as exc:
            self.fail(str(exc), param, ctx)


GROUP = GroupType()


def _emit(obj):
    click.echo(render.canonical_json(obj))


def _counter_json(c):
    return {str(v): n for v, n in sorted(c.items())}


@click.group()
def cli():
    """Special Cohen-Macaulay modules over quotient surface singularities."""


@cli.command()
@click.argument("fraction")
def hj(fraction):
    """Hirzebruch-Jung expansion of r/a."""
    try:
        r, a = (int(x) for x in fraction.split("/"))
    except ValueError:
        raise click.BadParameter(f"expected r/a, got {fraction!r}")
    try:
        data = hj_expand(r, a)
    except HJError as exc:
        raise click.BadParameter(str(exc))
    _emit(data.to_dict())


def _graph_payload(g):
    G = dual_graph(g)
    return G, {**G.to_dict(), "zf": list(fundamental_cycle(G).coeffs)}


@cli.command()
@click.argument("group", type=GROUP)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
def dualgraph(group, fmt):
    """Dual graph of the minimal resolution."""
    G, payload = _graph_payload(group)
    if fmt == "dot":
        click.echo(render.graph_dot(G, payload["zf"]))
    else:
        _emit(payload)


@cli.command()
@click.argument("group", type=GROUP)
def fundcycle(group):
    """Fundamental cycle by Laufer's algorithm."""
    _emit(_graph_payload(group)[1])


@cli.command()
@click.argument("group", type=GROUP)
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "ascii"]), default="json")
def quiver(group, fmt):
    """AR quiver of the invariant ring."""
    Q = build_ar_quiver(group)
    named = locate_named_vertices(Q, group)
    if fmt == "dot":
        click.echo(render.quiver_dot(Q, named))
    elif fmt == "ascii":
        click.echo(render.ascii_quiver(Q))
    else:
        cands = dual_candidates(Q)
        payload = Q.to_dict(dual=cands[0] if len(cands) == 1 else None, named=named)
        payload["dual_candidates"] = len(cands)
        _emit(payload)


@cli.command()
@click.argument("group", type=GROUP)
@click.option("--json", "as_json", is_flag=True)
def ext1(group, as_json):
    """dim Ext^1(x, R) for every vertex x."""
    Q = build_ar_quiver(group)
    profile = ext1_profile(Q)
    if as_json:
        _emit({str(v): int(c) for v, c in enumerate(profile)})
    else:
        click.echo(render.ascii_quiver(Q, values=profile))


def _vertex(Q, name):
    try:
        return resolve_name(Q, name)
    except UnknownVertexName as exc:
        raise click.BadParameter(str(exc.args[0] if exc.args else name), param_hint="VERTEX")


@cli.command(name="syzygy")
@click.argument("group", type=GROUP)
@click.argument("vertices", nargs=-1, required=True)
@click.option("--co", is_flag=True, help="Cosyzygy instead of syzygy.")
def syzygy_cmd(group, vertices, co):
    """Omega (or Omega^-) of a vertex or of a direct sum of vertices."""
    Q = build_ar_quiver(group)
    start = np.zeros(Q.size, dtype=np.int64)
    for name in vertices:
        start[_vertex(Q, name)] += 1
    result = (cosyzygy if co else syzygy)(Q, start)
    out = {"start": _counter_json({v: int(c) for v, c in enumerate(start) if c}), "result": _counter_json(result)}
    out["names"] = {str(v): Q.name_of(v) for v in sorted(result)}
    if not co:
        out["cover_rank"] = cover_rank(Q, start, result)
    try:
        phi = compute_dual(Q)
        out["dual"] = _counter_json({phi[v]: c for v, c in result.items()})
    except DualAmbiguityError:
        out["dual"] = None
    _emit(out)


@cli.command()
@click.argument("group", type=GROUP)
@click.option("--steps", type=click.IntRange(min=1), required=True)
@click.option("--start", default=None, help="Start vertex; defaults to tau^- R.")
def freeexp(group, steps, start):
    """Ladder of a vertex in the full category."""
    Q = build_ar_quiver(group)
    v = Q.tau_inv[Q.R] if start is None else _vertex(Q, start)
    Y = free_expansion(Q, v, steps)
    _emit({"start": v, "steps": [{str(u): int(c) for u, c in enumerate(y) if c} for y in Y]})


def _report_line(g):
    try:
        rep = run_classify(g)
    except Exception as exc:  # diagnostic record instead of a guess
        return False, {"group": str(g), "error": f"{type(exc).__name__}: {exc}"}
    if not rep.passed:
        failing = {k: c.to_dict() for k, c in rep.checks.items() if not c.passed}
        return False, {"group": str(g), "error": "check failure", "checks": failing}
    return True, rep.to_dict()


@cli.command()
@click.argument("group", type=GROUP)
@click.option("--json", "as_json", is_flag=True)
def classify(group, as_json):
    """Specials by counting, cross-checked against the closed-form tables."""
    rep = run_classify(group)
    if as_json:
        _emit(rep.to_dict())
    else:
        names = [rep.vertex_names[v] for v in rep.specials_by_counting]
        click.echo(f"group: {rep.group}  vertices: {rep.vertex_count}")
        click.echo(f"specials ({len(names)}): {', '.join(names)}")
        click.echo(f"closed form: {', '.join(rep.closed_form_names)}")
        click.echo(f"zf: {rep.zf}")
        for name, c in rep.checks.items():
            click.echo(f"{name}: {'pass' if c.passed else 'FAIL'}")
    if not rep.passed:
        raise CheckFailure(f"cross-checks failed for {group}")


@cli.command()
@click.option("--family", type=click.Choice(["A", "D", "T", "O", "I"]), required=True)
@click.option("--max-n", type=click.IntRange(min=1), required=True)
@click.option("--out", type=click.File("w"), default="-")
@click.option("--jobs", type=click.IntRange(min=1), default=1)
def batch(family, max_n, out, jobs):
    """Classify every group of a family up to a bound, one JSON line per group."""
    groups = list(iter_groups(family, max_n))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_report_line, groups))
    else:
        results = map(_report_line, groups)
    failed = 0
    for ok, record in results:
        failed += not ok
        out.write(render.canonical_json(record) + "\n")
    if failed:
        raise CheckFailure(f"{failed} group(s) failed their cross-checks")


@cli.command(name="verify-fixtures")
@click.option("--dir", "directory", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_fixtures(directory, as_json):
    """Replay the golden fixture corpus."""
    try:
        verdicts = corpus.verify_all(directory)
    except corpus.FixtureError as exc:
        raise click.BadParameter(str(exc))
    for v in verdicts:
        if as_json:
            _emit(v.to_dict())
        else:
            click.echo(f"{'pass' if v.passed else 'FAIL'} {v.fixture}")
            for d in v.diff:
                click.echo(f"    {render.canonical_json(d)}")
    if not all(v.passed for v in verdicts):
        raise CheckFailure("fixture replay found mismatches")


def main(argv=None):
    """Console entry point; usage errors map to the validation exit code."""
    try:
        cli.main(args=argv, prog_name="specials", standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        return EXIT_INVALID
    except CheckFailure as exc:
        exc.show()
        return EXIT_CHECK
    except click.ClickException as exc:
        exc.show()
        return EXIT_INVALID
    except click.exceptions.Abort:
        return EXIT_INVALID
    except (GroupError, UnknownVertexName) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_INVALID
    return EXIT_OK


def entry():
    sys.exit(main())
