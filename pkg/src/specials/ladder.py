"""Ladder recursion Y_n = (theta^{-+} Y_{n-1} - tau^{-+} Y_{n-2})_+ on K0 count vectors.

Count vectors are int64 numpy arrays indexed by vertex id.  Every routine also
accepts a 2-D batch (one row per start) so whole sweeps run as array code.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .quiver import TranslationQuiver

MODES = ("full", "kill_R", "kill_omega")
DIRECTIONS = ("left", "right")


class LadderCapError(RuntimeError):
    pass


@dataclass
class LadderTrace:
    mode: str
    direction: str
    Y: list = field(default_factory=list)
    U: list = field(default_factory=list)  # U[0] is always zero

    @property
    def steps(self):
        return len(self.Y) - 1

    @property
    def termination(self):
        """First n with Y_n = 0, or None."""
        for n, y in enumerate(self.Y):
            if not y.any():
                return n
        return None

    def total_Y(self):
        return sum(self.Y)

    def total_U(self):
        return sum(self.U)


class _Tables:
    """Padded neighbour tables for gather-based theta steps."""

    def __init__(self, Q: TranslationQuiver):
        n = Q.size
        self.left = self._pad(Q.pred, n)
        self.right = self._pad(Q.succ, n)
        self.tau = np.array(Q.tau, dtype=np.intp)
        self.tau_inv = np.array(Q.tau_inv, dtype=np.intp)

    @staticmethod
    def _pad(adj, n):
        d = max(1, max(len(a) for a in adj))
        idx = np.zeros((n, d), dtype=np.intp)
        mult = np.zeros((n, d), dtype=np.int64)
        for w, a in enumerate(adj):
            for k, (x, m) in enumerate(sorted(a.items())):
                idx[w, k] = x
                mult[w, k] = m
        return idx, mult


_CACHE_ATTR = "_ladder_tables"


def _tables(Q) -> _Tables:
    t = Q.__dict__.get(_CACHE_ATTR)
    if t is None:
        t = _Tables(Q)
        Q.__dict__[_CACHE_ATTR] = t
    return t


def unit(Q, v) -> np.ndarray:
    e = np.zeros(Q.size, dtype=np.int64)
    e[v] = 1
    return e


def as_vector(Q, start) -> np.ndarray:
    if isinstance(start, (int, np.integer)):
        return unit(Q, int(start))
    v = np.asarray(start, dtype=np.int64)
    if v.shape[-1] != Q.size:
        raise ValueError("count vector has the wrong length")
    return v.copy()


def theta_step(Q, v, side="left"):
    """left: (theta^- v)(w) = sum_x v(x) mult(x -> w); right: (theta v)(w) = sum_x v(x) mult(w -> x)."""
    idx, mult = getattr(_tables(Q), side)
    return (np.asarray(v)[..., idx] * mult).sum(axis=-1)


def tau_shift(Q, v, side="left"):
    """left: (tau^- v)(x) = v(tau x); right: (tau v)(x) = v(tau^- x)."""
    t = _tables(Q)
    return np.asarray(v)[..., t.tau if side == "left" else t.tau_inv]


def killed_vertex(Q, mode):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return {"full": None, "kill_R": Q.R, "kill_omega": Q.omega}[mode]


def _steps(Q, Y0, mode, direction):
    """Yield (n, Y_n, U_n) forever; the caller decides when to stop."""
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    k = killed_vertex(Q, mode)
    prev = Y0.copy()
    if k is not None:
        prev[..., k] = 0
    prev2 = np.zeros_like(prev)
    yield 0, prev, np.zeros_like(prev)
    n = 1
    while True:
        w = theta_step(Q, prev, direction) - tau_shift(Q, prev2, direction)
        if k is not None:
            w[..., k] = 0
        Y = np.maximum(w, 0)
        yield n, Y, np.maximum(-w, 0)
        prev2, prev = prev, Y
        n += 1


def default_cap(Q):
    return 16 * Q.size


def run_ladder(Q, start, mode="kill_R", direction="left", cap=None) -> LadderTrace:
    """Full trace.  Killed modes stop once two consecutive Y vanish, so the last U_n
    (= tau^-+ Y_{n-2}) is recorded; full mode runs exactly `cap` steps."""
    cap = default_cap(Q) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    trace = LadderTrace(mode, direction)
    for n, Y, U in _steps(Q, as_vector(Q, start), mode, direction):
        trace.Y.append(Y)
        trace.U.append(U)
        if mode == "full":
            if n >= cap:
                return trace
            continue
        if not Y.any() and (n == 0 or not trace.Y[-2].any()):
            return trace
        if n >= cap:
            raise LadderCapError(f"{mode} ladder did not terminate within {cap} steps on {Q.group}")


def ladder_sums(Q, starts, mode="kill_R", direction="left", cap=None, engine=None):
    """Batched sums of Y_n and of U_n over terminating ladders.

    `starts` is a (batch, |V|) array, or a list of vertex ids.  engine="cover" walks
    label slices of the cover (vertex starts on diagram quivers only); engine="dense"
    steps whole count vectors.  Both give identical results.
    """
    if mode == "full":
        raise ValueError("full-mode ladders do not terminate")
    cap = default_cap(Q) if cap is None else cap
    vertex_starts = isinstance(starts, (list, tuple)) and all(isinstance(v, (int, np.integer)) for v in starts)
    if engine is None:
        engine = "cover" if vertex_starts and Q.diagram is not None else "dense"
    if engine == "cover":
        if not vertex_starts:
            raise ValueError("the cover engine takes vertex ids")
        return _cover_sums(Q, list(starts), mode, direction, cap)
    if vertex_starts:
        vs = list(starts)
        starts = np.zeros((len(vs), Q.size), dtype=np.int64)
        starts[np.arange(len(vs)), vs] = 1
    starts = np.atleast_2d(np.asarray(starts, dtype=np.int64))
    sy = np.zeros_like(starts)
    su = np.zeros_like(starts)
    last_nonzero = True
    for n, Y, U in _steps(Q, starts, mode, direction):
        sy += Y
        su += U
        nonzero = bool(Y.any())
        if not nonzero and not last_nonzero:
            return sy, su
        last_nonzero = nonzero
        if n >= cap:
            raise LadderCapError(f"{mode} ladder did not terminate within {cap} steps on {Q.group}")


class _Cover:
    """Slice coordinates: a cover vertex is (label, node); one ladder step moves one label."""

    def __init__(self, Q):
        dia = Q.diagram
        self.k = k = len(dia.nodes)
        self.adj = np.zeros((k, k), dtype=np.int64)
        for u, v in dia.edges:
            self.adj[dia.index[u], dia.index[v]] += 1
            self.adj[dia.index[v], dia.index[u]] += 1
        self.par = np.array([dia.parity[x] ^ Q.flip for x in dia.nodes], dtype=np.int64)
        # sigma powers as index permutations; pw[j][i] = index of sigma^j(node i)
        perm = np.array([dia.index[Q.sigma[x]] for x in dia.nodes], dtype=np.intp)
        pw = [np.arange(k, dtype=np.intp)]
        while True:
            nxt = perm[pw[-1]]
            if (nxt == pw[0]).all():
                break
            pw.append(nxt)
        self.pw = np.array(pw)
        self.order = len(pw)
        self.inv_pw = np.array([np.argsort(p) for p in pw])
        self.period = Q.period
        self.r = dia.index[dia.extending]
        self.label_R = Q.label(Q.R)

    def vertex(self, labels, nodes):
        """Quotient vertex ids of cover vertices (label, node), arrays of equal shape."""
        t = (labels - self.par[nodes]) // 2
        j, t0 = np.divmod(t, self.period)
        x = self.inv_pw[j % self.order, nodes]
        return t0 * self.k + x


def _cover_tables(Q) -> _Cover:
    t = Q.__dict__.get("_cover_tables")
    if t is None:
        t = Q.__dict__["_cover_tables"] = _Cover(Q)
    return t


def _cover_sums(Q, vertices, mode, direction, cap):
    c = _cover_tables(Q)
    B, k, n_all = len(vertices), c.k, Q.size
    vs = np.array(vertices, dtype=np.intp)
    nodes = vs % k
    L = np.array([Q.label(int(v)) for v in vs], dtype=np.int64)
    sign = 1 if direction == "left" else -1
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    kill = killed_vertex(Q, mode)
    base = None if kill is None else c.label_R - (2 if mode == "kill_omega" else 0)
    rows = np.arange(B)
    sy = np.zeros((B, n_all), dtype=np.int64)
    su = np.zeros((B, n_all), dtype=np.int64)

    def apply_kill(w, labels):
        off = labels - base
        hit = off % (2 * c.period) == 0
        if hit.any():
            j = (off[hit] // (2 * c.period)) % c.order
            w[rows[hit], c.pw[j, c.r]] = 0

    def accumulate(total, w, labels):
        r, x = np.nonzero(w)
        if r.size:
            np.add.at(total, (r, c.vertex(labels[r], x)), w[r, x])

    prev = np.zeros((B, k), dtype=np.int64)
    prev[rows, nodes] = 1
    if base is not None:
        apply_kill(prev, L)
    prev2 = np.zeros_like(prev)
    accumulate(sy, prev, L)
    last_nonzero = True
    n = 0
    while True:
        nonzero = bool(prev.any())
        if not nonzero and not last_nonzero:
            return sy, su
        last_nonzero = nonzero
        if n >= cap:
            raise LadderCapError(f"{mode} ladder did not terminate within {cap} steps on {Q.group}")
        n += 1
        labels = L + sign * n
        w = prev @ c.adj - prev2
        if base is not None:
            apply_kill(w, labels)
        Y = np.maximum(w, 0)
        accumulate(sy, Y, labels)
        accumulate(su, np.maximum(-w, 0), labels)
        prev2, prev = prev, Y


def hom_dim(Q, X, Y, mode="kill_R", cap=None) -> int:
    """dim Hom(X, Y) in the chosen category.  Full mode is infinite dimensional, so there the
    sum runs over the first `cap` radical layers only."""
    if mode == "full":
        trace = run_ladder(Q, X, "full", "left", cap)
        return int(sum(y[Y] for y in trace.Y))
    sy, _ = ladder_sums(Q, as_vector(Q, X), mode, "left", cap)
    return int(sy[0, Y])


def ext1_profile(Q, engine=None) -> np.ndarray:
    """x -> dim Ext^1(x, R), read off as stable Hom(tau^- R, x)."""
    sy, _ = ladder_sums(Q, [Q.tau_inv[Q.R]], "kill_R", "left", engine=engine)
    v = sy[0]
    v[Q.R] = 0
    return v


def _multiset(row):
    return Counter({int(v): int(c) for v, c in enumerate(row) if c})


def syzygy(Q, X) -> Counter:
    """Omega X as a multiset of vertices; X may be a vertex or a count vector."""
    _, su = ladder_sums(Q, as_vector(Q, X), "kill_R", "right")
    return _multiset(su[0])


def cosyzygy(Q, X) -> Counter:
    _, su = ladder_sums(Q, as_vector(Q, X), "kill_omega", "left")
    return _multiset(su[0])


def syzygy_all(Q, vertices=None, engine=None):
    """Omega of every listed vertex, one batched run."""
    vertices = list(range(Q.size)) if vertices is None else list(vertices)
    _, su = ladder_sums(Q, vertices, "kill_R", "right", engine=engine)
    return [_multiset(row) for row in su]


def cosyzygy_all(Q, vertices=None, engine=None):
    vertices = list(range(Q.size)) if vertices is None else list(vertices)
    _, su = ladder_sums(Q, vertices, "kill_omega", "left", engine=engine)
    return [_multiset(row) for row in su]


def free_expansion(Q, start, columns: int):
    """Y_0 .. Y_columns of the ladder in the full category."""
    if columns < 1:
        raise ValueError("columns must be at least 1")
    return run_ladder(Q, start, "full", "left", cap=columns).Y


def cover_rank(Q, X, omega) -> int:
    """Rank of the free cover of X given its syzygy multiset."""
    v = as_vector(Q, X)
    return int(np.dot(v, Q.ranks)) + sum(Q.ranks[u] * c for u, c in omega.items())
