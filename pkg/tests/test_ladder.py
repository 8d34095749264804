from collections import Counter

import numpy as np
import pytest

from specials.classify import specials_by_counting
from specials.groups import iter_groups, parse_group
from specials.ladder import (
    LadderCapError,
    cosyzygy,
    cosyzygy_all,
    cover_rank,
    default_cap,
    ext1_profile,
    free_expansion,
    hom_dim,
    ladder_sums,
    run_ladder,
    syzygy,
    syzygy_all,
    theta_step,
    unit,
)
from specials.quiver import build_ar_quiver, dual_candidates, locate_named_vertices


def Q_of(text):
    return build_ar_quiver(parse_group(text))


ENGINE_GROUPS = ["D:5,2", "D:14,9", "D:24,7", "D:23,18", "T:3", "T:29", "O:29", "O:7", "I:29", "I:7", "I:37"]


@pytest.mark.parametrize("text", ENGINE_GROUPS)
@pytest.mark.parametrize("mode", ["kill_R", "kill_omega"])
@pytest.mark.parametrize("direction", ["left", "right"])
def test_cover_engine_agrees_with_dense(text, mode, direction):
    Q = Q_of(text)
    vs = list(range(Q.size))
    dense = ladder_sums(Q, vs, mode, direction, engine="dense")
    cover = ladder_sums(Q, vs, mode, direction, engine="cover")
    assert np.array_equal(dense[0], cover[0])
    assert np.array_equal(dense[1], cover[1])


def test_cover_engine_needs_vertex_ids():
    Q = Q_of("D:5,2")
    with pytest.raises(ValueError):
        ladder_sums(Q, np.eye(Q.size, dtype=np.int64), engine="cover")
    with pytest.raises(ValueError):
        ladder_sums(Q, [0], mode="full")


@pytest.mark.parametrize("text", ["D:5,2", "D:14,9", "T:5", "O:11", "I:13", "A:17,10", "A:7,3"])
@pytest.mark.parametrize("mode", ["kill_R", "kill_omega"])
@pytest.mark.parametrize("direction", ["left", "right"])
def test_trace_invariants(text, mode, direction):
    Q = Q_of(text)
    killed = Q.R if mode == "kill_R" else Q.omega
    for v in range(Q.size):
        tr = run_ladder(Q, v, mode, direction)
        assert tr.steps <= default_cap(Q)
        assert not tr.Y[-1].any()
        if v != killed:
            assert not tr.Y[-2].any()
        for Y, U in zip(tr.Y, tr.U):
            assert (Y >= 0).all() and (U >= 0).all()
            assert not (Y.astype(bool) & U.astype(bool)).any()
            assert Y[killed] == 0 and U[killed] == 0
        assert not tr.U[0].any()


def test_theta_matches_arrows():
    Q = Q_of("T:3")
    for v in range(Q.size):
        left = theta_step(Q, unit(Q, v), "left")
        assert {w: int(c) for w, c in enumerate(left) if c} == {w: m for w, m in Q.succ[v].items()}


def test_cap_is_enforced():
    Q = Q_of("D:5,2")
    with pytest.raises(LadderCapError):
        run_ladder(Q, Q.tau_inv[Q.R], "kill_R", "left", cap=1)
    with pytest.raises(ValueError):
        run_ladder(Q, 0, cap=0)


D52_EXT1 = {
    "r@2": 2, "r@4": 0, "s@0": 1, "s@2": 0, "s@4": 1, "s@6": 1,
    "c1@1": 1, "c1@3": 1, "c1@5": 2, "w+@0": 1, "w+@2": 0, "w+@4": 1, "w+@6": 1,
    "w-@0": 1, "w-@2": 0, "w-@4": 1, "w-@6": 1,
}


def test_d52_profile_by_name():
    from specials.quiver import resolve_name

    Q = Q_of("D:5,2")
    prof = ext1_profile(Q)
    for name, value in D52_EXT1.items():
        assert prof[resolve_name(Q, name)] == value, name
    assert prof[Q.R] == 0
    zeros = {Q.name_of(v) for v in range(Q.size) if prof[v] == 0} - {"r@0"}
    assert zeros == {"r@4", "s@2", "w+@2", "w-@2"}


def test_a1710_profile():
    Q = Q_of("A:17,10")
    assert {v for v in range(17) if ext1_profile(Q)[v] == 0} == {0, 10, 3, 2, 1}


@pytest.mark.parametrize("text", ["A:3,2", "A:9,8", "A:40,39", "T:1", "O:1", "I:1"])
def test_gorenstein_profile_vanishes(text):
    assert not ext1_profile(Q_of(text)).any()


def test_d149_syzygy():
    g = parse_group("D:14,9")
    Q = build_ar_quiver(g)
    V4 = locate_named_vertices(Q, g)["V4"]
    om = syzygy(Q, V4)
    assert {Q.name_of(v): c for v, c in om.items()} == {"c4@6": 1}
    for phi in dual_candidates(Q):
        assert om == Counter({phi[V4]: 1})
    assert cover_rank(Q, V4, om) == 4


def test_d2318_joint_syzygy():
    g = parse_group("D:23,18")
    Q = build_ar_quiver(g)
    named = locate_named_vertices(Q, g)
    X = sum(unit(Q, named[k]) for k in ("V3", "V8", "V13"))
    om = syzygy(Q, X)
    assert cover_rank(Q, X, om) == 12
    for phi in dual_candidates(Q):
        assert om == Counter(phi[named[k]] for k in ("V3", "V8", "V13"))


@pytest.mark.parametrize("text", ["D:5,2", "T:3", "O:5", "A:7,3"])
def test_free_and_killed_edges(text):
    Q = Q_of(text)
    assert syzygy(Q, Q.R) == Counter()
    assert cosyzygy(Q, Q.omega) == Counter()


@pytest.mark.parametrize("text", ["A:5,4", "A:9,8", "T:1", "O:1", "I:1"])
def test_gorenstein_cosyzygy_inverts_syzygy(text):
    Q = Q_of(text)
    for x in range(Q.size):
        if x == Q.R:
            continue
        om = syzygy(Q, x)
        vec = np.zeros(Q.size, dtype=np.int64)
        for u, c in om.items():
            vec[u] += c
        back = cosyzygy(Q, vec)
        assert Counter({u: c for u, c in back.items() if u not in (Q.R, Q.omega)}) == Counter({x: 1})


def _dual_syzygy(Q, phi, X):
    vec = np.zeros(Q.size, dtype=np.int64)
    for u, c in X.items():
        vec[u] += c
    return Counter({phi[u]: c for u, c in syzygy(Q, vec).items() if phi[u] != Q.R})


@pytest.mark.parametrize("text", ["D:5,2", "D:14,9", "D:7,3", "T:3", "T:5", "O:7", "I:7", "A:17,10"])
def test_dual_syzygy_squares_to_identity_on_specials(text):
    Q = Q_of(text)
    specials = specials_by_counting(Q) - {Q.R}
    for phi in dual_candidates(Q):
        for x in specials:
            X = Counter({x: 1})
            assert _dual_syzygy(Q, phi, _dual_syzygy(Q, phi, X)) == X


@pytest.mark.parametrize("text", ["D:5,2", "T:3", "O:5"])
def test_dual_syzygy_is_not_an_involution_off_specials(text):
    Q = Q_of(text)
    specials = specials_by_counting(Q)
    for phi in dual_candidates(Q):
        for x in set(range(Q.size)) - specials:
            X = Counter({x: 1})
            assert _dual_syzygy(Q, phi, _dual_syzygy(Q, phi, X)) != X


def _syzygy_of_dual(Q, phi, Y):
    vec = np.zeros(Q.size, dtype=np.int64)
    for u, c in Y.items():
        vec[phi[u]] += c
    return Counter({u: c for u, c in syzygy(Q, vec).items() if u != Q.R})


@pytest.mark.parametrize("text", ["D:5,2", "D:14,9", "T:5", "O:7", "I:7", "A:17,10"])
def test_syzygy_of_dual_squares_to_identity_on_images(text):
    Q = Q_of(text)
    for phi in dual_candidates(Q):
        for x in range(Q.size):
            Y = Counter({u: c for u, c in syzygy(Q, x).items() if u != Q.R})
            assert _syzygy_of_dual(Q, phi, _syzygy_of_dual(Q, phi, Y)) == Y


def test_d52_syzygy_of_dual_special():
    # Omega(Y*) = Y for Y = X* with X special; exactly one of the four dual candidates is compatible
    Q = Q_of("D:5,2")
    specials = specials_by_counting(Q) - {Q.R}
    good = [phi for phi in dual_candidates(Q) if all(syzygy(Q, x) == Counter({phi[x]: 1}) for x in specials)]
    assert len(good) == 1
    for phi in good:
        for x in specials:
            Y = phi[x]
            assert syzygy(Q, phi[Y]) == Counter({Y: 1})


def test_d52_cosyzygy_is_omega_relative():
    Q = Q_of("D:5,2")
    from specials.quiver import resolve_name

    got = cosyzygy(Q, resolve_name(Q, "s@4"))
    assert {Q.name_of(u): c for u, c in got.items()} == {"s@0": 1, "r@2": 1}
    assert cosyzygy(Q, resolve_name(Q, "r@4")) == Counter()


@pytest.mark.parametrize("text", ["D:8,3", "T:9", "O:17"])
def test_batched_matches_single(text):
    Q = Q_of(text)
    vs = list(range(0, Q.size, 3))
    assert syzygy_all(Q, vs) == [syzygy(Q, v) for v in vs]
    assert cosyzygy_all(Q, vs) == [cosyzygy(Q, v) for v in vs]


def test_hom_dim_modes():
    Q = Q_of("D:5,2")
    x = Q.tau_inv[Q.R]
    prof = ext1_profile(Q)
    for y in range(Q.size):
        if y != Q.R:
            assert hom_dim(Q, x, y) == prof[y]
    assert hom_dim(Q, x, x, mode="full", cap=3) >= 1


def test_free_expansion_does_not_stop():
    Q = Q_of("D:5,2")
    Y = free_expansion(Q, Q.tau_inv[Q.R], 40)
    assert len(Y) == 41 and all(y.any() for y in Y)
    with pytest.raises(ValueError):
        free_expansion(Q, 0, 0)


@pytest.mark.parametrize("family, limit", [("D", 20), ("T", 60), ("O", 60), ("I", 60)])
def test_all_killed_ladders_terminate(family, limit):
    for g in iter_groups(family, limit):
        Q = build_ar_quiver(g)
        for mode in ("kill_R", "kill_omega"):
            for direction in ("left", "right"):
                ladder_sums(Q, list(range(Q.size)), mode, direction)
