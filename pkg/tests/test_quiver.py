import pytest

from specials.groups import iter_groups, parse_group
from specials.quiver import (
    DualAmbiguityError,
    UnknownVertexName,
    build_ar_quiver,
    compute_dual,
    dual_candidates,
    find_isomorphism,
    is_anti_automorphism,
    locate_named_vertices,
    rank_square_sum,
    resolve_name,
)


def expected_size(g):
    return {"A": lambda: g.r, "D": lambda: (g.n - g.q) * (g.q + 3)}.get(
        g.family, lambda: {"T": 7, "O": 8, "I": 9}[g.family] * g.m
    )()


SAMPLE = ["A:7,3", "A:9,8", "D:5,2", "D:14,9", "D:23,18", "D:8,3", "T:1", "T:3", "T:9", "O:5", "O:13", "I:7", "I:31"]


@pytest.mark.parametrize("text", SAMPLE)
def test_structure(text):
    g = parse_group(text)
    Q = build_ar_quiver(g)
    assert Q.size == expected_size(g)
    assert rank_square_sum(Q) == g.order
    assert Q.check_mesh() == []
    assert Q.ranks[Q.R] == 1
    assert all(Q.tau[Q.tau_inv[x]] == x for x in range(Q.size))


@pytest.mark.parametrize("text", SAMPLE)
def test_additive_function(text):
    # rank is additive on meshes: r(x) + r(tau x) = sum of ranks of middle terms
    Q = build_ar_quiver(parse_group(text))
    for x in range(Q.size):
        middle = sum(Q.ranks[w] * m for w, m in Q.pred[x].items())
        assert Q.ranks[x] + Q.ranks[Q.tau[x]] == middle


def test_cyclic_model():
    Q = build_ar_quiver(parse_group("A:5,2"))
    assert Q.mult(0, 1) == 1 and Q.mult(0, 2) == 1
    assert Q.tau[0] == (0 - 1 - 2) % 5
    Q = build_ar_quiver(parse_group("A:3,2"))
    assert Q.tau == (0, 1, 2)


@pytest.mark.parametrize("text", ["D:5,2", "T:3", "O:5", "I:7", "D:8,3", "T:9"])
def test_orientation_does_not_matter(text):
    g = parse_group(text)
    Q0, Q1 = build_ar_quiver(g, flip=0), build_ar_quiver(g, flip=1)
    phi = find_isomorphism(Q0, Q1)
    assert phi is not None and phi[Q0.R] == Q1.R
    assert all(Q1.mult(phi[u], phi[v]) == m for (u, v), m in Q0.arrows.items())


def test_isomorphism_rejects_other_groups():
    assert find_isomorphism(build_ar_quiver(parse_group("T:3")), build_ar_quiver(parse_group("D:9,2"))) is None


@pytest.mark.parametrize(
    "text, count",
    [("D:5,2", 4), ("D:14,9", 2), ("D:7,3", 2), ("T:1", 2), ("T:5", 2), ("T:3", 1), ("O:5", 1), ("I:7", 1), ("A:7,3", 1)],
)
def test_dual_candidate_counts(text, count):
    Q = build_ar_quiver(parse_group(text))
    cands = dual_candidates(Q)
    assert len(cands) == count
    for phi in cands:
        assert is_anti_automorphism(Q, phi)
        assert all(phi[phi[x]] == x for x in range(Q.size))
        assert all(Q.ranks[phi[x]] == Q.ranks[x] for x in range(Q.size))
    if count == 1:
        assert compute_dual(Q) == cands[0]
    else:
        with pytest.raises(DualAmbiguityError) as err:
            compute_dual(Q)
        assert len(err.value.candidates) == count


def test_identity_is_not_an_anti_automorphism():
    Q = build_ar_quiver(parse_group("T:3"))
    assert not is_anti_automorphism(Q, tuple(range(Q.size)))


def test_named_vertices_d():
    g = parse_group("D:14,9")
    Q = build_ar_quiver(g)
    named = locate_named_vertices(Q, g)
    assert Q.name_of(named["V4"]) == "c4@4"
    assert Q.name_of(named["W+"]) == "w+@9"
    assert Q.name_of(named["W2"]) == "r@4"
    assert Q.name_of(named["W3"]) == "s@6"
    assert named["R"] == Q.R and Q.name_of(Q.R) == "r@0"


@pytest.mark.parametrize("text", ["O:29", "I:37", "D:5,2", "D:23,18", "A:7,3"])
def test_names_are_distinct(text):
    Q = build_ar_quiver(parse_group(text))
    named = locate_named_vertices(Q)
    named.pop("S0", None)  # the cyclic model calls R S0 as well
    assert len(set(named.values())) == len(named)


def test_resolve_forms():
    Q = build_ar_quiver(parse_group("D:5,2"))
    assert resolve_name(Q, "R") == Q.R
    assert resolve_name(Q, "3") == 3
    assert resolve_name(Q, 4) == 4
    assert resolve_name(Q, "s@2") == Q.at_label("s", 2)
    for bad in ["V9", "zz@1", "r@1", "99"]:
        with pytest.raises(UnknownVertexName):
            resolve_name(Q, bad)


def test_positions_wrap_by_twist():
    Q = build_ar_quiver(parse_group("T:3"))
    assert Q.at_label("r", 6) == Q.at_label("a2", 0)
    Q = build_ar_quiver(parse_group("D:7,3"))  # period 4, twisted
    assert Q.at_label("r", 8) == Q.at_label("s", 0)
    assert Q.at_label("w+", 11) == Q.at_label("w+", 3)


def test_to_dict_schema():
    Q = build_ar_quiver(parse_group("D:5,2"))
    d = Q.to_dict(named=locate_named_vertices(Q))
    assert set(d) == {"group", "vertices", "arrows", "tau", "R", "omega", "dual", "named"}
    assert len(d["vertices"]) == 15 and d["omega"] == Q.tau[Q.R]


@pytest.mark.parametrize("family, limit", [("D", 14), ("T", 40), ("O", 40), ("I", 40)])
def test_dual_candidates_exist_across_families(family, limit):
    for g in iter_groups(family, limit):
        assert dual_candidates(build_ar_quiver(g))


def test_cyclic_duals():
    # negation is always admissible; when a^2 = 1 mod r so is j -> -a j (the identity for a = r - 1)
    for g in iter_groups("A", 40):
        r, a = g.r, g.a
        Q = build_ar_quiver(g)
        expected = {tuple((-j) % r for j in range(r))}
        if (a * a) % r == 1:
            expected.add(tuple((-a * j) % r for j in range(r)))
        assert set(dual_candidates(Q)) == expected
        if len(expected) == 1:
            assert compute_dual(Q) == expected.pop()
        else:
            assert (a * a) % r == 1
            with pytest.raises(DualAmbiguityError):
                compute_dual(Q)
