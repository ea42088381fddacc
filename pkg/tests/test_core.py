import pytest
from hypothesis import given, strategies as st

from kga.core import (Edge, Skeleton, Square, add, box, colour_sequence, composable_pairs, is_locally_convex,
                      join, leq, make_skeleton, meet, parse_degree, sub, subskeleton, unit, validate,
                      vertex_matrix, zero)
from kga.errors import CubeViolation, DuplicateSquare, MalformedSkeleton, MissingSquare, SkeletonRejected
from kga.fixtures import CATALOGUE, duplicate_square_counterexample, fixture
from kga.linalg import matmul

degrees = st.lists(st.integers(0, 6), min_size=3, max_size=3).map(tuple)


@given(degrees, degrees)
def test_degree_lattice_laws(m, n):
    assert m == add(meet(m, n), sub(m, meet(m, n)))
    assert join(m, n) == add(n, sub(m, meet(m, n)))
    assert leq(meet(m, n), m) and leq(m, join(m, n))


def test_unit_and_colour_sequence():
    assert unit(3, 2) == (0, 1, 0)
    assert colour_sequence((2, 1)) == [1, 1, 2]
    assert list(box((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(ValueError):
        sub((1, 0), (0, 1))


def test_parse_degree():
    assert parse_degree("(1,2)") == (1, 2)
    assert parse_degree("2", 3) == (2, 2, 2)
    assert parse_degree("-1,3", signed=True) == (-1, 3)
    with pytest.raises(ValueError):
        parse_degree("-1,3")
    with pytest.raises(ValueError):
        parse_degree("1,2", 3)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_square_relation_is_an_involution(name):
    sk = fixture(name)
    for word in composable_pairs(sk):
        other = sk.partner[word]
        assert sk.partner[other] == word
        a, b = (sk.edge[x] for x in word)
        c, d = (sk.edge[x] for x in other)
        assert (a.colour, b.colour) == (d.colour, c.colour)
        assert a.range == c.range and b.source == d.source


@pytest.mark.parametrize("name", [n for n in sorted(CATALOGUE) if fixture(n).rank == 2])
def test_vertex_matrices_commute(name):
    sk = fixture(name)
    M1, M2 = vertex_matrix(sk, 1), vertex_matrix(sk, 2)
    assert matmul(M1, M2) == matmul(M2, M1)


def test_all_fixtures_accepted():
    for name in CATALOGUE:
        assert validate(fixture(name)).accepted, name


def test_duplicate_square_rejected():
    sk = duplicate_square_counterexample()
    rep = validate(sk)
    assert not rep.accepted and not rep.bijective
    assert any(isinstance(i, DuplicateSquare) for i in rep.issues)
    with pytest.raises(SkeletonRejected):
        sk.require_accepted()


def test_missing_square_reported():
    sk = make_skeleton(2, ["v"], [("a", 1, "v", "v"), ("b", 2, "v", "v")], [])
    rep = validate(sk)
    assert set(rep.issues) == {MissingSquare(("a", "b")), MissingSquare(("b", "a"))}


def test_cube_violation():
    # colour-1 loops a1, a2, a3; b permutes them by (12), c by (23)
    edges = [(f"a{i}", 1, "v", "v") for i in (1, 2, 3)] + [("b", 2, "v", "v"), ("c", 3, "v", "v")]
    sb = {1: 2, 2: 1, 3: 3}
    sc = {1: 1, 2: 3, 3: 2}
    squares = [(f"a{i}", "b", "b", f"a{sb[i]}") for i in (1, 2, 3)]
    squares += [(f"a{i}", "c", "c", f"a{sc[i]}") for i in (1, 2, 3)]
    squares.append(("b", "c", "c", "b"))
    rep = validate(make_skeleton(3, ["v"], edges, squares))
    assert rep.bijective and rep.cube is False
    assert any(isinstance(i, CubeViolation) for i in rep.issues)
    assert validate(fixture("torus-3")).cube is True


def test_malformed_input():
    with pytest.raises(MalformedSkeleton):
        make_skeleton(2, ["v", "v"], [], [])
    with pytest.raises(MalformedSkeleton):
        make_skeleton(1, ["v"], [("a", 2, "v", "v")], [])
    with pytest.raises(MalformedSkeleton):
        make_skeleton(1, ["v"], [("a", 1, "v", "w")], [])
    with pytest.raises(MalformedSkeleton):
        Skeleton(0, ("v",), (), ())


def test_squares_canonicalised_lower_colour_first():
    sk = make_skeleton(2, ["v"], [("a", 1, "v", "v"), ("b", 2, "v", "v")], [("b", "a", "a", "b")])
    assert sk.squares == (Square(("a", "b"), ("b", "a")),)
    assert sk.edges == (Edge("a", 1, "v", "v"), Edge("b", 2, "v", "v"))


def test_local_convexity_and_subskeleton():
    assert is_locally_convex(fixture("p1"))
    assert not is_locally_convex(fixture("e63-analogue"))
    sub_ = subskeleton(fixture("e63-analogue"), ["w"])
    assert {e.name for e in sub_.edges} == {"alpha", "beta"} and len(sub_.squares) == 1
    assert zero(2) == (0, 0)
