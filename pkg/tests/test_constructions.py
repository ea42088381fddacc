import pytest

from kga.constructions import (Functor, build_example42, build_omega, build_product, build_pullback,
                               build_skew_window, disjoint_union, find_isomorphism, skew_window_details,
                               subdivide, verify_skew_identities)
from kga.core import box, validate
from kga.errors import EmptyWindow, MalformedSkeleton, NotExample42Graph, NotSurjective
from kga.fixtures import CATALOGUE, WINDOW_HI, WINDOW_LO, bouquet, fixture, p_one, p_two, window_functor
from kga.paths import compose, normalize, paths_from


def base_path(sk, name):
    """'(a,b,e2)' -> the base path a.b."""
    parts = name.strip("()").split(",")[:-1]
    return normalize(sk, parts) if parts[0] not in sk.vertices else normalize(sk, (), vertex=parts[0])


@pytest.mark.parametrize("f", [[[1, 1]], [[1, 2]], [[2, 1, 1]], [[1, 0, 3]]])
def test_pullback_degree_law(f):
    base = bouquet(2)
    sk = build_pullback(base, f)
    assert validate(sk).accepted
    cols = [tuple(row[i] for row in f) for i in range(len(f[0]))]
    for e in sk.edges:
        lam = base_path(base, e.name)
        assert lam.degree == cols[e.colour - 1]
        assert (lam.source, lam.range) == (e.source, e.range)
    for s in sk.squares:
        one = compose(base, base_path(base, s.first[0]), base_path(base, s.first[1]))
        two = compose(base, base_path(base, s.second[0]), base_path(base, s.second[1]))
        assert one == two


def test_pullback_requires_surjection():
    with pytest.raises(NotSurjective):
        build_pullback(bouquet(2), [[2, 2]])
    with pytest.raises(MalformedSkeleton):
        build_pullback(bouquet(2), [[1], [1]])


def test_pullback_and_product_match_fixtures():
    b2 = bouquet(2)
    assert find_isomorphism(build_pullback(b2, [[1, 1]]), p_one()) is not None
    assert find_isomorphism(build_product(b2, b2), p_two()) is not None
    assert find_isomorphism(p_one(), p_two()) is None


@pytest.mark.parametrize("m", [(1,), (3,), (1, 1), (2, 1), (2, 2), (1, 1, 1), (2, 1, 1)])
def test_omega_counts(m):
    sk = build_omega(len(m), m)
    assert validate(sk).accepted
    points = list(box(m))
    assert len(sk.vertices) == len(points)
    # Omega has exactly one path of each degree n <= m - p from each point p
    for p in points:
        v = "(" + ",".join(map(str, p)) + ")"
        for n in box(tuple(a - b for a, b in zip(m, p))):
            assert len(paths_from(sk, v, n)) == 1


def test_functor_validation():
    c = window_functor()
    assert c.is_compatible(p_one()) and c.is_compatible(p_two())
    bad = Functor(2, {"e_1": (0, 1), "f_2": (0, 1), "e_2": (1, 1), "f_1": (0, 0)})
    assert bad.square_defects(p_one())
    with pytest.raises(MalformedSkeleton):
        build_skew_window(p_one(), bad, (0, 0), (1, 1))


def test_skew_window_report():
    win = skew_window_details(p_one(), window_functor(), WINDOW_LO, WINDOW_HI)
    assert validate(win.skeleton).accepted
    assert len(win.skeleton.vertices) == 28
    assert len(win.skeleton.edges) == 66 and len(win.skeleton.squares) == 40
    assert win.interior and win.deleted_edges >= 0
    with pytest.raises(EmptyWindow):
        build_skew_window(p_one(), window_functor(), (1, 1), (0, 0))
    with pytest.raises(MalformedSkeleton):
        build_skew_window(p_one(), window_functor(), (0,), (1,))


def test_example42():
    ex = build_example42(bouquet(2), {"a": 1, "b": 0}, 2)
    assert validate(ex.skeleton).accepted
    assert not ex.functor.square_defects(ex.skeleton)
    assert find_isomorphism(ex.skeleton, p_one()) is not None
    for report in verify_skew_identities(ex, 2):
        assert report.passed and report.checked > 0
    with pytest.raises(NotExample42Graph):
        verify_skew_identities(p_one(), 1)
    with pytest.raises(MalformedSkeleton):
        build_example42(p_one(), {}, 2)
    with pytest.raises(MalformedSkeleton):
        build_example42(bouquet(2), {"a": 2, "b": 0}, 2)


def test_helpers():
    sk = disjoint_union(fixture("torus-2"), fixture("torus-2"))
    assert len(sk.vertices) == 2 and validate(sk).accepted
    sub = subdivide(fixture("cycle-3"))
    assert len(sub.vertices) == 6 and len(sub.edges) == 6
    with pytest.raises(MalformedSkeleton):
        subdivide(fixture("torus-2"))


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_catalogue_builds_accepted(name):
    assert validate(fixture(name)).accepted
