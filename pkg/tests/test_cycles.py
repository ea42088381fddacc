import pytest

from kga.alignment import mce
from kga.core import box
from kga.cycles import (cycle_has_entrance, cycles_upto, find_generalised_cycles, gen_cycle_entrance,
                        has_conventional_cycle, is_cycle, is_generalised_cycle)
from kga.errors import EndpointMismatch, LimitExceeded, NotACycle
from kga.fixtures import CATALOGUE, fixture
from kga.paths import compose, path, paths_from

GC_FIXTURES = ["torus-2", "p1", "p2", "e63-analogue", "loop-with-exit", "cycle-3", "ladder-capped-4", "b2"]


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_cycle_certificate(name):
    sk = fixture(name)
    cyclic, lam = has_conventional_cycle(sk)
    if not cyclic:
        assert lam is None and cycles_upto(sk, tuple([2] * sk.rank)) == []
        return
    assert is_cycle(lam)
    assert is_generalised_cycle(sk, lam, path(sk, lam.range))


@pytest.mark.parametrize("name", GC_FIXTURES)
def test_entrance_iff_reverse_fails(name):
    sk = fixture(name)
    for g in find_generalised_cycles(sk, tuple([1] * sk.rank)):
        assert is_generalised_cycle(sk, g.mu, g.nu)
        assert g.has_entrance == (not is_generalised_cycle(sk, g.nu, g.mu))
        assert gen_cycle_entrance(sk, g.mu, g.nu)[0] == g.has_entrance
        if g.has_entrance:
            tau = g.entrance
            assert not mce(sk, compose(sk, g.nu, tau), g.mu)


@pytest.mark.parametrize("name", GC_FIXTURES)
def test_reported_pairs_meet_every_extension(name):
    sk = fixture(name)
    bound = tuple([3] * sk.rank) if len(sk.edges) <= 4 else tuple([2] * sk.rank)
    for g in find_generalised_cycles(sk, tuple([1] * sk.rank)):
        for d in box(bound):
            for tau in paths_from(sk, g.mu.source, d):
                assert mce(sk, compose(sk, g.mu, tau), g.nu), (g.mu, g.nu, tau)


def test_torus_pair_has_no_entrance():
    sk = fixture("torus-2")
    gs = {(str(g.mu), str(g.nu)): g for g in find_generalised_cycles(sk, (1, 1))}
    assert ("a", "b") in gs and not gs[("a", "b")].has_entrance


def test_loop_with_exit():
    sk = fixture("loop-with-exit")
    has, tau = cycle_has_entrance(sk, path(sk, "l"))
    assert has and tau == path(sk, "e")
    (g,) = [g for g in find_generalised_cycles(sk, (1,)) if not g.nu.word]
    assert str(g.mu) == "l" and g.has_entrance


def test_cycle_without_entrance():
    sk = fixture("cycle-3")
    lam = path(sk, "e0", "e1", "e2")
    assert is_cycle(lam)
    assert cycle_has_entrance(sk, lam) == (False, None)


def test_errors():
    sk = fixture("loop-with-exit")
    with pytest.raises(NotACycle):
        cycle_has_entrance(sk, path(sk, "e"))
    with pytest.raises(EndpointMismatch):
        is_generalised_cycle(sk, path(sk, "l"), path(sk, "l"))
    with pytest.raises(EndpointMismatch):
        is_generalised_cycle(sk, path(sk, "l"), path(sk, "e"))
    with pytest.raises(LimitExceeded):
        find_generalised_cycles(fixture("p1"), (2, 2), reduced=False, max_pairs=10)


def test_reduced_search_only_disjoint_degrees():
    sk = fixture("p2")
    for g in find_generalised_cycles(sk, (1, 1)):
        assert not any(a and b for a, b in zip(g.mu.degree, g.nu.degree))
