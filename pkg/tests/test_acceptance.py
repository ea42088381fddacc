"""Acceptance suite: one test per criterion, numbered 1 to 11.

Run with `pytest tests/test_acceptance.py -v`; the terminal summary prints a
PASS/FAIL line per criterion.  The file can also be executed directly.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path as FsPath

import pytest
import sympy

from kga import kgformat
from kga.alignment import ext, is_exhaustive, witness_is_valid
from kga.classify import (AF, NOT_AF, certificate_from_json, finite_dim_decomposition, initial_cycles,
                          path_from_json, rho_shift, terminal_vertices, total_dimension,
                          verify_certificate, classify_af)
from kga.constructions import (build_example42, build_omega, build_product, build_pullback, find_isomorphism,
                               skew_window_details, verify_skew_identities, window_edge, window_vertex)
from kga.core import box, is_zero, leq, make_skeleton, meet, scale, validate, zero
from kga.cycles import (cycle_has_entrance, cycles_upto, find_generalised_cycles, gen_cycle_entrance,
                        has_conventional_cycle, is_cycle, is_generalised_cycle)
from kga.errors import DuplicateSquare
from kga.fixtures import (CATALOGUE, WINDOW_HI, WINDOW_LO, bouquet, duplicate_square_counterexample, fixture,
                          p_two, window_functor)
from kga.ideals import quotient, quotient_gencycle_sweep
from kga.ktheory import block_column, kgroups, kernel_rank, vertex_class_criterion
from kga.linalg import invariant_factors
from kga.paths import compose, count_paths, normalize, path, paths_from, paths_upto, segment
from kga.traces import composite_degree_failures, is_graph_trace, normalized_faithful_trace

from oracles import (CompatibilityTable, ext_brute, longest_path, raw_words, subsets_upto, swap_classes,
                     universe)

ROOT = FsPath(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures"
ACYCLIC = [n for n in CATALOGUE if not has_conventional_cycle(fixture(n))[0]]
CYCLIC = [n for n in CATALOGUE if n not in ACYCLIC]


def top(sk, t):
    return tuple([t] * sk.rank)


# -- 1. validator ---------------------------------------------------------------

ACCEPTED = ["p1", "p2", "omega-2-1-1", "omega-2-2-1", "omega-2-2-2", "single-loop", "torus-2", "torus-3",
            "ladder-open-4", "ladder-capped-4", "e63-analogue", "lambda1-window", "lambda2-window"]


def test_criterion_01_validator():
    for name in ACCEPTED:
        sk = kgformat.load(FIXTURE_DIR / f"{name}.kg")
        start = time.perf_counter()
        report = validate(sk)
        elapsed = time.perf_counter() - start
        assert report.accepted, (name, [i.describe() for i in report.issues])
        assert elapsed < 1.0, (name, elapsed)
    start = time.perf_counter()
    report = validate(duplicate_square_counterexample())
    assert time.perf_counter() - start < 1.0
    assert not report.accepted
    assert any(isinstance(issue, DuplicateSquare) for issue in report.issues)


# -- 2. path calculus -------------------------------------------------------------

def test_criterion_02_path_calculus():
    start = time.perf_counter()
    for name in CATALOGUE:
        sk = fixture(name)
        k0 = zero(sk.rank)
        for v in sk.vertices:
            for d in box(top(sk, 3)):
                canon = paths_from(sk, v, d)
                assert count_paths(sk, v, d) == len(canon)
                # unique factorisation: each swap class of raw words is one path
                classes = swap_classes(sk, raw_words(sk, v, d))
                images = set()
                for cls in classes:
                    forms = {normalize(sk, w, vertex=v) for w in cls}
                    assert len(forms) == 1, (name, v, d, sorted(cls))
                    images |= forms
                assert len(classes) == len(canon) and images == set(canon), (name, v, d)
                for lam in canon:
                    for m in box(d):
                        head, tail = segment(sk, lam, k0, m), segment(sk, lam, m, d)
                        assert compose(sk, head, tail) == lam
                        # the factorisation is the only one with these degrees
                        hits = [(a, b) for a in paths_from(sk, v, m) for b in paths_from(sk, a.source, tuple(
                            x - y for x, y in zip(d, m))) if compose(sk, a, b) == lam]
                        assert hits == [(head, tail)]
    assert time.perf_counter() - start < 10.0


# -- 3. Ext law -------------------------------------------------------------------

def test_criterion_03_ext_law():
    for name in ["p1", "p2", "e63-analogue"]:
        sk = fixture(name)
        P = {v: paths_upto(sk, v, (2, 2)) for v in sk.vertices}
        pairs = [(lam, mu) for v in sk.vertices for lam in P[v] for mu in P[lam.source]]
        # singleton law for every composable pair, against the definition
        for lam, mu in pairs:
            lm = compose(sk, lam, mu)
            for nu in P[lam.range]:
                lhs = ext(sk, lm, {nu})
                assert lhs == ext(sk, mu, ext(sk, lam, {nu})), (name, lam, mu, nu)
                assert lhs == ext_brute(sk, lm, [nu])
        # the law on every E with |E| <= 3; all pairs on the small graph, pairs of
        # degree <= (1, 1) on the one-vertex graphs (see the decisions ledger)
        small = [(lam, mu) for lam, mu in pairs if name == "e63-analogue"
                 or (leq(lam.degree, (1, 1)) and leq(mu.degree, (1, 1)))]
        for lam, mu in small:
            lm = compose(sk, lam, mu)
            for E in subsets_upto(P[lam.range], 3):
                assert ext(sk, lm, E) == ext(sk, mu, ext(sk, lam, E)), (name, lam, mu, E)


# -- 4. exhaustiveness decider ------------------------------------------------------

def test_criterion_04_decider_vs_oracle():
    for name in CATALOGUE:
        sk = fixture(name)
        cyclic = has_conventional_cycle(sk)[0]
        reach = 6 if cyclic else max(1, longest_path(sk))
        for v in sk.vertices:
            table = CompatibilityTable(sk, universe(sk, v, top(sk, reach)))
            for F in subsets_upto(paths_upto(sk, v, top(sk, 2)), 3):
                res = is_exhaustive(sk, v, F)
                assert res.exhaustive == table.exhaustive(F), (name, v, [str(p) for p in F])
                if not res.exhaustive:
                    assert witness_is_valid(sk, res.witness, F), (name, v, res.witness)


# -- 5. generalised cycles -------------------------------------------------------------

def random_one_graph(rng):
    n = rng.randint(1, 6)
    vs = [f"v{i}" for i in range(n)]
    edges = [(f"e{t}", 1, rng.choice(vs), rng.choice(vs)) for t in range(rng.randint(1, 10))]
    return make_skeleton(1, vs, edges, [])


def factors_through_cycle(sk, mu, nu):
    short, long = sorted((mu, nu), key=len)
    if long.word[:len(short)] != short.word or len(long) == len(short):
        return False
    return is_cycle(normalize(sk, long.word[len(short):]))


def test_criterion_05_generalised_cycles():
    for name in CYCLIC:
        sk = fixture(name)
        _, lam = has_conventional_cycle(sk)
        assert is_generalised_cycle(sk, lam, normalize(sk, (), vertex=lam.range)), name

    rng = random.Random(20240601)
    found = 0
    for _ in range(20):
        sk = random_one_graph(rng)
        for g in find_generalised_cycles(sk, (3,), reduced=False):
            found += 1
            assert factors_through_cycle(sk, g.mu, g.nu), (sk, g)
    assert found > 0

    torus = fixture("torus-2")
    a, b = path(torus, "a"), path(torus, "b")
    assert is_generalised_cycle(torus, a, b)
    assert gen_cycle_entrance(torus, a, b) == (False, None)

    e63 = fixture("e63-analogue")
    alpha, beta = path(e63, "alpha"), path(e63, "beta")
    assert not is_generalised_cycle(e63, alpha, beta)
    assert not is_generalised_cycle(e63, beta, alpha)
    Q = quotient(e63, {"u"})
    assert is_generalised_cycle(Q, path(Q, "alpha"), path(Q, "beta"))
    hits = {(h.H.members, frozenset({str(h.cycle.mu), str(h.cycle.nu)}))
            for h in quotient_gencycle_sweep(e63, (1, 1))
            if not h.cycle.mu.is_vertex and not h.cycle.nu.is_vertex}
    assert hits == {(frozenset({"u"}), frozenset({"alpha", "beta"}))}


# -- 6. AF classification -------------------------------------------------------------

def test_criterion_06_af_classification():
    for name in CATALOGUE:
        sk = fixture(name)
        verdict = classify_af(sk)
        if name in ACYCLIC:
            assert verdict.status == AF, name
        else:
            assert verdict.status == NOT_AF, name
            assert any(c.kind != "acyclic" for c in verdict.reasons)
        assert all(verify_certificate(sk, c) for c in verdict.reasons), name

    assert [d for _, d in finite_dim_decomposition(build_omega(2, (1, 1)))] == [4]
    assert [d for _, d in finite_dim_decomposition(build_omega(2, (2, 1)))] == [6]

    for name in ACYCLIC:
        sk = fixture(name)
        dec = finite_dim_decomposition(sk)
        ends = set(terminal_vertices(sk))
        everything = [p for v in sk.vertices for p in paths_upto(sk, v, top(sk, longest_path(sk)))]
        into_ends = [p for p in everything if p.source in ends]
        assert sum(d for _, d in dec) == len(into_ends), name
        same_source = sum(1 for x in into_ends for y in into_ends if x.source == y.source)
        assert total_dimension(dec) == same_source, name


# -- 7. structure of graphs without entrances --------------------------------------------

NO_ENTRANCE = ["single-loop", "torus-2", "torus-3", "cycle-3", "cycle-4", "cycle3-rank2", "torus-plus-cycle"]


def test_criterion_07_structure():
    for name in NO_ENTRANCE:
        sk = fixture(name)
        rhos = [r for r in cycles_upto(sk, top(sk, min(4, len(sk.vertices)))) if not cycle_has_entrance(sk, r)[0]]
        assert rhos, name
        for rho in rhos:
            for m in box(top(sk, 3)):
                if not is_zero(meet(m, rho.degree)):
                    continue
                domain = paths_from(sk, rho.range, m)
                image = {rho_shift(sk, rho, mu) for mu in domain}
                assert image == set(domain), (name, rho, m)
                for mu in domain:
                    for n in (1, 2, 3):
                        assert len(paths_from(sk, mu.source, scale(n, rho.degree))) == 1, (name, rho, mu, n)
                    cap = max(1, len(domain))
                    loops = []
                    for p in range(1, cap + 1):
                        (only,) = paths_from(sk, mu.source, scale(p, rho.degree))
                        loops.append(is_cycle(only))
                    assert any(loops), (name, rho, mu)

    ranks = {name: sorted(ic.torus_rank for ic in initial_cycles(fixture(name))) for name in NO_ENTRANCE}
    assert ranks["torus-2"] == [2]
    assert ranks["cycle-3"] == [1] and ranks["cycle-4"] == [1] and ranks["single-loop"] == [1]
    assert ranks["cycle3-rank2"] == [1]
    assert ranks["torus-plus-cycle"] == [1, 2]
    (ic,) = initial_cycles(fixture("cycle3-rank2"))
    assert ic.group.basis == ((3, 0),)
    for name in NO_ENTRANCE:
        assert all(ic.group.closed for ic in initial_cycles(fixture(name))), name


# -- 8. traces ------------------------------------------------------------------------------

def test_criterion_08_traces():
    tr = normalized_faithful_trace(fixture("cycle-3"))
    assert tr is not None and set(tr.values.values()) == {Fraction(1, 3)}
    assert normalized_faithful_trace(fixture("loop-with-exit")) is None

    win = skew_window_details(p_two(), window_functor(), WINDOW_LO, WINDOW_HI)
    assert win.interior
    g = {}
    for i in range(WINDOW_LO[0], WINDOW_HI[0] + 1):
        for j in range(WINDOW_LO[1], WINDOW_HI[1] + 1):
            g[window_vertex("v", (i, j))] = Fraction(1, 2 ** j)
    assert is_graph_trace(win.skeleton, g, vertices=win.interior)

    for name in CATALOGUE:
        sk = fixture(name)
        if not validate(sk).locally_convex:
            continue
        tr = normalized_faithful_trace(sk)
        if tr is not None:
            assert composite_degree_failures(sk, tr.values, top(sk, 2)) == [], name


# -- 9. K-theory --------------------------------------------------------------------------------

def timed_kgroups(name):
    sk = fixture(name)
    start = time.perf_counter()
    kg = kgroups(sk)
    assert time.perf_counter() - start < 1.0, name
    return str(kg.k0), str(kg.k1)


def test_criterion_09_ktheory():
    assert timed_kgroups("single-loop") == ("Z", "Z")
    assert timed_kgroups("torus-2") == ("Z^2", "Z^2")
    assert timed_kgroups("omega-2-1-1") == ("Z", "0")
    for name in ["lambda1-window", "lambda2-window"]:
        sk = fixture(name)
        start = time.perf_counter()
        assert vertex_class_criterion(sk)
        A = block_column(sk)
        n = len(sk.vertices)
        assert kernel_rank(A, n) == 0
        assert len(invariant_factors(A)) == n
        assert sympy.Matrix(A).rank() == n
        assert time.perf_counter() - start < 1.0, name


# -- 10. constructions ------------------------------------------------------------------------------

# The displayed factorisation rules, as (edge, di, dj) offsets from (i, j).
RULES = {
    "lambda1-window": [
        ((("e_1", 0, 0), ("f_2", 0, 1)), (("f_1", 0, 0), ("e_2", -1, 1))),
        ((("e_2", 0, 0), ("f_1", 1, 1)), (("f_2", 0, 0), ("e_1", 0, 1))),
        ((("e_1", 0, 0), ("f_1", 0, 1)), (("f_1", 0, 0), ("e_1", -1, 1))),
        ((("e_2", 0, 0), ("f_2", 1, 1)), (("f_2", 0, 0), ("e_2", 0, 1))),
    ],
    "lambda2-window": [
        ((("e_1", 0, 0), ("f_2", 0, 1)), (("f_2", 0, 0), ("e_1", 0, 1))),
        ((("e_2", 0, 0), ("f_1", 1, 1)), (("f_1", 0, 0), ("e_2", -1, 1))),
        ((("e_1", 0, 0), ("f_1", 0, 1)), (("f_1", 0, 0), ("e_1", -1, 1))),
        ((("e_2", 0, 0), ("f_2", 1, 1)), (("f_2", 0, 0), ("e_2", 0, 1))),
    ],
}
# e_1^{i,j} has range v_(i,j) and source v_(i,j+1), and so on
SOURCE_OFFSET = {"e_1": (0, 1), "f_2": (0, 1), "e_2": (1, 1), "f_1": (-1, 1)}


def test_criterion_10_constructions():
    b2 = bouquet(2)
    assert find_isomorphism(build_pullback(b2, [[1, 1]]), fixture("p1")) is not None
    assert find_isomorphism(build_product(b2, b2), fixture("p2")) is not None

    grid = [(i, j) for i in range(WINDOW_LO[0], WINDOW_HI[0] + 1) for j in range(WINDOW_LO[1], WINDOW_HI[1] + 1)]
    for name, rules in RULES.items():
        sk = fixture(name)
        assert validate(sk).accepted
        present = 0
        for e, (di, dj) in SOURCE_OFFSET.items():
            for i, j in grid:
                edge = sk.edge.get(window_edge(e, (i, j)))
                if edge is None:
                    continue
                present += 1
                assert edge.range == window_vertex("v", (i, j)), edge
                assert edge.source == window_vertex("v", (i + di, j + dj)), edge
        assert present == len(sk.edges)

        def name_of(term, i, j):
            e, di, dj = term
            return window_edge(e, (i + di, j + dj))

        expected = set()
        for i, j in grid:
            for first, second in rules:
                a, b = (name_of(t, i, j) for t in first)
                c, d = (name_of(t, i, j) for t in second)
                if all(x in sk.edge for x in (a, b, c, d)):
                    expected.add(((a, b), (c, d)))
        assert {(s.first, s.second) for s in sk.squares} == expected, name

    ex = build_example42(b2, {"a": 1, "b": 0}, 2)
    for N in (1, 2, 3):
        reports = verify_skew_identities(ex, N)
        assert all(r.passed and r.checked for r in reports), (N, [(r.name, r.failures[:2]) for r in reports])


# -- 11. CLI ------------------------------------------------------------------------------------------

COMMANDS = ["validate", "analyze", "classify", "structure", "trace", "ktheory", "sweep"]

DRIVER = """
import contextlib, io, json, sys
from kga.cli import run
out = {}
for cmd in %r:
    for name in %r:
        buf, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
            code = run([cmd, "%s/" + name + ".kg", "--json"])
        out[cmd + " " + name] = [code, buf.getvalue(), err.getvalue()]
print(json.dumps(out, sort_keys=True))
"""


def run_all_commands(seed):
    script = DRIVER % (COMMANDS, sorted(CATALOGUE), FIXTURE_DIR)
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, env=env, check=True)
    return proc.stdout


def test_criterion_11_cli():
    for name in CATALOGUE:
        sk = fixture(name)
        assert kgformat.loads(kgformat.dumps(sk)) == sk, name
        assert kgformat.load(FIXTURE_DIR / f"{name}.kg") == sk, name

    first, second = run_all_commands(1), run_all_commands(2)
    assert first == second
    results = json.loads(first)

    checked = 0
    for key, (code, stdout, _) in results.items():
        if code != 0:
            continue
        name = key.split()[1]
        sk = fixture(name)
        doc = json.loads(stdout)
        for raw in doc["certificates"]:
            cert = certificate_from_json(sk, raw)
            assert verify_certificate(sk, cert), (key, raw)
            if raw["kind"] in ("gen-cycle", "infinite-projection", "quotient-gen-cycle"):
                target = quotient(sk, raw["H"]) if raw.get("H") else sk
                mu, nu = (path_from_json(target, p) for p in raw["paths"])
                assert is_generalised_cycle(target, mu, nu), (key, raw)
            checked += 1
    assert checked > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
