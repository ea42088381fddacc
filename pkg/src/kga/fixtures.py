"""Named catalogue of small k-graphs used by tests and the CLI."""

from __future__ import annotations

import itertools

from .constructions import Functor, build_omega, build_skew_window, disjoint_union
from .core import Skeleton, make_skeleton

LOOP_NAMES = "abcdefgh"


def torus(k: int = 2) -> Skeleton:
    """One vertex with one loop per colour; all squares commute."""
    names = LOOP_NAMES[:k]
    edges = [(x, i + 1, "v", "v") for i, x in enumerate(names)]
    squares = [(x, y, y, x) for x, y in itertools.combinations(names, 2)]
    return make_skeleton(k, ["v"], edges, squares)


def ncycle(n: int = 3, rank: int = 1) -> Skeleton:
    """Colour-1 cycle v0 <- v1 <- ... <- v(n-1) <- v0 (edge e_t has range v_t)."""
    vs = [f"v{t}" for t in range(n)]
    edges = [(f"e{t}", 1, vs[(t + 1) % n], vs[t]) for t in range(n)]
    return make_skeleton(rank, vs, edges, [])


def single_loop() -> Skeleton:
    return make_skeleton(1, ["v"], [("a", 1, "v", "v")], [])


def loop_with_exit() -> Skeleton:
    """Loop l at v and an edge e with range v coming from w (e is an entrance to l)."""
    return make_skeleton(1, ["v", "w"], [("l", 1, "v", "v"), ("e", 1, "w", "v")], [])


def loop_exit_connected() -> Skeleton:
    """loop_with_exit plus an edge g back from v to w, making the graph strongly connected."""
    return make_skeleton(1, ["v", "w"], [("l", 1, "v", "v"), ("e", 1, "w", "v"), ("g", 1, "v", "w")], [])


def bouquet(n: int = 2) -> Skeleton:
    """B_n: one vertex and n loops."""
    names = LOOP_NAMES[:n]
    return make_skeleton(1, ["v"], [(x, 1, "v", "v") for x in names], [])


def p_one() -> Skeleton:
    """One vertex, e_1, e_2 of colour 1, f_1, f_2 of colour 2, rules e_i f_j = f_i e_j."""
    edges = [("e_1", 1, "v", "v"), ("e_2", 1, "v", "v"), ("f_1", 2, "v", "v"), ("f_2", 2, "v", "v")]
    squares = [(f"e_{i}", f"f_{j}", f"f_{i}", f"e_{j}") for i in (1, 2) for j in (1, 2)]
    return make_skeleton(2, ["v"], edges, squares)


def p_two() -> Skeleton:
    """Same skeleton with rules e_i f_j = f_j e_i."""
    edges = [("e_1", 1, "v", "v"), ("e_2", 1, "v", "v"), ("f_1", 2, "v", "v"), ("f_2", 2, "v", "v")]
    squares = [(f"e_{i}", f"f_{j}", f"f_{j}", f"e_{i}") for i in (1, 2) for j in (1, 2)]
    return make_skeleton(2, ["v"], edges, squares)


def window_functor() -> Functor:
    """c(e_1) = c(f_2) = (0, 1), c(e_2) = (1, 1), c(f_1) = (-1, 1)."""
    return Functor(2, {"e_1": (0, 1), "f_2": (0, 1), "e_2": (1, 1), "f_1": (-1, 1)})


WINDOW_LO = (-3, 0)
WINDOW_HI = (3, 3)


def lambda_one_window(lo=WINDOW_LO, hi=WINDOW_HI) -> Skeleton:
    return build_skew_window(p_one(), window_functor(), lo, hi)


def lambda_two_window(lo=WINDOW_LO, hi=WINDOW_HI) -> Skeleton:
    return build_skew_window(p_two(), window_functor(), lo, hi)


def _ladder(N: int, capped: bool) -> Skeleton:
    """Levels v_0 .. v_N; level i carries alpha_j^i (colour 1) and beta_j^i (colour 2),
    j in Z/i, all with range v_{i-1} and source v_i."""
    vs = [f"v_{i}" for i in range(N + 1)]
    edges = []
    for i in range(1, N + 1):
        for j in range(i):
            edges.append((f"alpha_{j}^{i}", 1, vs[i], vs[i - 1]))
            edges.append((f"beta_{j}^{i}", 2, vs[i], vs[i - 1]))
    squares = []
    for i in range(1, N):
        for j in range(i):
            for k in range(i + 1):
                squares.append((f"alpha_{j}^{i}", f"beta_{k}^{i + 1}",
                                f"beta_{(j + 1) % i}^{i}", f"alpha_{(k + 1) % (i + 1)}^{i + 1}"))
    if capped:
        edges += [(f"a_{N}", 1, vs[N], vs[N]), (f"b_{N}", 2, vs[N], vs[N])]
        squares.append((f"a_{N}", f"b_{N}", f"b_{N}", f"a_{N}"))
        for j in range(N):
            squares.append((f"alpha_{j}^{N}", f"b_{N}", f"beta_{(j + 1) % N}^{N}", f"a_{N}"))
    return make_skeleton(2, vs, edges, squares)


def ladder_open(N: int = 4) -> Skeleton:
    return _ladder(N, capped=False)


def ladder_capped(N: int = 4) -> Skeleton:
    return _ladder(N, capped=True)


def e63_analogue() -> Skeleton:
    """Vertices w, u; loops alpha (colour 1), beta (colour 2) at w with alpha beta = beta alpha;
    x (colour 1) and y (colour 2) with source u and range w; alpha y = beta x.

    A minimal graph with the behaviour of the non-AF example whose figure is
    not reproduced: {u} is saturated hereditary, (alpha, beta) is a
    generalised cycle only after removing u.
    """
    edges = [("alpha", 1, "w", "w"), ("beta", 2, "w", "w"), ("x", 1, "u", "w"), ("y", 2, "u", "w")]
    squares = [("alpha", "beta", "beta", "alpha"), ("alpha", "y", "beta", "x")]
    return make_skeleton(2, ["u", "w"], edges, squares)


def cycle3_rank2() -> Skeleton:
    """2-graph whose only edges form a colour-1 3-cycle."""
    return ncycle(3, rank=2)


def torus_plus_cycle() -> Skeleton:
    return disjoint_union(torus(2), cycle3_rank2(), prefixes=["t_", "c_"])


def point(rank: int = 1) -> Skeleton:
    return make_skeleton(rank, ["v"], [], [])


def duplicate_square_counterexample() -> Skeleton:
    edges = [("e_1", 1, "v", "v"), ("e_2", 1, "v", "v"), ("f_1", 2, "v", "v")]
    squares = [("e_1", "f_1", "f_1", "e_1"), ("e_2", "f_1", "f_1", "e_1")]
    return make_skeleton(2, ["v"], edges, squares)


CATALOGUE = {
    "point": point,
    "single-loop": single_loop,
    "torus-2": lambda: torus(2),
    "torus-3": lambda: torus(3),
    "cycle-3": lambda: ncycle(3),
    "cycle-4": lambda: ncycle(4),
    "loop-with-exit": loop_with_exit,
    "loop-exit-connected": loop_exit_connected,
    "b2": lambda: bouquet(2),
    "omega-1-3": lambda: build_omega(1, (3,)),
    "omega-2-1-1": lambda: build_omega(2, (1, 1)),
    "omega-2-2-1": lambda: build_omega(2, (2, 1)),
    "omega-2-2-2": lambda: build_omega(2, (2, 2)),
    "omega-3-1-1-1": lambda: build_omega(3, (1, 1, 1)),
    "ladder-open-4": lambda: ladder_open(4),
    "ladder-capped-4": lambda: ladder_capped(4),
    "e63-analogue": e63_analogue,
    "p1": p_one,
    "p2": p_two,
    "lambda1-window": lambda_one_window,
    "lambda2-window": lambda_two_window,
    "cycle3-rank2": cycle3_rank2,
    "torus-plus-cycle": torus_plus_cycle,
}


def fixtures() -> dict[str, Skeleton]:
    """Build every catalogue entry."""
    return {name: build() for name, build in CATALOGUE.items()}


def fixture(name: str) -> Skeleton:
    try:
        return CATALOGUE[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(CATALOGUE))}") from None
