"""Worked examples, the near-neutral c(n,k) family and random instances.

Random instances come from ``numpy.random.default_rng`` (PCG64), which
produces the same stream for a given seed on every platform.
"""
from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .core import (Ballot, BallotFamily, GrandSet, QuasiChoice, QuasiChoiceError,
                   Relation, ballot_from_voter, iter_items, popcount)

FIXTURES = ("watson", "nonliberal", "ex-lib2-dem3", "ex-dem5-lib10", "ex-dem-eq-lib")
# the "dem = lib" table with {x,y,w} -> {x}: the choice induced by majority
# vote of the three-voter democratic family listed with ex-dem-eq-lib
EXTRA_FIXTURES = ("ex-dem-eq-lib-xyw",)

XYZ = GrandSet(3, ("x", "y", "z"))
XYZW = GrandSet(4, ("x", "y", "z", "w"))


def cnk_grand(n: int) -> GrandSet:
    return GrandSet(n + 1, tuple(str(i) for i in range(n + 1)))


def _check_cnk(n: int, k: int):
    if n < 1 or not 1 <= k <= n + 1:
        raise QuasiChoiceError(f"need n >= 1 and 1 <= k <= n+1, got n={n}, k={k}")


def gen_cnk(n: int, k: int) -> QuasiChoice:
    """Choice on ``{0..n}`` dropping item 0 from menus that contain it and
    have more than ``k`` items; everything else is chosen."""
    _check_cnk(n, k)
    g = cnk_grand(n)

    def pick(a):
        if a & 1 and popcount(a) > k:
            return a & ~1
        return a
    return QuasiChoice.from_function(g, pick)


def gen_cnk_liberal_family(n: int, k: int) -> BallotFamily:
    """One ballot per ``k``-menu ``A`` containing 0: it keeps 0 only in
    sub-menus of ``A``.  Size ``C(n, k-1)``."""
    _check_cnk(n, k)
    g = cnk_grand(n)
    members = []
    for rest in combinations(range(1, n + 1), k - 1):
        a = 1
        for i in rest:
            a |= 1 << i
        # q -> 0 for every q outside A
        members.append(ballot_from_voter(Relation(g, (g.full & ~a,) + (0,) * n)))
    return BallotFamily(members, g)


def gen_cnk_democratic_family(n: int, k: int) -> BallotFamily:
    """Ballots ``v_i`` (item ``i`` alone beats 0) for ``i = 1..n``, padded with
    ``2k-n-1`` neutral ballots when ``k > n/2`` or ``n-2k`` hypercritical ones
    otherwise."""
    _check_cnk(n, k)
    g = cnk_grand(n)
    members = [ballot_from_voter(Relation(g, (1 << i,) + (0,) * n)) for i in range(1, n + 1)]
    if 2 * k > n:
        members += [Ballot.neutral(g)] * (2 * k - n - 1)
    else:
        members += [Ballot.hypercritical(g)] * (n - 2 * k)
    return BallotFamily(members, g)


def _table(grand: GrandSet, rows: dict[str, str]) -> QuasiChoice:
    """Nonempty menus written as item strings; singletons default to themselves."""
    mapping = {grand.menu(a): grand.menu(v) for a, v in rows.items()}
    for i in range(grand.n):
        mapping.setdefault(1 << i, 1 << i)
    return QuasiChoice.from_mapping(grand, mapping)


def _fam(grand: GrandSet, voters) -> BallotFamily:
    return BallotFamily([ballot_from_voter(Relation.from_edges(grand, v)) for v in voters], grand)


def _edges(spec: str):
    """``"x>y x>z"`` -> ``[("x","y"), ("x","z")]``."""
    return [tuple(e.split(">")) for e in spec.split()]


def fixture(name: str) -> QuasiChoice:
    if name == "watson":
        return _table(XYZ, {"xyz": "xy", "xy": "xy", "xz": "xz", "yz": "y"})
    if name == "nonliberal":
        return QuasiChoice.from_mapping(XYZ, {XYZ.menu("xz"): XYZ.menu("x")}, default="identity")
    if name == "ex-lib2-dem3":
        return _table(XYZ, {"xy": "xy", "xz": "x", "yz": "y", "xyz": "x"})
    if name == "ex-dem5-lib10":
        g = cnk_grand(5)
        return QuasiChoice.from_function(g, lambda a: a & ~1 if a & 1 and popcount(a) >= 4 else a)
    if name == "ex-dem-eq-lib":
        return _table(XYZW, {
            "xy": "xy", "xz": "xz", "xw": "x", "yz": "yz", "yw": "y", "zw": "zw",
            "xyz": "xy", "xyw": "xy", "xzw": "x", "yzw": "y", "xyzw": "x"})
    if name == "ex-dem-eq-lib-xyw":
        return _table(XYZW, {
            "xy": "xy", "xz": "xz", "xw": "x", "yz": "yz", "yw": "y", "zw": "zw",
            "xyz": "xy", "xyw": "x", "xzw": "x", "yzw": "y", "xyzw": "x"})
    names = ", ".join(FIXTURES + EXTRA_FIXTURES)
    raise QuasiChoiceError(f"unknown fixture {name!r}; choose from {names}")


def fixture_families(name: str) -> dict[str, BallotFamily]:
    """Ballot families exhibited for a fixture, keyed ``liberal``/``democratic``."""
    if name == "ex-lib2-dem3":
        lin = "x>y x>z y>z"
        two = "x>z y>z z>y"
        return {"liberal": _fam(XYZ, [_edges(lin), _edges(two)]),
                "democratic": _fam(XYZ, [_edges(lin), _edges(two), []])}
    if name == "ex-dem5-lib10":
        g = cnk_grand(5)
        return {"democratic": _fam(g, [[(str(i), "0")] for i in range(1, 6)])}
    if name == "ex-dem-eq-lib":
        dem = ["x>y x>z x>w y>w", "x>w y>z y>w", "w>y w>z"]
        lib = ["x>y x>z x>w y>z y>w z>w",
               "x>z x>w y>w w>z z>y",
               "x>w w>z y>z y>w w>y"]
        return {"democratic": _fam(XYZW, [_edges(v) for v in dem]),
                "liberal": _fam(XYZW, [_edges(v) for v in lib])}
    if name == "ex-dem-eq-lib-xyw":
        return {"democratic": fixture_families("ex-dem-eq-lib")["democratic"]}
    if name in FIXTURES:
        return {}
    raise QuasiChoiceError(f"unknown fixture {name!r}")


# ---------------------------------------------------------------------------
# random instances

def random_relation(grand: GrandSet, rng: np.random.Generator, density: float | None = None) -> Relation:
    n = grand.n
    if density is None:
        density = rng.uniform(0.05, 0.6)
    arcs = rng.random((n, n)) < density
    return Relation(grand, tuple(int(sum(1 << q for q in range(n) if arcs[q, p])) for p in range(n)))


def random_linear_order(grand: GrandSet, rng: np.random.Generator) -> Relation:
    return Relation.linear_order(grand, [int(i) for i in rng.permutation(grand.n)])


def random_alpha(n: int, seed: int, decisive: bool = False) -> QuasiChoice:
    """Union of the ballots of 1 to 5 random voters; satisfies Axiom alpha.

    With ``decisive`` one of the voters is a random strict linear order, so
    every nonempty menu selects something.
    """
    grand = GrandSet(n)
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, 6))
    rels = [random_relation(grand, rng) for _ in range(r)]
    if decisive:
        rels[0] = random_linear_order(grand, rng)
    table = np.zeros(grand.size, dtype=np.int64)
    for rel in rels:
        table |= ballot_from_voter(rel).table
    return QuasiChoice(grand, table)


def random_quasichoice(n: int, seed: int) -> QuasiChoice:
    """Each ``c(A)`` an independent uniform random subset of ``A``."""
    grand = GrandSet(n)
    rng = np.random.default_rng(seed)
    menus = np.arange(grand.size, dtype=np.int64)
    noise = rng.integers(0, grand.size, size=grand.size, dtype=np.int64)
    return QuasiChoice(grand, noise & menus)


def random_ballot(n: int, seed: int) -> Ballot:
    grand = GrandSet(n)
    return ballot_from_voter(random_relation(grand, np.random.default_rng(seed)))


def all_quasichoices(n: int):
    """Every quasi-choice on ``n`` items (feasible for ``n <= 3``)."""
    grand = GrandSet(n)
    sizes = [1 << popcount(a) for a in range(1, grand.size)]
    total = math.prod(sizes)
    menus = list(range(1, grand.size))
    subs = [[s for s in range(a + 1) if s & ~a == 0] for a in menus]
    for idx in range(total):
        table = [0]
        for a, opts in zip(menus, subs):
            idx, j = divmod(idx, len(opts))
            table.append(opts[j])
        yield QuasiChoice(grand, table)


def describe_items(grand: GrandSet, menu: int) -> list[str]:
    return [grand.names[i] for i in iter_items(menu)]
