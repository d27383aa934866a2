import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from quasichoice import (GrandSet, QuasiChoice, check_alpha, classify, fixture,
                         fixture_families, gen_cnk, verify)
from quasichoice.core import GrandSetTooLarge
from quasichoice.generators import all_quasichoices, random_alpha
from quasichoice.solvers import (DemLimits, acceptance_antichains, asymptotic_ratio,
                                 bounds_report, dem_number, lib_number, oracle_dem, oracle_lib,
                                 product_universe, relation_universe, sperner_bound)


def menus(g, *names):
    return tuple(sorted(g.menu(s) for s in names))


def test_antichains_ex_lib2_dem3():
    c = fixture("ex-lib2-dem3")
    g = c.grand
    ax, ay, az = acceptance_antichains(c)
    assert ax.maximal_menus == (g.full,)
    assert tuple(sorted(ay.maximal_menus)) == menus(g, "xy", "yz")
    assert az.maximal_menus == (g.menu("z"),)


def test_antichains_cnk_and_identity():
    a0 = acceptance_antichains(gen_cnk(5, 3))[0]
    assert len(a0) == 10
    assert all(bin(m).count("1") == 3 and m & 1 for m in a0.maximal_menus)
    g = GrandSet(4)
    for a in acceptance_antichains(QuasiChoice.identity(g)):
        assert a.maximal_menus == (g.full,)
    assert all(len(a) == 0 for a in acceptance_antichains(QuasiChoice.null(g)))


def test_antichains_are_sperner_and_cover():
    for seed in range(100):
        c = random_alpha(4, seed)
        for a in acceptance_antichains(c):
            ms = a.maximal_menus
            for u, v in combinations(ms, 2):
                assert u & ~v and v & ~u
            for b in range(c.grand.size):
                if c[b] >> a.item & 1:
                    assert any(b & ~m == 0 for m in ms)


def test_lib_examples():
    assert lib_number(fixture("ex-lib2-dem3")) == 2
    assert lib_number(fixture("ex-dem-eq-lib")) == 3
    assert lib_number(fixture("ex-dem5-lib10")) == 10
    assert lib_number(fixture("watson")) == 1
    assert math.isinf(lib_number(fixture("nonliberal")))
    assert lib_number(QuasiChoice.null(GrandSet(3))) == 1


def test_lib_cnk_binomial():
    for n in range(1, 7):
        for k in range(1, n + 2):
            assert lib_number(gen_cnk(n, k)) == math.comb(n, k - 1)


def test_dem_examples():
    r = dem_number(fixture("ex-lib2-dem3"))
    assert r.exact and r.value == 3 and str(r) == "3"
    assert verify(fixture("ex-lib2-dem3"), r.family, "1/2")
    assert dem_number(QuasiChoice.identity(GrandSet(4))).value == 1
    r = dem_number(fixture("nonliberal"))
    assert r.kind == "infinite" and str(r) == "∞"


def test_dem_infinite_even_beyond_search_limit():
    g = GrandSet(6)
    c = QuasiChoice.from_mapping(g, {g.menu("01"): g.menu("0")}, default="identity")
    assert dem_number(c).kind == "infinite"
    with pytest.raises(GrandSetTooLarge):
        dem_number(fixture("ex-dem5-lib10"))


def test_dem_ex_dem_eq_lib_printed_table():
    # the printed table needs five voters; see README
    c = fixture("ex-dem-eq-lib")
    r = dem_number(c)
    assert r.exact and r.value == 5
    assert verify(c, r.family, "1/2")
    fams = fixture_families("ex-dem-eq-lib")
    assert verify(c, fams["liberal"], 0)
    assert not verify(c, fams["democratic"], "1/2")


def test_dem_ex_dem_eq_lib_xyw_variant():
    c = fixture("ex-dem-eq-lib-xyw")
    assert dem_number(c).value == 3
    assert lib_number(c) == 3
    assert verify(c, fixture_families("ex-dem-eq-lib-xyw")["democratic"], "1/2")


def _milp_dem(c, kmax):
    scipy_opt = pytest.importorskip("scipy.optimize")
    tables, _ = product_universe(c.n)
    pairs = [(a, x) for a in range(1, c.grand.size) for x in range(c.n) if a >> x & 1]
    m = np.stack([(tables[:, a] >> x) & 1 for a, x in pairs]).astype(float)
    want = np.array([c[a] >> x & 1 for a, x in pairs])
    for k in range(1, kmax + 1):
        lo = np.where(want == 1, k // 2 + 1, -np.inf)
        hi = np.where(want == 1, np.inf, k // 2)
        cons = [scipy_opt.LinearConstraint(m, lo, hi),
                scipy_opt.LinearConstraint(np.ones((1, m.shape[1])), k, k)]
        res = scipy_opt.milp(np.zeros(m.shape[1]), constraints=cons,
                             integrality=np.ones(m.shape[1]), bounds=scipy_opt.Bounds(0, k))
        if res.status == 0:
            return k
    return None


def test_dem_matches_integer_program():
    for name in ("ex-dem-eq-lib", "ex-dem-eq-lib-xyw"):
        c = fixture(name)
        assert _milp_dem(c, 6) == dem_number(c).value


def test_interval_on_node_cap():
    r = dem_number(fixture("ex-dem-eq-lib"), DemLimits(node_cap=3))
    assert r.kind == "interval" and r.lo <= r.hi == 6
    with pytest.raises(ValueError):
        r.value
    assert verify(fixture("ex-dem-eq-lib"), r.family, "1/2")


def test_oracle_examples():
    c = fixture("ex-lib2-dem3")
    assert oracle_lib(c) == 2
    assert oracle_dem(c, kmax=3) == 3
    assert oracle_dem(c, kmax=2) is None
    assert oracle_lib(fixture("nonliberal")) is None
    ident = QuasiChoice.identity(GrandSet(3))
    assert oracle_lib(ident) == 1 and oracle_dem(ident) == 1
    with pytest.raises(GrandSetTooLarge):
        oracle_lib(QuasiChoice.identity(GrandSet(4)))


def test_product_universe_equals_relation_universe():
    for n in (2, 3):
        tables, coords = product_universe(n)
        assert len(coords) == (2 ** (n - 1) + 1) ** n
        assert np.array_equal(tables, relation_universe(n))
    assert len(product_universe(4)[1]) == 6561


def test_lib_and_dem_match_oracles_exhaustive_n2():
    for c in all_quasichoices(2):
        if check_alpha(c) is not None:
            continue
        assert lib_number(c) == oracle_lib(c)
        assert dem_number(c).value == oracle_dem(c, kmax=2 * lib_number(c))


def test_lib_and_dem_match_oracles_random_n3():
    for seed in range(100):
        c = random_alpha(3, seed)
        lib = lib_number(c)
        assert lib == oracle_lib(c)
        assert dem_number(c).value == oracle_dem(c, kmax=2 * lib)


def test_one_iff_rationalizable():
    for seed in range(150):
        c = random_alpha(2 + seed % 3, seed)
        free = classify(c).rationalizable
        assert (lib_number(c) == 1) == free == (dem_number(c).value == 1)


def test_sperner_bound_and_tightness():
    assert sperner_bound(4) == 3
    assert lib_number(gen_cnk(3, 2)) == 3
    for n in range(3, 8):
        m = n - 1
        assert lib_number(gen_cnk(m, m // 2 + 1)) == sperner_bound(n)


def test_asymptotic_ratio():
    vals = [asymptotic_ratio(n) for n in range(10, 65)]
    assert all(0.3 <= v <= 0.5 for v in vals)
    assert abs(vals[-1] - math.sqrt(2 / math.pi) / 2) < 0.02
    # exact evaluation, no float overflow for large n
    assert 0.39 < asymptotic_ratio(2000) < 0.4


def test_bounds_report():
    rep = bounds_report(gen_cnk(3, 2))
    assert rep.sperner_bound == 3 and rep.lib == 3 and rep.lib_within_sperner
    assert rep.dem_le_twice_lib and rep.lib_le_pow_dem
    c = fixture("ex-dem5-lib10")
    rep = bounds_report(c)
    assert rep.lib == 10 and rep.dem.kind == "interval"
    assert (rep.dem.lo, rep.dem.hi) == (5, 20)
    fam = fixture_families("ex-dem5-lib10")["democratic"]
    rep = bounds_report(c, dem_family=fam)
    assert rep.dem.exact and rep.dem.value == 5
    assert rep.dem_le_twice_lib and rep.lib_le_pow_dem
    d = rep.as_dict()
    assert d["lib"] == 10 and d["dem"]["kind"] == "exact"
    rep = bounds_report(fixture("nonliberal"))
    assert rep.as_dict()["lib_infinite"] and rep.dem.kind == "infinite"


def test_asymptotic_ratio_is_exact_fraction_based():
    n = 20
    exact = Fraction(math.comb(n - 1, (n - 1) // 2) ** 2 * n, 4 ** n)
    assert asymptotic_ratio(n) == math.sqrt(exact)
