import math

import numpy as np
import pytest

from quasichoice import (QuasiChoiceError, check_alpha, check_gamma, fixture,
                         fixture_families, gen_cnk, verify)
from quasichoice.generators import (EXTRA_FIXTURES, FIXTURES, gen_cnk_democratic_family,
                                    gen_cnk_liberal_family, random_alpha, random_ballot,
                                    random_quasichoice)


def test_cnk_table():
    c = gen_cnk(3, 2)
    g = c.grand
    assert g.n == 4 and g.names == ("0", "1", "2", "3")
    assert c[g.menu("01")] == g.menu("01")
    assert c[g.menu("012")] == g.menu("12")
    assert c[g.menu("123")] == g.menu("123")
    assert check_alpha(c) is None


def test_cnk_families():
    for n in range(1, 7):
        for k in range(1, n + 2):
            c = gen_cnk(n, k)
            lib = gen_cnk_liberal_family(n, k)
            assert len(lib) == math.comb(n, k - 1)
            assert verify(c, lib, 0)
            dem = gen_cnk_democratic_family(n, k)
            assert len(dem) == (2 * k - 1 if 2 * k > n else 2 * (n - k))
            assert verify(c, dem, "1/2")


def test_cnk_parameter_validation():
    for n, k in ((0, 1), (3, 0), (3, 5)):
        with pytest.raises(QuasiChoiceError):
            gen_cnk(n, k)


def test_fixture_ex_dem5_lib10_is_c53():
    assert fixture("ex-dem5-lib10") == gen_cnk(5, 3)


def test_fixture_families_verify():
    c = fixture("ex-lib2-dem3")
    fams = fixture_families("ex-lib2-dem3")
    assert len(fams["liberal"]) == 2 and verify(c, fams["liberal"], 0)
    assert len(fams["democratic"]) == 3 and verify(c, fams["democratic"], "1/2")
    c = fixture("ex-dem5-lib10")
    assert verify(c, fixture_families("ex-dem5-lib10")["democratic"], "1/2")
    assert fixture_families("watson") == {}


def test_watson_table():
    c = fixture("watson")
    g = c.grand
    assert c[g.full] == g.menu("xy")
    assert c[g.menu("yz")] == g.menu("y")
    assert c.is_decisive()


def test_all_fixtures_load():
    for name in FIXTURES + EXTRA_FIXTURES:
        assert fixture(name).n in (3, 4, 6)
    with pytest.raises(QuasiChoiceError):
        fixture("nope")


def test_random_alpha_always_alpha_and_deterministic():
    for seed in range(1000):
        c = random_alpha(2 + seed % 4, seed)
        assert check_alpha(c) is None
    assert random_alpha(4, 7) == random_alpha(4, 7)
    assert random_alpha(4, 7, decisive=True).is_decisive()


def test_random_alpha_coverage_n4():
    decisive = indecisive = gamma_fail = 0
    for seed in range(1000):
        c = random_alpha(4, seed)
        if c.is_decisive():
            decisive += 1
        else:
            indecisive += 1
        gamma_fail += check_gamma(c) is not None
    assert decisive and indecisive and gamma_fail


def test_random_quasichoice_and_ballot():
    c = random_quasichoice(4, 3)
    assert np.all(c.table & ~np.arange(16) == 0)
    assert random_ballot(3, 1) == random_ballot(3, 1)
    assert check_gamma(random_ballot(4, 2).choice) is None
