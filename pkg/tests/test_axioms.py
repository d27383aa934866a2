import numpy as np
import pytest

from quasichoice import (GrandSet, QuasiChoice, Rationality, Relation, ballot_from_voter,
                         check_alpha, check_gamma, classify, fixture)
from quasichoice.axioms import AxiomWitness
from quasichoice.core import GrandSetTooLarge
from quasichoice.generators import (all_quasichoices, random_alpha, random_quasichoice,
                                    random_relation)
from oracles import naive_alpha, naive_gamma

XY = GrandSet(2, ("x", "y"))


def test_alpha_examples():
    assert check_alpha(fixture("watson")) is None
    assert check_alpha(QuasiChoice.identity(GrandSet(4))) is None
    c = fixture("nonliberal")
    g = c.grand
    assert check_alpha(c) == AxiomWitness("alpha", g.menu("xz"), g.menu("xyz"), g.index("z"))


def test_gamma_examples():
    assert check_gamma(QuasiChoice.null(GrandSet(3))) is None
    c = fixture("ex-lib2-dem3")
    g = c.grand
    w = check_gamma(c)
    assert w == AxiomWitness("gamma", g.menu("xy"), g.menu("yz"), g.index("y"))
    assert "y is chosen from {x,y} and from {y,z} but not from {x,y,z}" == w.describe(g)


def test_gamma_guard():
    c = QuasiChoice.identity(GrandSet(13))
    with pytest.raises(GrandSetTooLarge):
        check_gamma(c)
    # classify falls back to the table-equality test
    assert classify(c).rationalizable


def test_ballots_satisfy_gamma():
    for seed in range(200):
        rng = np.random.default_rng(seed)
        rel = random_relation(GrandSet(4), rng)
        assert check_gamma(ballot_from_voter(rel).choice) is None


def test_classify_pairwise_exclusive():
    c = QuasiChoice.from_mapping(XY, {"x": "x", "y": "y", "xy": ""})
    cls = classify(c)
    assert cls.kind is Rationality.FREELY
    assert set(cls.relation.edges()) == {(0, 1), (1, 0)}


def test_classify_identity_and_fixture():
    cls = classify(QuasiChoice.identity(GrandSet(3)))
    assert cls.kind is Rationality.ASYMMETRICALLY
    assert cls.relation == Relation.empty(GrandSet(3))
    cls = classify(fixture("ex-lib2-dem3"))
    assert cls.kind is Rationality.NOT_RATIONALIZABLE
    assert cls.witness.axiom == "gamma"


def test_single_contraction_alpha_equals_full_definition():
    for c in all_quasichoices(2):
        assert (check_alpha(c) is None) == naive_alpha(c)
    for c in all_quasichoices(3):
        assert (check_alpha(c) is None) == naive_alpha(c)
    for seed in range(300):
        for c in (random_quasichoice(4, seed), random_alpha(4, seed)):
            assert (check_alpha(c) is None) == naive_alpha(c)


def test_gamma_matches_naive():
    for c in all_quasichoices(2):
        assert (check_gamma(c) is None) == naive_gamma(c)
    for c in all_quasichoices(3):
        assert (check_gamma(c) is None) == naive_gamma(c)


def test_alpha_witness_invariant():
    for seed in range(200):
        c = random_quasichoice(4, seed)
        w = check_alpha(c)
        if w is None:
            continue
        x = 1 << w.item
        assert w.menu_a & x and w.menu_a & ~w.menu_b == 0
        assert bin(w.menu_b & ~w.menu_a).count("1") == 1
        assert c[w.menu_b] & x and not c[w.menu_a] & x


def test_classify_iff_alpha_and_gamma():
    cases = list(all_quasichoices(3)) + [random_alpha(4, s) for s in range(200)]
    for c in cases:
        free = classify(c).rationalizable
        assert free == (check_alpha(c) is None and check_gamma(c) is None)


def test_random_voters_always_rationalizable():
    for seed in range(1000):
        rng = np.random.default_rng(seed)
        n = 2 + seed % 4
        rel = random_relation(GrandSet(n), rng)
        assert classify(ballot_from_voter(rel).choice).rationalizable


def test_decisive_and_free_implies_asymmetric():
    for c in all_quasichoices(3):
        cls = classify(c)
        if c.is_decisive() and cls.rationalizable:
            assert cls.kind is Rationality.ASYMMETRICALLY
    for seed in range(500):
        rng = np.random.default_rng(seed)
        g = GrandSet(3)
        rel = Relation.linear_order(g, [int(i) for i in rng.permutation(3)])
        cls = classify(ballot_from_voter(rel).choice)
        assert cls.kind is Rationality.ASYMMETRICALLY
        rel_edges = set(cls.relation.edges())
        assert all((p, q) not in rel_edges for q, p in rel_edges)
