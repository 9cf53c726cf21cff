import pytest

from hurwitz2 import braid
from hurwitz2 import factorization as Fz
from hurwitz2 import mcg


def test_parse_format():
    w = braid.parse_braid_word("x1 x2' x5")
    assert w == (1, -2, 5)
    assert braid.format_braid_word(w) == "x1 x2' x5"
    with pytest.raises(mcg.ParseError):
        braid.parse_braid_word("x6")


@pytest.mark.parametrize("i", range(1, 5))
def test_braid_relation_lifts(i):
    assert braid.braid_equal_mod_center((i, i + 1, i), (i + 1, i, i + 1))


def test_far_commutation_and_sphere_relation_lift():
    for i in range(1, 6):
        for j in range(i + 2, 6):
            assert braid.braid_equal_mod_center((i, j), (j, i))
    assert braid.braid_equal_mod_center(braid.SPHERE_RELATION, ())
    # the lift of the sphere relation is I itself, not 1
    assert mcg.mcg_equal(braid.lift(braid.SPHERE_RELATION), mcg.I)


def test_distinct_generators_stay_distinct():
    assert not braid.braid_equal_mod_center((1,), (2,))
    assert not braid.braid_equal_mod_center((1, 2), (2, 1))


def test_lift_rejects_bad_letters():
    with pytest.raises(ValueError):
        braid.lift((6,))


def test_lift_factorization_checks_product():
    tab = braid.builtin_braid_factorizations()
    assert len(braid.lift_factorization(tab["B0_nodal"])) == 20
    assert len(braid.lift_factorization(tab["B1"])) == 30
    with pytest.raises(ValueError):
        braid.lift_factorization(tab["B2_fiber"][:3])
    assert len(braid.lift_factorization(tab["B2_fiber"][:3], check=False)) == 3


def test_half_twist_lifts_to_chain_twist():
    for i in range(1, 6):
        F = braid.lift_factorization([braid.HalfTwist.of(i)], check=False)
        assert Fz.factor_equal(F[0], Fz.TwistFactor.chain(i))


def test_lemma5():
    rep = braid.verify_lemma5()
    assert rep.passed, rep.detail
    assert len(rep.source) == len(rep.target) == 20


def test_lemma11():
    reports = braid.verify_lemma11()
    assert [r.name for r in reports][-2:] == ["lemma11_delta", "lemma11_assembly"]
    for r in reports:
        assert r.passed, (r.name, r.detail)


def test_node_counts():
    tab = braid.builtin_braid_factorizations()
    for key in ("B2_nodes", "B2_nodes_bracket", "B2_nodes_flat", "B2_nodes_reduced"):
        assert len(tab[key]) == 18
    assert len(tab["B2_fiber"]) == 10


def test_assembly_matches_w2():
    A = braid.assemble_b2()
    assert len(A) == 29
    assert Fz.factorizations_equal(A, Fz.W2())
    assert braid.delta_lifts_to_sigma()
