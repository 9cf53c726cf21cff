import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz2 import mcg
from hurwitz2 import surface as S

J = mcg.SYMPLECTIC_FORM
mcg_letters = st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4, 5, -5])
mcg_words = st.lists(mcg_letters, max_size=8).map(tuple)


def test_presentation_relations_all_hold():
    report = mcg.validate_presentation()
    assert len(report) == 19
    failed = [name for name, ok in report if not ok]
    assert failed == []
    mcg.assert_presentation()


@pytest.mark.parametrize("i", range(1, 6))
def test_twist_preserves_relator_class(i):
    aut = mcg.twist_action(i)
    assert S.is_identity(aut.apply(S.RELATOR))


@pytest.mark.parametrize("i", range(1, 6))
def test_twist_homology_is_transvection(i):
    M = mcg.twist_action(i).homology()
    assert np.array_equal(M, mcg.transvection(mcg.chain_class(i)))
    assert np.array_equal(M.T @ J @ M, J) or np.array_equal(M @ J @ M.T, J)


@pytest.mark.parametrize("i", range(1, 6))
def test_twist_fixes_its_curve(i):
    c = mcg.chain_curve(i)
    assert S.conjugator(mcg.push_curve(c, (i,)), c) is not None


def test_separating_curve_fixed_by_sigma_only():
    c = mcg.SEPARATING_CURVE
    assert S.is_identity(c) is False
    assert S.abelianize(c) == (0, 0, 0, 0)
    assert S.conjugator(mcg.push_curve(c, mcg.SIGMA), c) is not None
    assert S.conjugator(mcg.push_curve(c, (3,)), c) is None


def test_realize_basics():
    ident = mcg.MCGAutomorphism.identity()
    assert mcg.realize(()) == ident
    assert mcg.realize((1, -1)) == ident
    assert np.array_equal(mcg.realize(mcg.I).homology(), -np.eye(4, dtype=np.int64))


def test_commuting_twists_up_to_inner():
    assert mcg.mcg_equal((1, 3), (3, 1))


def test_equality_examples():
    assert mcg.mcg_equal((1, 2, 3, 4, 5) * 6, ())
    for i in range(1, 6):
        assert mcg.mcg_equal(mcg.I + (i,), (i,) + mcg.I)
    assert not mcg.mcg_equal((1,), (2,))


def test_negative_controls():
    assert not mcg.is_trivial(mcg.SIGMA)
    assert not mcg.is_trivial(mcg.I)
    assert not mcg.mcg_equal((1,), (3,))
    # same S6 image and homology as the identity, yet non-trivial
    assert not mcg.is_trivial(mcg.SIGMA + mcg.SIGMA)


def test_hyperelliptic_action_is_not_inner():
    images = mcg.realize(mcg.I).images
    assert S.inner_witness(images) is None


def test_s6_images():
    assert mcg.format_permutation(mcg.s6_image((1,))) == "(1 2)"
    assert mcg.s6_image(mcg.I) == tuple(range(6))
    assert mcg.s6_image(mcg.SIGMA) == tuple(range(6))


def test_sp4_images():
    eye = np.eye(4, dtype=np.int64)
    assert np.array_equal(mcg.sp4_image(()), eye)
    assert np.array_equal(mcg.sp4_image(mcg.SIGMA), eye)
    assert np.array_equal(mcg.sp4_image(mcg.I), -eye)


def test_named_conjugations():
    rho_inv = mcg.inverse(mcg.RHO)
    for i in range(1, 6):
        assert mcg.mcg_equal(rho_inv + (i,) + mcg.RHO, (6 - i,))
    phi_inv = mcg.inverse(mcg.PHI)
    for i, j in ((1, 4), (2, 5), (4, 1), (5, 2)):
        assert mcg.mcg_equal(phi_inv + (i,) + mcg.PHI, (j,))
    assert mcg.mcg_equal(mcg.RHO + mcg.RHO, ())


def test_conjugation_by_phi_is_not_the_reflection():
    phi_inv = mcg.inverse(mcg.PHI)
    assert not mcg.mcg_equal(phi_inv + (1,) + mcg.PHI, (5,))
    assert not mcg.mcg_equal(phi_inv + (2,) + mcg.PHI, (4,))


@pytest.mark.parametrize("i", range(1, 6))
def test_positive_inverse(i):
    w = mcg.positive_inverse(i)
    assert len(w) == 19 and all(x > 0 for x in w)
    assert mcg.mcg_equal((i,) + w, ())


def test_positive_inverse_of_z1_is_suffix_of_I_squared():
    assert mcg.positive_inverse(1) == (mcg.I + mcg.I)[1:]


def test_positive_form():
    assert mcg.positive_form((1, 2, 3)) == (1, 2, 3)
    assert mcg.positive_form((-1,)) == mcg.positive_inverse(1)
    w = (2, -3, 4, -1)
    assert len(mcg.positive_form(w)) == 2 + 19 * 2
    assert mcg.mcg_equal(mcg.positive_form(w), w)


def test_parse_and_format():
    assert mcg.parse_mcg_word("z1 z2' sigma") == (1, -2) + mcg.SIGMA
    assert mcg.parse_mcg_word("(z1 z2)^6") == mcg.SIGMA
    assert mcg.parse_mcg_word("I'") == mcg.inverse(mcg.I)
    assert mcg.format_mcg_word((1, -5)) == "z1 z5'"
    for bad in ("z6", "(z1", "z1)", "q"):
        with pytest.raises(mcg.ParseError):
            mcg.parse_mcg_word(bad)


@settings(max_examples=40, deadline=None)
@given(mcg_words, mcg_words)
def test_realize_is_homomorphism(u, v):
    composed = mcg.realize(u).then(mcg.realize(v))
    back = composed.then(mcg.realize(mcg.inverse(u + v)))
    assert S.inner_witness(back.images) is not None
    direct = mcg.realize(u + v)
    assert all(S.is_identity(x + S.inverse(y)) for x, y in zip(composed.images, direct.images))


@settings(max_examples=60, deadline=None)
@given(mcg_words)
def test_sp4_matches_abelianized_realize(w):
    assert np.array_equal(mcg.sp4_image(w), mcg.realize(w).homology())


@settings(max_examples=40, deadline=None)
@given(mcg_words, mcg_words)
def test_filters_are_sound(u, v):
    if mcg.mcg_equal(u, v):
        assert mcg.s6_image(u) == mcg.s6_image(v)
        assert np.array_equal(mcg.sp4_image(u), mcg.sp4_image(v))


@settings(max_examples=30, deadline=None)
@given(mcg_words, mcg_words)
def test_equality_is_symmetric_and_reflexive(u, v):
    assert mcg.mcg_equal(u, u)
    assert mcg.mcg_equal(u, v) == mcg.mcg_equal(v, u)
