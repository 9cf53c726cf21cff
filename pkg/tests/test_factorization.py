import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz2 import factorization as Fz
from hurwitz2 import mcg
from hurwitz2.factorization import TwistFactor

z = TwistFactor.chain


@st.composite
def factorizations(draw, max_len=8):
    n = draw(st.integers(2, max_len))
    out = []
    for _ in range(n):
        i = draw(st.integers(1, 5))
        conj = draw(st.lists(st.sampled_from([1, 2, 3, 4, 5, -1, -2, -3, -4, -5]), max_size=2))
        out.append(z(i).conjugate(tuple(conj)))
    return tuple(out)


def test_expand_examples():
    assert TwistFactor("z1").expand() == (1,)
    assert TwistFactor("z1", (2,)).expand() == (-2, 1, 2)
    for i in range(1, 6):
        for j in range(1, 6):
            assert mcg.mcg_equal(z(i).expand(), z(j).expand()) == (i == j)


def test_bad_base_rejected():
    with pytest.raises(ValueError):
        TwistFactor("z2")


def test_r_move_on_commuting_pair():
    F = (z(1), z(3))
    G = Fz.apply_move(F, 0, "R")
    assert Fz.factor_equal(G[0], z(3))
    assert mcg.mcg_equal(G[1].expand(), (1,))


def test_r_then_l_is_identity():
    F = (z(1), z(2), z(4))
    for i in range(2):
        back = Fz.apply_move(Fz.apply_move(F, i, "R"), i, "L")
        assert Fz.factorizations_equal(back, F)


def test_move_out_of_range():
    with pytest.raises(IndexError):
        Fz.apply_move((z(1), z(2)), 1, "R")
    with pytest.raises(ValueError):
        Fz.apply_move((z(1), z(2)), 0, "X")


def test_products():
    assert Fz.product(()) == ()
    assert mcg.mcg_equal(Fz.product(Fz.T_factorization()), mcg.I)
    for W in (Fz.W0(), Fz.W1(), Fz.W2()):
        assert mcg.is_trivial(Fz.product(W))
    assert [len(Fz.W0()), len(Fz.W1()), len(Fz.W2())] == [20, 30, 29]


def test_counts_and_transitivity():
    assert Fz.count_separating(Fz.W0()) == 0 and Fz.is_transitive(Fz.W0())
    assert Fz.count_separating(Fz.W2()) == 1 and Fz.W2()[0].separating
    assert not Fz.is_transitive(())
    assert not Fz.is_transitive((z(1), z(2), z(4)))
    assert Fz.is_transitive(tuple(z(i) for i in range(1, 6)))


def test_conjugate_and_fiber_sum():
    assert Fz.conjugate_factorization(Fz.W0(), ()) == Fz.W0()
    g = (2, -3)
    C = Fz.conjugate_factorization(Fz.W1(), g)
    assert mcg.is_trivial(Fz.product(C))
    F = (z(1), z(3), z(2))
    assert mcg.mcg_equal(Fz.product(Fz.conjugate_factorization(F, g)), mcg.inverse(g) + Fz.product(F) + g)
    assert Fz.fiber_sum(Fz.W0(), Fz.W0()) == Fz.W0() * 2
    assert mcg.is_trivial(Fz.product(Fz.fiber_sum(Fz.W0(), Fz.W1(), (3, 4))))


def test_factor_equal_recognizes_relations():
    assert Fz.factor_equal(TwistFactor("z1", (3,)), z(1))
    assert Fz.factor_equal(TwistFactor("z1", (2, 1)), z(2))
    # (z2)_{z3} = (z3)_{z2^-1}
    assert Fz.factor_equal(z(2).conjugate((3,)), z(3).conjugate((-2,)))
    assert not Fz.factor_equal(z(2).conjugate((3,)), z(3))
    assert Fz.factor_equal(TwistFactor("sigma", (1, 2, 4)), TwistFactor("sigma"))
    assert not Fz.factor_equal(TwistFactor("sigma", (3,)), TwistFactor("sigma"))
    assert not Fz.factor_equal(TwistFactor("sigma"), z(1))


def test_simplify_conjugator():
    assert Fz.simplify_conjugator("z1", (3, 1, -3)) == ()
    assert Fz.simplify_conjugator("z1", (4, 2)) == (2,)
    assert Fz.simplify_conjugator("sigma", (1, 2, 4, 5, 3)) == (3,)
    assert Fz.simplify_conjugator("z1", (2, 3, -2)) == (2, 3, -2)


def test_certificate_examples():
    F = (z(1), z(2), z(3))
    assert Fz.check_certificate(F, Fz.HurwitzCertificate(), F)
    G = Fz.apply_move(F, 1, "R")
    assert Fz.check_certificate(F, Fz.HurwitzCertificate([("R", 1)]), G)
    assert not Fz.check_certificate(F, Fz.HurwitzCertificate([("L", 1)]), G)
    assert not Fz.check_certificate(F, Fz.HurwitzCertificate(), F[:2])
    with pytest.raises(IndexError):
        Fz.replay(F, Fz.HurwitzCertificate([("R", 5)]))


def test_block_macro_modes():
    F = tuple(z(i) for i in (1, 3, 2, 4, 5))
    keep = Fz.replay(F, Fz.HurwitzCertificate([Fz.block(0, 2, 3, "KEEP")]))
    assert Fz.factorizations_equal(keep[3:], F[:2])
    conj = Fz.replay(F, Fz.HurwitzCertificate([Fz.block(0, 2, 3, "CONJ")]))
    assert Fz.factorizations_equal(conj[:3], F[2:])
    for out in (keep, conj):
        assert mcg.mcg_equal(Fz.product(out), Fz.product(F))


def test_certificate_inverse_and_shift():
    F = tuple(z(i) for i in (1, 2, 3, 4, 5, 2))
    cert = Fz.HurwitzCertificate([("R", 0), Fz.block(1, 2, 2, "KEEP"), ("L", 3)])
    G = Fz.replay(F, cert)
    assert Fz.check_certificate(G, cert.inverse(), F)
    H = (z(5),) + F
    assert Fz.factorizations_equal(Fz.replay(H, cert.shifted(1))[1:], G)


def test_factorization_file_round_trip():
    text = "# comment\nW0\nz1 @ z2 z3'\nsigma @\nT^2  # trailing\nz4 sigma\n"
    F = Fz.parse_factorization(text)
    assert len(F) == 20 + 1 + 1 + 20 + 2
    assert F[20] == TwistFactor("z1", (2, -3))
    again = Fz.parse_factorization(Fz.format_factorization(F))
    assert Fz.factorizations_equal(F, again)
    for bad in ("W9", "z2 @ z1", "z1 @ z9"):
        with pytest.raises(Fz.FormatError):
            Fz.parse_factorization(bad)


def test_certificate_file_round_trip():
    text = "# header\nR 1\nL 2\nMACRO BLOCK 1 2 1 KEEP\nMACRO INVERSE BLOCK 1 2 1 CONJ\n"
    cert = Fz.parse_certificate(text)
    assert list(cert.moves())[:2] == [("R", 0), ("L", 1)]
    again = Fz.parse_certificate(Fz.format_certificate(cert, "note"))
    assert list(again.moves()) == list(cert.moves())
    for bad in ("R 0", "Q 1", "MACRO NOPE 1", "L x"):
        with pytest.raises(Fz.FormatError):
            Fz.parse_certificate(bad)


def test_search_examples():
    F = (z(1), z(2), z(3), z(1))
    res = Fz.bounded_search(F, F)
    assert res.certificate is not None and len(res.certificate) == 0
    G = Fz.apply_move(F, 2, "R")
    res = Fz.bounded_search(F, G)
    assert len(res.certificate) == 1
    assert Fz.check_certificate(F, res.certificate, G)


def test_search_reports_failure():
    # different multisets of S6 transpositions cannot be equivalent
    F = (z(1), z(1))
    G = (z(2), z(2))
    res = Fz.bounded_search(F, G, max_depth=4)
    assert res.certificate is None
    assert res.exhausted


def test_search_is_deterministic():
    F = (z(1), z(2), z(3), z(4), z(2))
    G = Fz.apply_move(Fz.apply_move(F, 0, "R"), 3, "L")
    a = Fz.bounded_search(F, G).certificate
    b = Fz.bounded_search(F, G).certificate
    assert a.entries == b.entries


@settings(max_examples=40, deadline=None)
@given(factorizations(), st.data())
def test_moves_preserve_invariants(F, data):
    i = data.draw(st.integers(0, len(F) - 2))
    d = data.draw(st.sampled_from("LR"))
    G = Fz.apply_move(F, i, d)
    assert len(G) == len(F)
    assert mcg.free_reduce(Fz.product(G)) == mcg.free_reduce(Fz.product(F)) or mcg.mcg_equal(Fz.product(G), Fz.product(F))
    assert Fz.count_separating(G) == Fz.count_separating(F)
    assert Fz.is_transitive(G) == Fz.is_transitive(F)
    back = Fz.apply_move(G, i, "L" if d == "R" else "R")
    assert Fz.factorizations_equal(back, F)


@settings(max_examples=25, deadline=None)
@given(factorizations(max_len=6), st.lists(st.tuples(st.integers(0, 4), st.sampled_from("LR")), max_size=4))
def test_search_is_self_verifying(F, moves):
    G = F
    for i, d in moves:
        G = Fz.apply_move(G, i % (len(F) - 1), d)
    res = Fz.bounded_search(F, G, max_depth=6, max_nodes=50_000)
    if res.certificate is not None:
        assert Fz.check_certificate(F, res.certificate, G)


def test_s6_conjugacy_data_preserved():
    rng = random.Random(3)
    F = tuple(z(rng.randint(1, 5)) for _ in range(7))
    G = F
    for _ in range(20):
        G = Fz.apply_move(G, rng.randrange(6), rng.choice("LR"))

    def cycle_types(H):
        return sorted(sum(1 for k, v in enumerate(mcg.s6_image(f.expand())) if k != v) for f in H)

    assert cycle_types(F) == cycle_types(G)
