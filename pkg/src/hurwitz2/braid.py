"""Braid monodromy factorizations in B6(S^2) and their lift to the mapping class group.

Braid words use x1..x5 (signed ints, as for z1..z5).  The lift sends x_i to
z_i, which is a homomorphism from B6(S^2) to Map2 modulo the hyperelliptic
involution I.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import mcg
from .factorization import (
    CHAIN_CONJUGATOR,
    Factorization,
    HurwitzCertificate,
    SearchResult,
    TwistFactor,
    W2,
    bounded_search,
    check_certificate,
    factorizations_equal,
    product,
)

BraidWord = Tuple[int, ...]
BRAID_NAMES = {i: f"x{i}" for i in range(1, 6)}
_TOKENS = {**{v: k for k, v in BRAID_NAMES.items()}, **{v + "'": -k for k, v in BRAID_NAMES.items()}}

SPHERE_RELATION: BraidWord = (1, 2, 3, 4, 5, 5, 4, 3, 2, 1)
DELTA: BraidWord = (1, 2) * 3 + (4, 5) * 3


def parse_braid_word(text: str) -> BraidWord:
    out = []
    for tok in text.split():
        if tok not in _TOKENS:
            raise mcg.ParseError(f"unknown braid letter {tok!r}")
        out.append(_TOKENS[tok])
    return tuple(out)


def format_braid_word(w: Sequence[int]) -> str:
    return " ".join(BRAID_NAMES[abs(x)] + ("'" if x < 0 else "") for x in w)


def lift(w: Sequence[int]) -> mcg.MCGWord:
    if any(not 1 <= abs(x) <= 5 for x in w):
        raise ValueError("braid letters are x1..x5")
    return tuple(w)


def braid_equal_mod_center(u: Sequence[int], v: Sequence[int]) -> bool:
    w = lift(u) + mcg.inverse(lift(v))
    return mcg.is_trivial(w) or mcg.mcg_equal(w, mcg.I)


@dataclass(frozen=True)
class HalfTwist:
    """(x_1)_{conjugator}, a positive half-twist."""

    conjugator: BraidWord = ()

    @classmethod
    def of(cls, i: int, conj: Sequence[int] = ()) -> "HalfTwist":
        return cls(CHAIN_CONJUGATOR[i] + tuple(conj))


BraidFactorization = Tuple[HalfTwist, ...]


def lift_factorization(B: Sequence[HalfTwist], check: bool = True) -> Factorization:
    """Factorwise lift; ``check`` asserts a full monodromy (product 1 or I)."""
    F = tuple(TwistFactor("z1", lift(h.conjugator)) for h in B)
    if not check:
        return F
    p = product(F)
    if not (mcg.is_trivial(p) or mcg.mcg_equal(p, mcg.I)):
        raise ValueError("lifted product is neither 1 nor I")
    return F


def _word(letters: Sequence[int], conj: Sequence[int] = ()) -> List[HalfTwist]:
    return [HalfTwist.of(i, conj) for i in letters]


def _squares(first: int, count: int) -> List[HalfTwist]:
    """(x_f)^2 (x_{f+1})_{x_f}^2 (x_{f+2})_{x_{f+1} x_f}^2 ... (count terms)."""
    out: List[HalfTwist] = []
    for t in range(count):
        conj = tuple(range(first + t - 1, first - 1, -1))
        out += [HalfTwist.of(first + t, conj)] * 2
    return out


def _conj_all(B: Sequence[HalfTwist], c: Sequence[int]) -> List[HalfTwist]:
    return [HalfTwist(h.conjugator + tuple(c)) for h in B]


def builtin_braid_factorizations() -> Dict[str, object]:
    T = (1, 2, 3, 4, 5, 5, 4, 3, 2, 1)
    nodes = _squares(3, 3) + _conj_all(_squares(2, 3), (5, 4, 3)) + _conj_all(_squares(1, 3), (4, 3, 2, 5, 4, 3))
    bracket = _word((3, 4, 5, 5, 4, 3)) + _word((2, 3, 4, 4, 3, 2), (5, 4, 3)) + _word((1, 2, 3, 3, 2, 1), (4, 3, 2, 5, 4, 3))
    flat = (3, 4, 5, 2, 3, 4, 1, 2, 3, 3, 2, 1, 4, 3, 2, 5, 4, 3)
    return {
        "B0_nodal": tuple(_squares(1, 5) * 2),
        "B0_tangency": tuple(_word(T * 2)),
        "B1": tuple(_word((1, 2, 3, 4, 5) * 6)),
        "B2_nodes": tuple(nodes),
        "B2_nodes_bracket": tuple(bracket),
        "B2_nodes_flat": tuple(_word(flat)),
        "B2_nodes_reduced": tuple(_word(mcg.PHI * 2)),
        "B2_fiber": tuple(_word(T)),
        "delta": DELTA,
    }


@dataclass
class LemmaReport:
    name: str
    source: Factorization
    target: Factorization
    certificate: HurwitzCertificate | None
    passed: bool
    exhausted: bool = False
    detail: str = ""


def _certify(name, src, dst, cert, max_depth, max_nodes) -> LemmaReport:
    if cert is None:
        res: SearchResult = bounded_search(src, dst, max_depth=max_depth, max_nodes=max_nodes)
        if res.certificate is None:
            why = "search exhausted" if res.exhausted else "search bound reached"
            return LemmaReport(name, src, dst, None, False, True, why)
        cert = res.certificate
    ok = check_certificate(src, cert, dst)
    return LemmaReport(name, src, dst, cert, ok, False, "" if ok else "certificate does not replay to target")


def verify_lemma5(cert: HurwitzCertificate | None = None, max_depth: int = 4, max_nodes: int = 50_000) -> LemmaReport:
    """B0 squares form ~ (x1 ... x5 x5 ... x1)^2 after lifting."""
    tab = builtin_braid_factorizations()
    src = lift_factorization(tab["B0_nodal"])
    dst = lift_factorization(tab["B0_tangency"])
    return _certify("lemma5", src, dst, cert, max_depth, max_nodes)


LEMMA11_STEPS = (
    ("lemma11_bracket", "B2_nodes", "B2_nodes_bracket"),
    ("lemma11_flat", "B2_nodes_bracket", "B2_nodes_flat"),
    ("lemma11_reduced", "B2_nodes_flat", "B2_nodes_reduced"),
)


def verify_lemma11(
    certs: Sequence[HurwitzCertificate | None] = (None, None, None),
    max_depth: int = 4,
    max_nodes: int = 50_000,
) -> List[LemmaReport]:
    """The rewrites of the 18 node tangencies, then the assembly into W2."""
    tab = builtin_braid_factorizations()
    reports = []
    for (name, a, b), cert in zip(LEMMA11_STEPS, certs):
        src = lift_factorization(tab[a], check=False)
        dst = lift_factorization(tab[b], check=False)
        reports.append(_certify(name, src, dst, cert, max_depth, max_nodes))
    reports.append(LemmaReport("lemma11_delta", (), (), None, delta_lifts_to_sigma(), detail="lift(delta) = sigma mod I"))
    assembled = assemble_b2()
    ok = len(assembled) == 29 and factorizations_equal(assembled, W2()) and mcg.is_trivial(product(assembled))
    reports.append(LemmaReport("lemma11_assembly", assembled, W2(), None, ok, detail="sigma . lifted nodes . lifted fiber = W2"))
    return reports


def delta_lifts_to_sigma() -> bool:
    d = lift(DELTA)
    return mcg.mcg_equal(d, mcg.SIGMA) or mcg.mcg_equal(d + mcg.I, mcg.SIGMA)


def assemble_b2() -> Factorization:
    """Lifted B2 monodromy: sigma for delta, then the node and fiber tangencies."""
    tab = builtin_braid_factorizations()
    return (
        (TwistFactor("sigma"),)
        + lift_factorization(tab["B2_nodes_reduced"], check=False)
        + lift_factorization(tab["B2_fiber"], check=False)
    )
