"""The genus-2 mapping class group through its action on the surface group.

Curve model
-----------
The surface double covers the sphere with six branch points.  The orbifold
group <g1..g6 | g_i^2, g1...g6> contains the surface group as its even
subgroup, generated by e_i = g_i g6 (e6 = 1).  Identifying

    e1 = a1^-1,  e2 = b1,  e3 = a2^-1 b1 a1,  e4 = b2 a2^-1 b1 a1,  e5 = b2 b1 a1

turns the single remaining relation into [a1,b1][a2,b2].  The chain curve
c_i is the lift of the arc joining branch points i and i+1, i.e. the loop
e_i e_{i+1}^-1, and zeta_i is the lift of the Artin half-twist x_i
(g_i -> g_i g_{i+1} g_i, g_{i+1} -> g_i) acting on the even subgroup.  The
hyperelliptic involution acts by e_i -> e_i^-1.  The table is validated by
:func:`validate_presentation` and by the homology transvection check.

Conventions
-----------
Words act left to right: in ``u v`` the letters of ``u`` act first.  An
automorphism is stored as the images of a1, b1, a2, b2, and realizing
``u v`` substitutes the images of ``v`` into those of ``u``.  Homology
vectors are rows and ``sp4_image(u v) == sp4_image(u) @ sp4_image(v)``.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from . import surface as S

MCGWord = Tuple[int, ...]

# named elements, as words in the chain twists
T: MCGWord = (1, 2, 3, 4, 5, 5, 4, 3, 2, 1)
I: MCGWord = T
SIGMA: MCGWord = (1, 2) * 6
RHO: MCGWord = (1, 2, 3, 4, 5, 1, 2, 3, 4, 1, 2, 3, 1, 2, 1)
PHI: MCGWord = (3, 4, 5, 2, 3, 4, 1, 2, 3)
NAMED: Dict[str, MCGWord] = {"I": I, "T": T, "sigma": SIGMA, "rho": RHO, "Phi": PHI}

SYMPLECTIC_FORM = np.array(
    [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=np.int64
)

# surface-group words for the orbifold generators e1..e5
_E_TO_SURFACE = {1: (-1,), 2: (2,), 3: (-3, 2, 1), 4: (4, -3, 2, 1), 5: (4, 2, 1)}
_SURFACE_TO_E = {1: (-1,), 2: (2,), 3: (2, -1, -3), 4: (4, -3)}


def _sub(word: Sequence[int], table: Dict[int, Sequence[int]]) -> Tuple[int, ...]:
    out: List[int] = []
    for x in word:
        img = table[abs(x)]
        out.extend(img if x > 0 else S.inverse(img))
    return tuple(out)


def _artin_on_e(i: int, sign: int) -> Dict[int, Tuple[int, ...]]:
    t = {j: (j,) for j in range(1, 6)}
    if i <= 4:
        if sign > 0:
            t[i], t[i + 1] = (i, -(i + 1), i), (i,)
        else:
            t[i], t[i + 1] = (i + 1,), (i + 1, -i, i + 1)
    else:
        for j in range(1, 5):
            t[j] = (j, -5 * sign)
    return t


def _lift(e_table) -> Tuple[Tuple[int, ...], ...]:
    return tuple(S.dehn_reduce(_sub(_sub(_SURFACE_TO_E[j], e_table), _E_TO_SURFACE)) for j in (1, 2, 3, 4))


class PresentationError(AssertionError):
    """The twist table failed a defining relation of the mapping class group."""


@dataclass(frozen=True)
class MCGAutomorphism:
    """Images of (a1, b1, a2, b2) under a mapping class, Dehn-reduced."""

    images: Tuple[Tuple[int, ...], ...]

    @classmethod
    def identity(cls) -> "MCGAutomorphism":
        return cls(((1,), (2,), (3,), (4,)))

    def apply(self, word: Sequence[int]) -> Tuple[int, ...]:
        flat, off = _packed(self.images)
        return tuple(K.substitute_reduce(S._arr(word), flat, off, K.WINDOW_FLAG, K.WINDOW_COMP).tolist())

    def then(self, other: "MCGAutomorphism") -> "MCGAutomorphism":
        """The automorphism of ``self`` followed by ``other`` (word ``self other``)."""
        flat, off = _packed(other.images)
        return MCGAutomorphism(
            tuple(
                tuple(K.substitute_reduce(S._arr(y), flat, off, K.WINDOW_FLAG, K.WINDOW_COMP).tolist())
                for y in self.images
            )
        )

    def homology(self) -> np.ndarray:
        return np.array([S.abelianize(y) for y in self.images], dtype=np.int64)


def _packed(images):
    slots: List[Tuple[int, ...]] = [()] * 9
    for j, y in enumerate(images, start=1):
        slots[4 + j] = tuple(y)
        slots[4 - j] = S.inverse(y)
    return K.pack_images(slots)


@functools.lru_cache(maxsize=None)
def _letter_table() -> Dict[int, Tuple[MCGAutomorphism, np.ndarray, np.ndarray]]:
    table = {}
    inv = {j: (-j,) for j in range(1, 6)}
    hyper = _lift(inv)
    for i in range(1, 6):
        for sign in (1, -1):
            images = _lift(_artin_on_e(i, sign))
            aut = MCGAutomorphism(images)
            if int(np.trace(aut.homology())) != 4:
                # the other lift is the Dehn twist
                aut = aut.then(MCGAutomorphism(hyper))
            flat, off = _packed(aut.images)
            table[sign * i] = (aut, flat, off)
    return table


def twist_action(i: int) -> MCGAutomorphism:
    """Automorphism induced by the chain twist zeta_i (negative i: its inverse)."""
    if i == 0 or abs(i) > 5:
        raise ValueError(f"no chain twist {i}")
    return _letter_table()[i][0]


@functools.lru_cache(maxsize=None)
def chain_curve(i: int) -> Tuple[int, ...]:
    """Surface word of the i-th chain curve (lift of e_i e_{i+1}^-1)."""
    e = (i,) if i == 5 else (i, -(i + 1))
    return S.dehn_reduce(_sub(e, _E_TO_SURFACE))


@functools.lru_cache(maxsize=None)
def chain_class(i: int) -> np.ndarray:
    return np.array(S.abelianize(chain_curve(i)), dtype=np.int64)


# the separating curve bounding the torus that carries c1 and c2: lift of
# the square of a loop around branch points 1, 2, 3
SEPARATING_CURVE: Tuple[int, ...] = S.dehn_reduce(_sub((1, -2, 3, -1, 2, -3), _E_TO_SURFACE))


def transvection(c: np.ndarray) -> np.ndarray:
    """Row-vector matrix of x -> x + <x, c> c."""
    c = np.asarray(c, dtype=np.int64)
    return np.eye(4, dtype=np.int64) + np.outer(SYMPLECTIC_FORM @ c, c)


def realize(word: Sequence[int]) -> MCGAutomorphism:
    table = _letter_table()
    imgs = [S._arr(y) for y in ((1,), (2,), (3,), (4,))]
    for x in word:
        _, flat, off = table[x]
        imgs = [K.substitute_reduce(y, flat, off, K.WINDOW_FLAG, K.WINDOW_COMP) for y in imgs]
    return MCGAutomorphism(tuple(tuple(y.tolist()) for y in imgs))


def push_curve(curve: Sequence[int], word: Sequence[int]) -> Tuple[int, ...]:
    """Image of a closed curve under ``word``; returns a cyclically reduced core."""
    table = _letter_table()
    y = S._arr(curve)
    for x in word:
        _, flat, off = table[x]
        y = K.substitute_reduce(y, flat, off, K.WINDOW_FLAG, K.WINDOW_COMP)
    return S.cyclic_reduce(tuple(y.tolist()))[0]


def inverse(word: Sequence[int]) -> MCGWord:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> MCGWord:
    out: List[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def s6_image(word: Sequence[int]) -> Tuple[int, ...]:
    """Permutation of 0..5 (as an image tuple); zeta_i -> (i, i+1) in 1-based terms."""
    perm = list(range(6))
    for x in word:
        i = abs(x) - 1
        perm = [i + 1 if p == i else i if p == i + 1 else p for p in perm]
    return tuple(perm)


def format_permutation(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(6):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) or "()"


@functools.lru_cache(maxsize=None)
def _letter_matrix(x: int) -> np.ndarray:
    m = transvection(chain_class(abs(x)))
    if x < 0:
        m = np.rint(np.linalg.inv(m)).astype(np.int64)
    m.setflags(write=False)
    return m


def sp4_image(word: Sequence[int]) -> np.ndarray:
    m = np.eye(4, dtype=np.int64)
    for x in word:
        m = m @ _letter_matrix(x)
    return m


def invariant_key(word: Sequence[int]) -> tuple:
    """Cheap hash of the fast filters: S6 image and Sp4 image mod 3."""
    return s6_image(word), tuple((sp4_image(word) % 3).ravel().tolist())


def is_trivial(word: Sequence[int], slack: int = S.DEFAULT_SLACK) -> bool:
    word = free_reduce(word)
    if not word:
        return True
    if s6_image(word) != tuple(range(6)):
        return False
    if not np.array_equal(sp4_image(word), np.eye(4, dtype=np.int64)):
        return False
    return S.inner_witness(realize(word).images, slack=slack) is not None


def mcg_equal(u: Sequence[int], v: Sequence[int], slack: int = S.DEFAULT_SLACK) -> bool:
    """Decide u == v in Map_2; may raise BoundExceeded."""
    if s6_image(u) != s6_image(v):
        return False
    if not np.array_equal(sp4_image(u), sp4_image(v)):
        return False
    return is_trivial(tuple(u) + inverse(v), slack=slack)


def positive_inverse(i: int) -> MCGWord:
    """Positive word equal to zeta_i^-1, read off from I^2 = 1 with I rotated to start at zeta_i."""
    if not 1 <= i <= 5:
        raise ValueError(f"no chain twist {i}")
    # I = zeta_i * (suffix); I is central, so every rotation of I*I is 1
    word = I + I
    k = word.index(i)
    rotated = word[k:] + word[:k]
    return rotated[1:]


def positive_form(word: Sequence[int]) -> MCGWord:
    out: List[int] = []
    for x in word:
        out.extend((x,) if x > 0 else positive_inverse(-x))
    return tuple(out)


def validate_presentation(slack: int = S.DEFAULT_SLACK) -> List[Tuple[str, bool]]:
    """Check every defining relation of Map_2 (plus the sigma identities)."""
    rels: List[Tuple[str, MCGWord, MCGWord]] = []
    for i in range(1, 6):
        for j in range(i + 2, 6):
            rels.append((f"z{i} z{j} = z{j} z{i}", (i, j), (j, i)))
    for i in range(1, 5):
        rels.append((f"z{i} z{i+1} z{i} = z{i+1} z{i} z{i+1}", (i, i + 1, i), (i + 1, i, i + 1)))
    rels.append(("(z1 z2 z3 z4 z5)^6 = 1", (1, 2, 3, 4, 5) * 6, ()))
    for i in range(1, 6):
        rels.append((f"I z{i} = z{i} I", I + (i,), (i,) + I))
    rels.append(("I^2 = 1", I + I, ()))
    rels.append(("sigma = (z4 z5)^6", SIGMA, (4, 5) * 6))
    rels.append(("sigma = (z1 z2)^3 (z4 z5)^3 I", SIGMA, (1, 2) * 3 + (4, 5) * 3 + I))
    report = [(name, mcg_equal(u, v, slack=slack)) for name, u, v in rels]
    return report


def assert_presentation(slack: int = S.DEFAULT_SLACK) -> None:
    bad = [name for name, ok in validate_presentation(slack) if not ok]
    if bad:
        raise PresentationError("twist table violates: " + "; ".join(bad))


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([A-Za-z]+\d*))('?)(?:\^(-?\d+))?")


def parse_mcg_word(text: str) -> MCGWord:
    """Parse ``z1..z5`` and the named elements; ``X'`` inverts, ``X^k`` and ``(..)^k`` repeat."""
    stack: List[List[int]] = [[]]
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse mapping class word at {text[pos:]!r}")
        pos = m.end()
        open_, close, name, prime, power = m.groups()
        if open_:
            if prime or power:
                raise ParseError("'(' takes no suffix")
            stack.append([])
            continue
        if close:
            if len(stack) == 1:
                raise ParseError("unbalanced ')'")
            w: Sequence[int] = tuple(stack.pop())
        elif name in NAMED:
            w = NAMED[name]
        elif len(name) == 2 and name[0] == "z" and name[1] in "12345":
            w = (int(name[1]),)
        else:
            raise ParseError(f"unknown mapping class token {name!r}")
        if prime:
            w = inverse(w)
        if power is not None:
            k = int(power)
            w = tuple(w) * k if k >= 0 else inverse(w) * -k
        stack[-1].extend(w)
    if len(stack) != 1:
        raise ParseError("unbalanced '('")
    return tuple(stack[0])


def format_mcg_word(word: Iterable[int]) -> str:
    return " ".join(f"z{abs(x)}" + ("'" if x < 0 else "") for x in word)
