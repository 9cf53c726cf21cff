"""Word and conjugacy problems in the genus-2 surface group.

The group is <a1, b1, a2, b2 | [a1,b1][a2,b2]> with [x,y] = x y x^-1 y^-1.
The relator satisfies C'(1/7), so Dehn's algorithm with a window of five
letters decides the word problem.

Words are plain tuples of signed ints (a1=1, b1=2, a2=3, b2=4; inverses are
negative).  Everything here is a pure function of its inputs.
"""
from __future__ import annotations

import itertools
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K

SurfaceWord = Tuple[int, ...]

GENERATORS: SurfaceWord = (1, 2, 3, 4)
NAMES = {1: "a1", 2: "b1", 3: "a2", 4: "b2"}
_TOKENS = {**{v: k for k, v in NAMES.items()}, **{v + "'": -k for k, v in NAMES.items()}}

RELATOR: SurfaceWord = tuple(int(x) for x in K.RELATOR)

# conjugating radius used by the annular search; side edges of a one-layer
# annular diagram are pieces, which have length 1 for this relator
DEFAULT_RADIUS = 2
DEFAULT_SLACK = 16


class BoundExceeded(RuntimeError):
    """A search bound was hit before the question could be decided."""


class ParseError(ValueError):
    pass


def _arr(w: Sequence[int]) -> np.ndarray:
    return np.fromiter(w, dtype=np.int64, count=len(w))


def parse_surface_word(text: str) -> SurfaceWord:
    out = []
    for tok in text.split():
        if tok not in _TOKENS:
            raise ParseError(f"unknown surface letter {tok!r}")
        out.append(_TOKENS[tok])
    return tuple(out)


def format_surface_word(w: Sequence[int]) -> str:
    return " ".join(NAMES[abs(x)] + ("'" if x < 0 else "") for x in w)


def inverse(w: Sequence[int]) -> SurfaceWord:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> SurfaceWord:
    return tuple(K.free_reduce(_arr(w)).tolist())


def dehn_reduce(w: Sequence[int]) -> SurfaceWord:
    return tuple(K.dehn_reduce(_arr(w), K.WINDOW_FLAG, K.WINDOW_COMP).tolist())


def is_identity(w: Sequence[int]) -> bool:
    return K.dehn_reduce(_arr(w), K.WINDOW_FLAG, K.WINDOW_COMP).shape[0] == 0


def abelianize(w: Sequence[int]) -> Tuple[int, int, int, int]:
    v = [0, 0, 0, 0]
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def cyclic_reduce(w: Sequence[int]) -> Tuple[SurfaceWord, SurfaceWord]:
    """Return (core, c) with w = c * core * c^-1 and core cyclically Dehn-reduced."""
    core = dehn_reduce(w)
    c: list = []
    while True:
        if len(core) >= 2 and core[0] == -core[-1]:
            c.append(core[0])
            core = core[1:-1]
            continue
        start = K.wrap_window(_arr(core), K.WINDOW_FLAG) if len(core) >= 5 else -1
        if start >= 0:
            # rotate so the offending window is a prefix: w = x y ~ y x
            x = core[:start]
            c.extend(x)
            core = dehn_reduce(core[start:] + x)
            continue
        return core, dehn_reduce(tuple(c))


def _short_words(radius: int):
    letters = (1, -1, 2, -2, 3, -3, 4, -4)
    words = [()]
    layer = [()]
    for _ in range(radius):
        layer = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        words.extend(layer)
    return words


_SHORT_CACHE: dict = {}


def _packed_short(radius: int):
    if radius not in _SHORT_CACHE:
        words = _short_words(radius)
        offsets = np.zeros(len(words) + 1, dtype=np.int64)
        for i, w in enumerate(words):
            offsets[i + 1] = offsets[i] + len(w)
        flat = np.array([x for w in words for x in w], dtype=np.int64)
        _SHORT_CACHE[radius] = (words, flat, offsets)
    return _SHORT_CACHE[radius]


def _rotation(w: SurfaceWord, other: SurfaceWord) -> Optional[int]:
    """Offset k with w[k:] + w[:k] == other, if any."""
    if len(w) != len(other):
        return None
    if not w:
        return 0
    doubled = w + w
    first = other[0]
    for k in range(len(w)):
        if doubled[k] == first and doubled[k : k + len(w)] == other:
            return k
    return None


def conjugator(
    u: Sequence[int],
    v: Sequence[int],
    radius: int = DEFAULT_RADIUS,
    max_work: int = 2 * 10**9,
) -> Optional[SurfaceWord]:
    """Some c with c^-1 u c = v, or None when u and v are not conjugate.

    Both words are cyclically Dehn-reduced; the remaining conjugator is
    rotation of one core, a short crossing word, then rotation of the other.
    Raises BoundExceeded if the search would exceed ``max_work`` letter steps.
    """
    u = tuple(u)
    v = tuple(v)
    if abelianize(u) != abelianize(v):
        return None
    cu, p = cyclic_reduce(u)
    cv, q = cyclic_reduce(v)
    if not cu or not cv:
        return dehn_reduce(p + inverse(q)) if not cu and not cv else None
    k = _rotation(cu, cv)
    if k is not None:
        d = cu[:k]
    else:
        words, flat, offsets = _packed_short(radius)
        work = len(words) * len(cu) * len(cv) * (len(cu) + len(cv) + 2 * radius)
        if work > max_work:
            raise BoundExceeded(f"conjugacy search needs ~{work} steps (> {max_work})")
        si, k, j = K.conjugacy_search(_arr(cu), _arr(cv), flat, offsets, K.WINDOW_FLAG, K.WINDOW_COMP)
        if si < 0:
            return None
        # s^-1 rot(cu,k) s = rot(cv,j);  rot(x, k) = x[:k]^-1 x x[:k]
        d = cu[:k] + words[si] + inverse(cv[:j])
    c = dehn_reduce(p + d + inverse(q))
    return c


def inner_witness(
    images: Sequence[Sequence[int]],
    slack: int = DEFAULT_SLACK,
    radius: int = DEFAULT_RADIUS,
) -> Optional[SurfaceWord]:
    """Return c with images[j] = c x_j c^-1 for the four generators, or None.

    Candidates are c0 * a1^k where c0 conjugates a1 to the first image; the
    centralizer of a1 is <a1>, so only the power k needs scanning.
    """
    images = [tuple(y) for y in images]
    c0 = conjugator(images[0], (1,), radius=radius)
    if c0 is None:
        return None
    window = len(c0) + max(len(y) + 2 for y in images) + slack
    for k in itertools.chain((0,), *(((m, -m) for m in range(1, window + 1)))):
        c = c0 + ((1,) if k > 0 else (-1,)) * abs(k)
        cinv = inverse(c)
        if all(is_identity(c + (x,) + cinv + inverse(y)) for x, y in zip(GENERATORS[1:], images[1:])):
            return dehn_reduce(c)
    _check_window_growth(c0, images, window)
    return None


def _check_window_growth(c0, images, window):
    # outside the window the mismatch on b1 must be strictly growing in |k|;
    # otherwise the window was too small to justify answering "no"
    def mismatch(k):
        c = c0 + ((1,) if k > 0 else (-1,)) * abs(k)
        return len(dehn_reduce(c + (2,) + inverse(c) + inverse(images[1])))

    for sign in (1, -1):
        a, b = mismatch(sign * window), mismatch(sign * (window + 1))
        if b <= a:
            raise BoundExceeded(f"centralizer window {window} too small (mismatch {a} -> {b})")
