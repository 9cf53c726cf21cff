"""Positive Dehn twist factorizations, Hurwitz moves and certificates.

A factor is stored as ``(base, conjugator)`` and denotes
``conjugator^-1 * base * conjugator``; ``base`` is the chain twist z1 or the
separating twist sigma.  Moves act on 0-based positions here; files and the
CLI use 1-based positions.

    R at i:  (t_i, t_i+1) -> (t_i+1, (t_i)_{t_i+1})
    L at i:  (t_i, t_i+1) -> ((t_i+1)_{t_i^-1}, t_i)
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import mcg
from . import surface as S

Z1 = "z1"
SIGMA = "sigma"
BASE_WORDS = {Z1: (1,), SIGMA: mcg.SIGMA}
# letters commuting with the base twist; leading ones can be dropped from a conjugator
_CENTRALIZING = {Z1: frozenset({1, 3, 4, 5}), SIGMA: frozenset({1, 2, 4, 5})}
# canonical conjugators with (z1)_c == z_i
CHAIN_CONJUGATOR = {1: (), 2: (2, 1), 3: (2, 1, 3, 2), 4: (2, 1, 3, 2, 4, 3), 5: (2, 1, 3, 2, 4, 3, 5, 4)}
_CHAIN_INDEX = {c: i for i, c in CHAIN_CONJUGATOR.items()}


def _commutes(x: int, y: int) -> bool:
    return abs(abs(x) - abs(y)) >= 2


def simplify_conjugator(base: str, word: Sequence[int]) -> Tuple[int, ...]:
    """Peephole normal form: cancel x ... x^-1 across commuting letters, drop centralizing prefix."""
    out: List[int] = []
    for x in word:
        # look back past letters commuting with x for an inverse to cancel
        j = len(out) - 1
        while j >= 0 and out[j] != -x and _commutes(out[j], x):
            j -= 1
        if j >= 0 and out[j] == -x:
            del out[j]
        else:
            out.append(x)
    cent = _CENTRALIZING[base]
    changed = True
    while changed and out:
        changed = False
        # a letter can be pulled to the front if it commutes with everything before it
        for j, x in enumerate(out):
            if abs(x) in cent and all(_commutes(y, x) for y in out[:j]):
                del out[j]
                changed = True
                break
            if j > 8:
                break
    return tuple(out)


@dataclass(frozen=True)
class TwistFactor:
    base: str
    conjugator: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.base not in BASE_WORDS:
            raise ValueError(f"unknown base twist {self.base!r}")

    @classmethod
    def chain(cls, i: int) -> "TwistFactor":
        return cls(Z1, CHAIN_CONJUGATOR[i])

    @property
    def separating(self) -> bool:
        return self.base == SIGMA

    def expand(self) -> Tuple[int, ...]:
        if self.base == Z1 and self.conjugator in _CHAIN_INDEX:
            return (_CHAIN_INDEX[self.conjugator],)
        return mcg.free_reduce(mcg.inverse(self.conjugator) + BASE_WORDS[self.base] + self.conjugator)

    def conjugate(self, word: Sequence[int], shorten: bool = True) -> "TwistFactor":
        f = TwistFactor(self.base, simplify_conjugator(self.base, self.conjugator + tuple(word)))
        return _shortest(f) if shorten else f

    @functools.cached_property
    def curve(self) -> Tuple[int, ...]:
        start = mcg.chain_curve(1) if self.base == Z1 else mcg.SEPARATING_CURVE
        return mcg.push_curve(start, self.conjugator)

    @functools.cached_property
    def curve_key(self) -> tuple:
        """Least rotation of the reduced curve or its inverse; equal keys mean equal twists."""
        core = self.curve
        if not core:
            return (self.base, ())
        return (self.base, min(_least_rotation(core), _least_rotation(S.inverse(core))))

    @functools.cached_property
    def invariant(self) -> tuple:
        """(kind, S6 image, homology class up to sign) - equal twists share it."""
        m = mcg.sp4_image(self.conjugator)
        if self.base == Z1:
            cls = mcg.chain_class(1) @ m
            nz = cls[np.nonzero(cls)[0][0]]
            if nz < 0:
                cls = -cls
            return (Z1, mcg.s6_image(self.expand()), tuple(cls.tolist()))
        return (SIGMA, mcg.s6_image(self.conjugator), ())

    def __str__(self) -> str:
        return f"{self.base} @ {mcg.format_mcg_word(self.conjugator)}".rstrip(" @")


def _least_rotation(w: Tuple[int, ...]) -> Tuple[int, ...]:
    # Booth's algorithm
    n = len(w)
    d = w + w
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        x = d[j]
        i = fail[j - k - 1]
        while i != -1 and x != d[k + i + 1]:
            if x < d[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if i == -1 and x != d[k + i + 1]:
            if x < d[k + i + 1]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return d[k : k + n]


_SHORTEST: Dict[tuple, TwistFactor] = {}


def _shortest(f: TwistFactor) -> TwistFactor:
    # memo of the shortest conjugator seen for each curve key
    key = f.curve_key
    best = _SHORTEST.get(key)
    if best is None or len(f.conjugator) < len(best.conjugator):
        _SHORTEST[key] = f
        return f
    return best


for _i in range(1, 6):
    _shortest(TwistFactor(Z1, CHAIN_CONJUGATOR[_i]))
_shortest(TwistFactor(SIGMA, ()))


def factor_equal(f: TwistFactor, g: TwistFactor) -> bool:
    """Equality of the twists as mapping classes, decided by comparing their curves."""
    if f.base != g.base:
        return False
    if f.conjugator == g.conjugator or f.curve_key == g.curve_key:
        return True
    if f.invariant != g.invariant:
        return False
    cf, cg = f.curve, g.curve
    return S.conjugator(cf, cg) is not None or S.conjugator(cf, S.inverse(cg)) is not None


Factorization = Tuple[TwistFactor, ...]


def factorization_from_word(word: Sequence[int]) -> Factorization:
    """Positive word in z1..z5 read as a factorization of chain twists."""
    if any(x < 0 for x in word):
        raise ValueError("factorization words must be positive")
    return tuple(TwistFactor.chain(x) for x in word)


def T_factorization() -> Factorization:
    return factorization_from_word(mcg.T)


def W0() -> Factorization:
    return T_factorization() * 2


def W1() -> Factorization:
    return factorization_from_word((1, 2, 3, 4, 5) * 6)


def W2() -> Factorization:
    return (TwistFactor(SIGMA),) + factorization_from_word(mcg.PHI * 2) + T_factorization()


NAMED_FACTORIZATIONS: Dict[str, Callable[[], Factorization]] = {"T": T_factorization, "W0": W0, "W1": W1, "W2": W2}


def expand(f: TwistFactor) -> Tuple[int, ...]:
    return f.expand()


def product(F: Sequence[TwistFactor]) -> Tuple[int, ...]:
    out: List[int] = []
    for f in F:
        out.extend(f.expand())
    return mcg.free_reduce(out)


def count_separating(F: Sequence[TwistFactor]) -> int:
    return sum(1 for f in F if f.separating)


def _transposition(f: TwistFactor) -> Tuple[int, ...]:
    return mcg.s6_image(f.expand())


def is_transitive(F: Sequence[TwistFactor]) -> bool:
    """True if the S6 images of the factors generate S6."""
    perms = {_transposition(f) for f in F}
    perms.discard(tuple(range(6)))
    if not perms:
        return False
    # the group generated is S6 iff it acts transitively and contains enough;
    # generated by transpositions: S6 iff the transposition graph is connected
    if all(_is_transposition(p) for p in perms):
        parent = list(range(6))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p in perms:
            a, b = [k for k in range(6) if p[k] != k]
            parent[find(a)] = find(b)
        return len({find(k) for k in range(6)}) == 1
    return _closure_size(perms) == 720


def _is_transposition(p) -> bool:
    return sum(1 for k in range(6) if p[k] != k) == 2


def _closure_size(gens) -> int:
    seen = {tuple(range(6))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[k]] for k in range(6))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def conjugate_factorization(F: Sequence[TwistFactor], gamma: Sequence[int]) -> Factorization:
    return tuple(f.conjugate(gamma) for f in F)


def fiber_sum(F: Sequence[TwistFactor], G: Sequence[TwistFactor], phi: Sequence[int] = ()) -> Factorization:
    return tuple(F) + conjugate_factorization(G, phi)


def apply_move(F: Sequence[TwistFactor], i: int, direction: str, shorten: bool = True) -> Factorization:
    """Elementary Hurwitz move on the pair (i, i+1), 0-based.

    ``shorten`` swaps in the shortest known conjugator for the new factor,
    which costs a curve computation.
    """
    if not 0 <= i < len(F) - 1:
        raise IndexError(f"move position {i} out of range for {len(F)} factors")
    a, b = F[i], F[i + 1]
    if direction == "R":
        pair = (b, a.conjugate(b.expand(), shorten))
    elif direction == "L":
        pair = (b.conjugate(mcg.inverse(a.expand()), shorten), a)
    else:
        raise ValueError(f"direction must be L or R, not {direction!r}")
    return tuple(F[:i]) + pair + tuple(F[i + 2 :])


def factorizations_equal(F: Sequence[TwistFactor], G: Sequence[TwistFactor]) -> bool:
    return len(F) == len(G) and all(factor_equal(f, g) for f, g in zip(F, G))


# ---------------------------------------------------------------- certificates

Move = Tuple[str, int]


@dataclass(frozen=True)
class Macro:
    name: str
    args: Tuple[str, ...] = ()

    def inverted(self) -> "Macro":
        if self.name == "INVERSE":
            return Macro(self.args[0], self.args[1:])
        return Macro("INVERSE", (self.name,) + self.args)


Entry = object  # Move | Macro


@dataclass
class HurwitzCertificate:
    entries: List[Entry] = field(default_factory=list)

    def __len__(self) -> int:
        return sum(1 for _ in self.moves())

    def moves(self) -> Iterator[Move]:
        for e in self.entries:
            if isinstance(e, Macro):
                yield from expand_macro(e)
            else:
                yield e

    def extend(self, other: "HurwitzCertificate | Iterable[Entry]") -> "HurwitzCertificate":
        self.entries.extend(other.entries if isinstance(other, HurwitzCertificate) else other)
        return self

    def shifted(self, offset: int) -> "HurwitzCertificate":
        if not offset:
            return HurwitzCertificate(list(self.entries))
        return HurwitzCertificate(
            [Macro("SHIFT", (str(offset), e.name) + e.args) if isinstance(e, Macro) else (e[0], e[1] + offset)
             for e in self.entries]
        )

    def inverse(self) -> "HurwitzCertificate":
        out: List[Entry] = []
        for e in reversed(self.entries):
            out.append(e.inverted() if isinstance(e, Macro) else ("L" if e[0] == "R" else "R", e[1]))
        return HurwitzCertificate(out)


def inverse_moves(moves: Iterable[Move]) -> List[Move]:
    return [("L" if d == "R" else "R", i) for d, i in reversed(list(moves))]


MACROS: Dict[str, Callable[..., Iterable[Move]]] = {}


def register_macro(name: str):
    def deco(fn):
        MACROS[name] = fn
        return fn

    return deco


def expand_macro(m: Macro) -> Iterator[Move]:
    if m.name not in MACROS:
        raise ValueError(f"unknown macro {m.name!r}")
    yield from MACROS[m.name](*m.args)


@register_macro("INVERSE")
def _inverse_macro(name, *args) -> List[Move]:
    return inverse_moves(expand_macro(Macro(name, args)))


@register_macro("SHIFT")
def _shift_macro(offset, name, *args) -> List[Move]:
    k = int(offset)
    return [(d, i + k) for d, i in expand_macro(Macro(name, args))]


@register_macro("BLOCK")
def _block_macro(at, length, across, mode) -> List[Move]:
    return block_moves(int(at) - 1, int(length), int(across), mode)


def block_moves(start: int, length: int, across: int, mode: str) -> List[Move]:
    """Move factors [start, start+length) to the right past the next ``across`` factors.

    KEEP leaves the block factors unchanged (the crossed ones are conjugated);
    CONJ leaves the crossed factors unchanged.
    """
    moves: List[Move] = []
    if mode == "KEEP":
        for t in reversed(range(length)):
            moves.extend(("L", start + t + s) for s in range(across))
    elif mode == "CONJ":
        for s in range(across):
            pos = start + length + s
            moves.extend(("R", pos - 1 - t) for t in range(length))
    else:
        raise ValueError(f"block mode must be KEEP or CONJ, not {mode!r}")
    return moves


def block(start: int, length: int, across: int, mode: str) -> Macro:
    """BLOCK macro for a 0-based start."""
    return Macro("BLOCK", (str(start + 1), str(length), str(across), mode))


def replay(F: Sequence[TwistFactor], cert: HurwitzCertificate) -> Factorization:
    state = list(F)
    n = len(state)
    for d, i in cert.moves():
        if not 0 <= i < n - 1:
            raise IndexError(f"certificate move {d} {i + 1} out of range for {n} factors")
        a, b = state[i], state[i + 1]
        if d == "R":
            state[i], state[i + 1] = b, a.conjugate(b.expand())
        elif d == "L":
            state[i], state[i + 1] = b.conjugate(mcg.inverse(a.expand())), a
        else:
            raise ValueError(f"bad move direction {d!r}")
    return tuple(state)


def check_certificate(F: Sequence[TwistFactor], cert: HurwitzCertificate, G: Sequence[TwistFactor]) -> bool:
    """Replay ``cert`` on F and compare the result factorwise with G."""
    if len(F) != len(G):
        return False
    return factorizations_equal(replay(F, cert), G)


# ---------------------------------------------------------------- search

@dataclass
class SearchResult:
    certificate: Optional[HurwitzCertificate]
    exhausted: bool
    nodes: int


def _state_key(F: Sequence[TwistFactor]) -> tuple:
    return tuple(f.invariant for f in F)


def _neighbors(F: Factorization) -> Iterator[Tuple[Move, Factorization]]:
    for i in range(len(F) - 1):
        for d in ("L", "R"):
            yield (d, i), apply_move(F, i, d, shorten=False)


def bounded_search(
    F: Sequence[TwistFactor],
    G: Sequence[TwistFactor],
    max_depth: int = 6,
    max_nodes: int = 200_000,
) -> SearchResult:
    """Find a certificate F ~ G.

    First a bidirectional breadth-first search (states deduplicated by the
    per-factor invariant hash, matches confirmed factorwise), then a
    left-to-right alignment strategy for long factorizations.  Moves are tried
    in (position ascending, L before R) order so results are reproducible.
    """
    F, G = tuple(F), tuple(G)
    if len(F) != len(G):
        raise ValueError("factorizations must have the same length")
    if factorizations_equal(F, G):
        return SearchResult(HurwitzCertificate(), False, 1)
    res = _bidirectional(F, G, max_depth, max_nodes)
    if res.certificate is not None:
        return res
    aligned = _align(F, G, max_nodes)
    if aligned is None:
        back = _align(G, F, max_nodes)
        aligned = back.inverse() if back is not None else None
    if aligned is not None and check_certificate(F, aligned, G):
        return SearchResult(aligned, False, res.nodes)
    return res


def _bidirectional(F, G, max_depth, max_nodes) -> SearchResult:
    fwd: Dict[tuple, Tuple[Factorization, List[Move]]] = {_state_key(F): (F, [])}
    bwd: Dict[tuple, Tuple[Factorization, List[Move]]] = {_state_key(G): (G, [])}
    fwd_frontier = [F]
    bwd_frontier = [G]
    fwd_paths = {F: []}
    bwd_paths = {G: []}
    nodes = 2
    depth = 0
    exhausted = True
    while depth < max_depth:
        grow_fwd = len(fwd_frontier) <= len(bwd_frontier)
        frontier, paths, table, other = (
            (fwd_frontier, fwd_paths, fwd, bwd) if grow_fwd else (bwd_frontier, bwd_paths, bwd, fwd)
        )
        nxt = []
        for state in frontier:
            for mv, new in _neighbors(state):
                key = _state_key(new)
                if key in table:
                    continue
                path = paths[state] + [mv]
                table[key] = (new, path)
                paths[new] = path
                nxt.append(new)
                nodes += 1
                if key in other:
                    o_state, o_path = other[key]
                    a, b = (new, o_state) if grow_fwd else (o_state, new)
                    if factorizations_equal(a, b):
                        fpath = path if grow_fwd else o_path
                        bpath = o_path if grow_fwd else path
                        cert = HurwitzCertificate(list(fpath) + inverse_moves(bpath))
                        if check_certificate(F, cert, G):
                            return SearchResult(cert, False, nodes)
                if nodes >= max_nodes:
                    return SearchResult(None, False, nodes)
        if grow_fwd:
            fwd_frontier = nxt
        else:
            bwd_frontier = nxt
        depth += 1
        if not nxt:
            break
    return SearchResult(None, exhausted and depth < max_depth, nodes)


def _align(F: Factorization, G: Factorization, max_nodes: int) -> Optional[HurwitzCertificate]:
    """Fix target factors left to right, pulling a matching factor from the right.

    A factor at k can reach position j unchanged (R moves) or conjugated by
    the factors it crosses (L moves); the first candidate that equals G[j]
    is taken.
    """
    state = list(F)
    moves: List[Move] = []
    n = len(state)
    budget = max_nodes
    for j in range(n - 1):
        if factor_equal(state[j], G[j]):
            continue
        found = None
        for k in range(j + 1, n):
            for d in ("R", "L"):
                budget -= 1
                if budget <= 0:
                    return None
                cand = state[k]
                if d == "L":
                    crossed = []
                    for t in range(j, k):
                        crossed.extend(state[t].expand())
                    cand = cand.conjugate(mcg.inverse(crossed))
                if cand.base == G[j].base and factor_equal(cand, G[j]):
                    found = (k, d)
                    break
            if found:
                break
        if found is None:
            return None
        k, d = found
        for t in range(k - 1, j - 1, -1):
            moves.append((d, t))
            a, b = state[t], state[t + 1]
            if d == "R":
                state[t], state[t + 1] = b, a.conjugate(b.expand())
            else:
                state[t], state[t + 1] = b.conjugate(mcg.inverse(a.expand())), a
    cert = HurwitzCertificate(moves)
    return cert if factorizations_equal(tuple(state), G) else None


# ---------------------------------------------------------------- file formats

class FormatError(ValueError):
    pass


def _named_factorization(tok: str) -> Optional[Factorization]:
    name, _, power = tok.partition("^")
    if name in NAMED_FACTORIZATIONS:
        F = NAMED_FACTORIZATIONS[name]()
    elif name == "sigma":
        F = (TwistFactor(SIGMA),)
    elif len(name) == 2 and name[0] == "z" and name[1] in "12345":
        F = (TwistFactor.chain(int(name[1])),)
    else:
        return None
    try:
        return F * (int(power) if power else 1)
    except ValueError:
        raise FormatError(f"bad power in {tok!r}") from None


def parse_factorization(text: str) -> Factorization:
    """Parse ``base @ conjugator`` lines; other lines list named pieces (W0 W1 W2 T sigma z1..z5, ^k powers)."""
    out: List[TwistFactor] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "@" in line:
            base, _, conj = line.partition("@")
            base = base.strip()
            if base not in BASE_WORDS:
                raise FormatError(f"line {lineno}: base must be z1 or sigma, got {base!r}")
            try:
                word = mcg.parse_mcg_word(conj)
            except mcg.ParseError as e:
                raise FormatError(f"line {lineno}: {e}") from None
            out.append(TwistFactor(base, word))
            continue
        for tok in line.split():
            F = _named_factorization(tok)
            if F is None:
                raise FormatError(f"line {lineno}: unknown factorization token {tok!r}")
            out.extend(F)
    return tuple(out)


def format_factorization(F: Sequence[TwistFactor]) -> str:
    return "".join(f"{f.base} @ {mcg.format_mcg_word(f.conjugator)}".rstrip() + "\n" for f in F)


def parse_certificate(text: str) -> HurwitzCertificate:
    entries: List[Entry] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        head = line[0]
        if head in ("L", "R"):
            if len(line) != 2 or not line[1].isdigit() or int(line[1]) < 1:
                raise FormatError(f"line {lineno}: expected '{head} <position>'")
            entries.append((head, int(line[1]) - 1))
        elif head == "MACRO":
            if len(line) < 2:
                raise FormatError(f"line {lineno}: MACRO needs a name")
            if line[1] not in MACROS:
                raise FormatError(f"line {lineno}: unknown macro {line[1]!r}")
            entries.append(Macro(line[1], tuple(line[2:])))
        else:
            raise FormatError(f"line {lineno}: unrecognized entry {head!r}")
    return HurwitzCertificate(entries)


def format_certificate(cert: HurwitzCertificate, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()]
    for e in cert.entries:
        if isinstance(e, Macro):
            lines.append(" ".join(("MACRO", e.name) + e.args))
        else:
            lines.append(f"{e[0]} {e[1] + 1}")
    return "\n".join(lines) + "\n"
