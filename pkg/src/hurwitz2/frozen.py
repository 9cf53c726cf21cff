"""Frozen certificate files shipped with the package.

Each entry names its two endpoints and a generator; ``regenerate`` rewrites
the files, ``check`` replays a stored file against its endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from . import braid, identities, mcg
from .factorization import (
    NAMED_FACTORIZATIONS,
    Factorization,
    FormatError,
    HurwitzCertificate,
    W0,
    W1,
    bounded_search,
    check_certificate,
    conjugate_factorization,
    format_certificate,
    parse_certificate,
)

DEFAULT_DIR = Path(__file__).with_name("certificates")


@dataclass(frozen=True)
class Entry:
    name: str
    source: Callable[[], Factorization]
    target: Callable[[], Factorization]
    generate: Callable[[], HurwitzCertificate]
    note: str


def _lemma7_entry(X: str, gname: str, gamma) -> Entry:
    return Entry(
        f"lemma7_{X}_{gname}",
        lambda: conjugate_factorization(NAMED_FACTORIZATIONS[X](), gamma),
        NAMED_FACTORIZATIONS[X],
        lambda: identities.lemma7_certificate(X, gamma),
        f"({X})_{gname} ~ {X}",
    )


def _braid_entry(name: str, a: str, b: str, note: str) -> Entry:
    def ends():
        tab = braid.builtin_braid_factorizations()
        return (braid.lift_factorization(tab[a], check=False), braid.lift_factorization(tab[b], check=False))

    def gen():
        src, dst = ends()
        res = bounded_search(src, dst, max_depth=4, max_nodes=50_000)
        if res.certificate is None:
            raise RuntimeError(f"no certificate found for {name}")
        return res.certificate

    return Entry(name, lambda: ends()[0], lambda: ends()[1], gen, note)


def manifest() -> Dict[str, Entry]:
    out: Dict[str, Entry] = {}
    gammas = [(f"z{i}", (i,)) for i in range(1, 6)] + [("rho", mcg.RHO)]
    for X in ("T", "W0", "W1"):
        for gname, gamma in gammas:
            e = _lemma7_entry(X, gname, gamma)
            out[e.name] = e
    out["lemma8"] = Entry("lemma8", lambda: W1() * 2, lambda: W0() * 3, identities.lemma8_certificate, "(W1)^2 ~ (W0)^3")
    out["lemma13"] = Entry(
        "lemma13",
        identities.lemma13_lhs,
        identities.lemma13_rhs,
        identities.lemma13_certificate,
        "(z1 z2)^3 (z4 z5)^3 . T . W2 ~ sigma . W0 . W1",
    )
    out["lemma5"] = _braid_entry("lemma5", "B0_nodal", "B0_tangency", "lifted B0 squares form ~ (x1..x5 x5..x1)^2")
    for name, a, b in braid.LEMMA11_STEPS:
        out[name] = _braid_entry(name, a, b, f"lifted {a} ~ {b}")
    return out


def path_for(name: str, cert_dir: Optional[Path] = None) -> Path:
    return Path(cert_dir or DEFAULT_DIR) / f"{name}.cert"


def regenerate(cert_dir: Optional[Path] = None) -> List[Path]:
    d = Path(cert_dir or DEFAULT_DIR)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for e in manifest().values():
        p = path_for(e.name, d)
        p.write_text(format_certificate(e.generate(), e.note))
        written.append(p)
    return written


def load(name: str, cert_dir: Optional[Path] = None) -> HurwitzCertificate:
    return parse_certificate(path_for(name, cert_dir).read_text())


def check(name: str, cert_dir: Optional[Path] = None) -> Tuple[bool, str]:
    """Replay a stored certificate; returns (passed, detail)."""
    e = manifest()[name]
    try:
        cert = load(name, cert_dir)
        ok = check_certificate(e.source(), cert, e.target())
    except FileNotFoundError:
        return False, "certificate file missing"
    except (FormatError, IndexError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
    return ok, e.note if ok else f"replay does not reach target ({e.note})"
