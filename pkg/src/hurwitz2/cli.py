"""Command line interface.

Exit codes: 0 yes/pass, 1 no/fail, 2 usage or parse error (also a
non-identity product for ``reduce``), 3 a search bound was exceeded.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click

from . import braid, frozen, identities, mcg
from . import factorization as Fz
from .surface import DEFAULT_SLACK, BoundExceeded

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


@dataclass
class Config:
    search_depth: int = 6
    search_nodes: int = 200_000
    conjugacy_bound_slack: int = DEFAULT_SLACK
    certificate_dir: Optional[Path] = None
    seed: int = 0


def _positive(ctx, param, value):
    if value is not None and value <= 0:
        raise click.BadParameter("must be positive")
    return value


class _Group(click.Group):
    def main(self, *args, **kwargs):
        try:
            return super().main(*args, **kwargs)
        except BoundExceeded as e:  # pragma: no cover - depends on bounds
            click.echo(f"bound exceeded: {e}", err=True)
            sys.exit(EXIT_BOUND)


@click.group(cls=_Group)
@click.option("--depth", default=6, show_default=True, callback=_positive, help="search depth bound")
@click.option("--nodes", default=200_000, show_default=True, callback=_positive, help="search node bound")
@click.option("--slack", default=DEFAULT_SLACK, show_default=True, callback=_positive, help="centralizer window slack")
@click.option("--seed", default=0, show_default=True, help="seed for randomized checks")
@click.option("--cert-dir", type=click.Path(file_okay=False, path_type=Path), default=None, help="certificate directory")
@click.pass_context
def main(ctx, depth, nodes, slack, seed, cert_dir):
    """Hurwitz equivalence tools for genus-2 Lefschetz fibrations."""
    ctx.obj = Config(depth, nodes, slack, cert_dir, seed)


def _read_factorization(path: str) -> Fz.Factorization:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise click.UsageError(str(e))
    try:
        return Fz.parse_factorization(text)
    except Fz.FormatError as e:
        click.echo(f"parse error in {path}: {e}", err=True)
        sys.exit(EXIT_USAGE)


def _read_certificate(path: str) -> Fz.HurwitzCertificate:
    try:
        return Fz.parse_certificate(Path(path).read_text())
    except OSError as e:
        raise click.UsageError(str(e))
    except Fz.FormatError as e:
        click.echo(f"parse error in {path}: {e}", err=True)
        sys.exit(EXIT_USAGE)


def _parse_word(text: str) -> mcg.MCGWord:
    try:
        return mcg.parse_mcg_word(text)
    except mcg.ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        sys.exit(EXIT_USAGE)


@main.command()
@click.argument("u")
@click.argument("v")
@click.pass_obj
def equal(cfg: Config, u, v):
    """Decide whether two words in z1..z5 are equal in Map2."""
    same = mcg.mcg_equal(_parse_word(u), _parse_word(v), slack=cfg.conjugacy_bound_slack)
    click.echo("equal: yes" if same else "equal: no")
    sys.exit(EXIT_YES if same else EXIT_NO)


def _invariant_lines(F) -> List[str]:
    p = Fz.product(F)
    return [
        f"factors: {len(F)}",
        f"separating: {Fz.count_separating(F)}",
        f"transitive: {'yes' if Fz.is_transitive(F) else 'no'}",
        f"product_s6: {mcg.format_permutation(mcg.s6_image(p))}",
        f"product_sp4: {mcg.sp4_image(p).tolist()}",
    ]


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def invariants(cfg: Config, file):
    """Factor count, separating count, transitivity and product images."""
    F = _read_factorization(file)
    for line in _invariant_lines(F):
        click.echo(line)
    trivial = mcg.is_trivial(Fz.product(F), slack=cfg.conjugacy_bound_slack)
    click.echo(f"identity: {'yes' if trivial else 'no'}")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="where to write the certificate")
@click.pass_obj
def reduce(cfg: Config, file, out):
    """Stabilize an identity factorization to (W0)^(n+k) (W1)^e (W2)^m."""
    F = _read_factorization(file)
    try:
        form = identities.stable_reduce(F)
    except identities.NonIdentityProduct as e:
        click.echo(f"error: {e}", err=True)
        for line in _invariant_lines(F):
            click.echo(line, err=True)
        sys.exit(EXIT_USAGE)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    out = out or Path(file).with_suffix(".reduce.cert")
    out.write_text(Fz.format_certificate(form.cert, f"F.(W0)^{form.n} ~ base.(W2)^{form.m}"))
    click.echo(f"n: {form.n}")
    click.echo(f"k: {form.k}")
    click.echo(f"epsilon: {form.epsilon}")
    click.echo(f"m: {form.m}")
    click.echo(f"base_factors: {len(form.base)}")
    click.echo(f"base_oracle_flag: {'true' if form.base_oracle_flag else 'false'}")
    click.echo(f"certificate: {out}")


@main.group()
def certificate():
    """Check or replay certificate files."""


@certificate.command("check")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("cert", type=click.Path(exists=True, dir_okay=False))
@click.argument("target", type=click.Path(exists=True, dir_okay=False))
def certificate_check(source, cert, target):
    """Replay CERT on SOURCE and compare with TARGET factorwise."""
    F, C, G = _read_factorization(source), _read_certificate(cert), _read_factorization(target)
    try:
        ok = Fz.check_certificate(F, C, G)
    except IndexError as e:
        click.echo(f"fail: {e}")
        sys.exit(EXIT_NO)
    click.echo("pass" if ok else "fail")
    sys.exit(EXIT_YES if ok else EXIT_NO)


@certificate.command("replay")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("cert", type=click.Path(exists=True, dir_okay=False))
def certificate_replay(source, cert):
    """Replay CERT on SOURCE and print the resulting factorization."""
    F, C = _read_factorization(source), _read_certificate(cert)
    try:
        out = Fz.replay(F, C)
    except IndexError as e:
        click.echo(f"fail: {e}", err=True)
        sys.exit(EXIT_NO)
    click.echo(Fz.format_factorization(out), nl=False)


@main.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("target", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def search(cfg: Config, source, target):
    """Look for a Hurwitz equivalence certificate SOURCE ~ TARGET."""
    F, G = _read_factorization(source), _read_factorization(target)
    if len(F) != len(G):
        click.echo("not equivalent: different factor counts")
        sys.exit(EXIT_NO)
    res = Fz.bounded_search(F, G, max_depth=cfg.search_depth, max_nodes=cfg.search_nodes)
    if res.certificate is None:
        click.echo("no certificate: " + ("search space exhausted" if res.exhausted else "bounds reached"))
        sys.exit(EXIT_NO)
    click.echo(f"# {len(res.certificate)} moves, {res.nodes} nodes")
    click.echo(Fz.format_certificate(res.certificate), nl=False)


# ---------------------------------------------------------------- verify-all

def _checks(cfg: Config) -> List[Tuple[str, Callable[[], Tuple[bool, str]]]]:
    slack = cfg.conjugacy_bound_slack
    out: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = []
    for name, ok in mcg.validate_presentation(slack):
        out.append((f"relation {name}", lambda ok=ok: (ok, "")))
    for i in range(1, 5):
        u, v = (i, i + 1, i), (i + 1, i, i + 1)
        out.append((f"braid x{i} x{i+1} x{i} = x{i+1} x{i} x{i+1}", lambda u=u, v=v: (braid.braid_equal_mod_center(u, v), "")))
    for i in range(1, 6):
        for j in range(i + 2, 6):
            out.append((f"braid x{i} x{j} = x{j} x{i}", lambda i=i, j=j: (braid.braid_equal_mod_center((i, j), (j, i)), "")))
    out.append(("braid sphere relation", lambda: (braid.braid_equal_mod_center(braid.SPHERE_RELATION, ()), "")))

    def named(F, expect_len, target):
        def run():
            p = Fz.product(F)
            ok = mcg.is_trivial(p, slack) if target == "1" else mcg.mcg_equal(p, mcg.I, slack)
            return ok and len(F) == expect_len, f"{len(F)} factors, product {target}"
        return run

    out.append(("W0", named(Fz.W0(), 20, "1")))
    out.append(("W1", named(Fz.W1(), 30, "1")))
    out.append(("W2", named(Fz.W2(), 29, "1")))
    out.append(("T", named(Fz.T_factorization(), 10, "I")))
    for i in range(1, 6):
        out.append((f"(z{i})_rho = z{6 - i}", lambda i=i: (mcg.mcg_equal(mcg.inverse(mcg.RHO) + (i,) + mcg.RHO, (6 - i,), slack), "")))
    for i, j in ((1, 4), (2, 5), (4, 1), (5, 2)):
        out.append((f"(z{i})_Phi = z{j}", lambda i=i, j=j: (mcg.mcg_equal(mcg.inverse(mcg.PHI) + (i,) + mcg.PHI, (j,), slack), "")))
    for name in frozen.manifest():
        out.append((f"certificate {name}", lambda name=name: frozen.check(name, cfg.certificate_dir)))
    out.append(("lemma11 delta lifts to sigma", lambda: (braid.delta_lifts_to_sigma(), "")))
    out.append(("lemma11 assembly equals W2", lambda: (Fz.factorizations_equal(braid.assemble_b2(), Fz.W2()), "29 factors")))
    out.append(("random round trips", lambda: _random_round_trips(cfg)))
    return out


def _random_round_trips(cfg: Config, cases: int = 10) -> Tuple[bool, str]:
    rng = random.Random(cfg.seed)
    for _ in range(cases):
        F = tuple(Fz.TwistFactor.chain(rng.randint(1, 5)) for _ in range(rng.randint(2, 6)))
        G = F
        for _ in range(rng.randint(0, 3)):
            G = Fz.apply_move(G, rng.randrange(len(G) - 1), rng.choice("LR"))
        res = Fz.bounded_search(F, G, max_depth=cfg.search_depth, max_nodes=cfg.search_nodes)
        if res.certificate is None or not Fz.check_certificate(F, res.certificate, G):
            return False, "search failed on a seeded case"
    return True, f"{cases} cases, seed {cfg.seed}"


@main.command("verify-all")
@click.pass_obj
def verify_all(cfg: Config):
    """Run every built-in check and print one line per check."""
    failed = 0
    for name, run in _checks(cfg):
        try:
            ok, detail = run()
        except BoundExceeded as e:
            ok, detail = False, f"bound exceeded: {e}"
        failed += not ok
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    click.echo(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    sys.exit(EXIT_YES if not failed else EXIT_NO)


if __name__ == "__main__":  # pragma: no cover
    main()
