"""Command line interface.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 bad
input, 3 term budget exceeded.
"""
from __future__ import annotations

import functools
import json
import sys
import time

import click

from . import __version__
from .exactla import InputError, rat, rat_str
from .liecore import (
    builtin_algebra,
    check_table_antisymmetry,
    check_table_jacobi,
    crt_idempotents,
    index_report,
    make_difference_bracket,
    make_quotient,
    parse_poly,
    rational_roots,
)
from .psring import BudgetError, MPoly, poisson_bracket, term_budget
from .liecore import make_direct_power
from .invariantlab import gaudin_hamiltonians
from .pencilz import Pencil, build_Z, trdeg_of_Z, verify_Z_commutes
from .suites import SUITE_NAMES, canonical_json, report_markdown, run_suite


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputError as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(2)
        except BudgetError as exc:
            click.echo(f"budget exceeded: {exc}", err=True)
            sys.exit(3)

    return wrapper


@click.group()
@click.version_option(__version__, prog_name="glab")
def main():
    """Exact tooling for quotient current algebras and their pencils."""


@main.command()
@_guard
def info():
    """Version, built-in algebras, suites, and the active term budget."""
    click.echo(f"glab {__version__}")
    click.echo("algebras: sl2..sl9, gl2..gl9, abelian:K, takiff:BASE:K, sum:A,B")
    click.echo(f"suites: {', '.join(SUITE_NAMES)}")
    click.echo(f"term budget: {term_budget()} (override with GLAB_BUDGET_TERMS)")


@main.command()
@click.option("--q", "qname", default="sl2", show_default=True, help="base algebra")
@click.option("--p", "ptxt", required=True, help="monic modulus, e.g. 't^2-1'")
@_guard
def jacobi(qname, ptxt):
    """Antisymmetry and Jacobi for the quotient bracket by --p."""
    q = builtin_algebra(qname)
    T = make_quotient(q, parse_poly(ptxt))
    anti = check_table_antisymmetry(T)
    bad = check_table_jacobi(T)
    click.echo(f"antisymmetry: {'ok' if anti else 'FAIL'}")
    if bad is None:
        click.echo("jacobi: ok")
    else:
        click.echo(f"jacobi: FAIL at {bad}")
    if not anti or bad is not None:
        sys.exit(1)


@main.command()
@click.option("--q", "qname", default="sl2", show_default=True)
@click.option("--p", "ptxt", required=True, help="modulus for the quotient bracket")
@click.option("--p2", "p2txt", default=None,
              help="second modulus: measure the difference bracket instead")
@click.option("--seed", default=0, show_default=True)
@_guard
def index(qname, ptxt, p2txt, seed):
    """Sampled index of a quotient or difference bracket."""
    q = builtin_algebra(qname)
    p = parse_poly(ptxt)
    if p2txt is None:
        T = make_quotient(q, p)
        label = f"quotient by {ptxt}"
    else:
        T = make_difference_bracket(q, p, parse_poly(p2txt))
        label = f"difference of {ptxt} and {p2txt}"
    rep = index_report(T, seed=seed)
    click.echo(f"bracket: {label}")
    click.echo(f"dim: {rep.dim}  rank: {rep.rank}  index: {rep.index}")
    click.echo(f"seed: {rep.seed}  bound: {rep.bound}  rounds: {rep.rounds}")


@main.command()
@click.option("--p", "ptxt", required=True, help="modulus that splits over Q")
@_guard
def crt(ptxt):
    """Idempotent decomposition of a split modulus."""
    p = parse_poly(ptxt)
    rd = rational_roots(p)
    if rd is None:
        raise InputError(f"{ptxt} does not split over Q")
    roots = tuple(r for r, _ in rd)
    if any(m != 1 for _, m in rd):
        raise InputError(f"{ptxt} has repeated roots; idempotents need distinct roots")
    idems = crt_idempotents(p, roots)
    ok = True
    for r, e in zip(roots, idems):
        sq = (e * e - e).mod(p).is_zero()
        ok = ok and sq
        click.echo(f"root {rat_str(r)}: r = {e}  idempotent: {'ok' if sq else 'FAIL'}")
    total = idems[0]
    for e in idems[1:]:
        total = total + e
    s1 = (total - parse_poly("1")).mod(p).is_zero()
    click.echo(f"sum to one: {'ok' if s1 else 'FAIL'}")
    if not ok or not s1:
        sys.exit(1)


@main.group()
def zz():
    """Build and verify the joint-center subalgebra of a pencil."""


def _z_common(qname, p1txt, p2txt, samples, seed):
    q = builtin_algebra(qname)
    pen = Pencil(q, parse_poly(p1txt), parse_poly(p2txt))
    return build_Z(pen, sample_count=samples, seed=seed)


@zz.command("build")
@click.option("--q", "qname", default="sl2", show_default=True)
@click.option("--p1", "p1txt", required=True)
@click.option("--p2", "p2txt", required=True)
@click.option("--samples", default=None, type=int, help="member count (default d*n+3)")
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "json"]))
@_guard
def zz_build(qname, p1txt, p2txt, samples, seed, fmt):
    """Assemble generators from member centers and report the counts."""
    Z = _z_common(qname, p1txt, p2txt, samples, seed)
    payload = {
        "algebra": qname,
        "p1": p1txt,
        "p2": p2txt,
        "seed": seed,
        "samples": [rat_str(a) for a in Z.samples],
        "counts": {str(i): c for i, c in Z.counts().items()},
        "expected_counts": {str(i): c for i, c in Z.expected_counts().items()},
        "generators": len(Z.gens),
        "normalization": {
            k: rat_str(v) if hasattr(v, "denominator") else v
            for k, v in Z.attrs["normalization"].items()
        },
    }
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        click.echo(f"pencil: {p1txt} / {p2txt} over {qname}")
        click.echo(f"members sampled: {len(Z.samples)}")
        for i in sorted(Z.basis):
            click.echo(
                f"invariant {i}: {len(Z.basis[i])} independent generators "
                f"(expected {Z.expected_counts()[i]})"
            )


@zz.command("verify")
@click.option("--q", "qname", default="sl2", show_default=True)
@click.option("--p1", "p1txt", required=True)
@click.option("--p2", "p2txt", required=True)
@click.option("--samples", default=None, type=int)
@click.option("--seed", default=0, show_default=True)
@_guard
def zz_verify(qname, p1txt, p2txt, samples, seed):
    """Build, then check commutativity and the sampled transcendence degree."""
    Z = _z_common(qname, p1txt, p2txt, samples, seed)
    commutes = verify_Z_commutes(Z)
    rep = trdeg_of_Z(Z, seed=seed)
    counts_ok = Z.counts() == Z.expected_counts()
    click.echo(f"counts: {Z.counts()} expected {Z.expected_counts()} "
               f"{'ok' if counts_ok else 'FAIL'}")
    click.echo(f"commutes: {'ok' if commutes else 'FAIL'}")
    click.echo(f"trdeg: {rep.rank} (seed {rep.seed}, bound {rep.bound}, "
               f"rounds {rep.rounds})")
    if not commutes or not counts_ok:
        sys.exit(1)


@main.command()
@click.option("--q", "qname", default="sl2", show_default=True)
@click.option("--z", "ztxt", required=True, help="comma separated points, e.g. '1,2,5'")
@_guard
def gaudin(qname, ztxt):
    """Pairwise commutativity and zero sum of the quadratic elements."""
    q = builtin_algebra(qname)
    z = [rat(tok) for tok in ztxt.split(",") if tok.strip()]
    H = gaudin_hamiltonians(q, z)
    T = make_direct_power(q, len(z))
    commute = all(
        poisson_bracket(H[i], H[j], T).is_zero()
        for i in range(len(H))
        for j in range(i + 1, len(H))
    )
    total = MPoly.zero()
    for Hk in H:
        total = total + Hk
    click.echo(f"copies: {len(z)}  commute: {'ok' if commute else 'FAIL'}  "
               f"sum zero: {'ok' if total.is_zero() else 'FAIL'}")
    if not commute or not total.is_zero():
        sys.exit(1)


@main.group()
def suite():
    """Named verification suites."""


@suite.command("list")
@_guard
def suite_list():
    for name in SUITE_NAMES:
        click.echo(name)


@suite.command("run")
@click.argument("name")
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "markdown"]))
@click.option("--params", "params_txt", default=None,
              help="JSON object overriding suite defaults")
@_guard
def suite_run(name, seed, fmt, params_txt):
    """Run one suite and print its report."""
    params = None
    if params_txt is not None:
        try:
            params = json.loads(params_txt)
        except json.JSONDecodeError as exc:
            raise InputError(f"--params is not valid JSON: {exc}")
        if not isinstance(params, dict):
            raise InputError("--params must be a JSON object")
    t0 = time.time()
    rep = run_suite(name, params=params, seed=seed)
    elapsed = time.time() - t0
    if fmt == "json":
        click.echo(canonical_json(rep))
    else:
        click.echo(report_markdown(rep, elapsed=elapsed))
    if not rep.ok:
        sys.exit(1)
