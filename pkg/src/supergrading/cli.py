"""Command-line interface: construct, verify, iso, census and skew.

Exit codes: 0 success, 1 usage, 2 parse error, 3 admissibility or
parameter violation, 4 verification failure.
"""

from __future__ import annotations

import sys

import click

from .abelian import GroupError, parse_group
from .classify import FAMILIES, CensusError, TypeIPair, enumerate_census, is_isomorphic
from .division import DivisionError, verify_division
from .forms import AdmissibilityError, SuperinvolutionRep, is_super_hermitian, superadjunction_rep
from .graded_matrix import is_graded_simple
from .lie import LIE_FAMILIES, LieError, is_graded_simple_lie, lie_from_params, skew
from .superalgebra import CheckResult
from .textio import (
    ParseError,
    ValidationError,
    document_kind,
    emit_algebra,
    emit_form,
    emit_result,
    params_to_dict,
    parse_algebra,
    parse_form,
    parse_params,
)

EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_VERIFY = 1, 2, 3, 4

CHECKS = ("division", "grading", "associativity", "unit", "anticommutativity", "jacobi", "simplicity",
          "superinvolution")

_ALIASES = {
    "meven": "m-even", "modd": "m-odd", "q": "q", "mstar": "m-star", "mexeven": "mex-even",
    "mexodd": "mex-odd", "qex": "qex", "qexplus": "qex", "typei": "type-i",
}


class VerificationFailed(Exception):
    pass


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def family_tag(name: str) -> str:
    """Case-insensitive family names: 'Q', 'MEven', 'm_even' and 'm-even' all work."""
    key = name.lower().replace("-", "").replace("_", "")
    if key not in _ALIASES:
        raise click.UsageError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return _ALIASES[key]


@click.group()
def cli():
    """Gradings on simple associative and Lie superalgebras."""


@cli.command()
@click.option("--family", required=True, type=click.Choice(list(FAMILIES)[:-1] + list(LIE_FAMILIES)))
@click.option("--params", "params_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
@click.option("--phi-out", default=None, type=click.Path(dir_okay=False), help="Also write the form matrix.")
def construct(family, params_path, out_path, phi_out):
    """Build the algebra described by a parameter document."""
    p = parse_params(_read(params_path))
    phi = Phi = None
    if family in LIE_FAMILIES:
        inner = p.inner if isinstance(p, TypeIPair) else p
        A = lie_from_params(inner)
        if A.meta.get("family") != family:
            raise ValidationError(f"these parameters belong to family {A.meta.get('family')}, not {family}")
    else:
        if p.family != family:
            raise ValidationError(f"document family is {p.family}, not {family}")
        built = p.build()
        if isinstance(built, tuple):
            A, phi = built
        elif hasattr(built, "phi"):
            A, phi, Phi = built.algebra, built.phi, built.phi_matrix
        else:
            A = built
    _write(out_path, emit_algebra(A, phi))
    if phi_out is not None:
        if Phi is None:
            raise click.UsageError("--phi-out needs an involutive family with a form matrix")
        _write(phi_out, emit_form(Phi))


def _as_check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), detail)


def run_checks(A, phi: SuperinvolutionRep | None, names: list[str]) -> list[CheckResult]:
    out = []
    lie = A.kind == "lie"
    for name in names:
        if name == "division":
            out.append(_as_check(name, not lie and verify_division(A)))
        elif name == "grading":
            out.append(A.check_grading())
        elif name == "associativity":
            out.append(A.check_associativity() if not lie else _as_check(name, False, "Lie algebra"))
        elif name == "unit":
            out.append(A.check_unit() if not lie else _as_check(name, False, "Lie algebra"))
        elif name == "anticommutativity":
            out.append(A.check_super_anticommutativity() if lie else _as_check(name, False, "not a Lie algebra"))
        elif name == "jacobi":
            out.append(A.check_jacobi() if lie else _as_check(name, False, "not a Lie algebra"))
        elif name == "simplicity":
            if lie:
                verdict = is_graded_simple_lie(A)
                out.append(_as_check(name, verdict != "false", verdict))
            else:
                out.append(_as_check(name, A.unit is not None and is_graded_simple(A)))
        elif name == "superinvolution":
            if phi is None:
                out.append(_as_check(name, False, "no involution in the dump"))
            else:
                bad = [c for c in phi.checks() if not c.ok]
                out.append(_as_check(name, not bad, "; ".join(f"{c.name}: {c.detail}" for c in bad)))
    return out


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--checks", "checks", default="grading,associativity",
              help=f"Comma-separated subset of: {', '.join(CHECKS)}.")
def verify(path, checks):
    """Run checks on an algebra dump; exit 4 if any fails."""
    names = [c.strip() for c in checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown or not names:
        raise click.UsageError(f"unknown check {unknown[0] if unknown else ''!r}; expected {', '.join(CHECKS)}")
    A, phi = parse_algebra(_read(path))
    results = run_checks(A, phi, names)
    report = {"checks": [{"check": r.name if r.name in CHECKS else n, "ok": r.ok, "detail": r.detail}
                         for n, r in zip(names, results)]}
    report["ok"] = all(r.ok for r in results)
    click.echo(emit_result(report), nl=False)
    if not report["ok"]:
        raise VerificationFailed()


@cli.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
def iso(first, second):
    """Decide whether two parameter documents give isomorphic gradings."""
    p, q = parse_params(_read(first)), parse_params(_read(second))
    res = is_isomorphic(p, q)
    rec = {
        "isomorphic": bool(res.isomorphic),
        "witness": str(res.witness) if res.witness is not None else None,
        "branch": res.branch,
    }
    click.echo(emit_result(rec), nl=False)


@cli.command()
@click.option("--family", required=True)
@click.option("--group", "group_spec", required=True)
@click.option("--dim", required=True, type=click.IntRange(min=1))
@click.option("--shape", default=None, help="Restrict to M(m,n) shape, written 'm,n'.")
def census(family, group_spec, dim, shape):
    """Canonical representatives of all isomorphism classes."""
    fam = family_tag(family)
    try:
        G = parse_group(group_spec)
    except GroupError as exc:
        raise ParseError(str(exc), "--group") from None
    sh = None
    if shape is not None:
        try:
            m, n = (int(x) for x in shape.split(","))
        except ValueError:
            raise click.UsageError("--shape is written 'm,n'") from None
        sh = (m, n)
    reps = enumerate_census(fam, G, dim, sh)
    rec = {"family": fam, "group": str(G), "dim": dim}
    if sh is not None:
        rec["shape"] = list(sh)
    rec["count"] = len(reps)
    rec["classes"] = [params_to_dict(p, header=False) for p in reps]
    click.echo(emit_result(rec), nl=False)


@cli.command(name="skew")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--phi", "phi_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def skew_cmd(path, phi_path, out_path):
    """Skew elements of a superinvolution as a Lie dump.

    PATH is a parameter document of an involutive family and --phi a form
    document over its division algebra, or PATH is an associative dump and
    --phi a dump of the same algebra carrying an involution.
    """
    if document_kind(_read(path)) == "params":
        p = parse_params(_read(path))
        built = p.build()
        if not hasattr(built, "model"):
            raise ValidationError(f"family {p.family} carries no form matrix")
        D = built.model.D
        Phi = parse_form(_read(phi_path), D)
        bad = Phi.check_degrees()
        if not bad.ok:
            raise ValidationError(bad.detail, "form degrees")
        if is_super_hermitian(Phi, D.eta) is None:
            raise ValidationError("the form is not super-Hermitian or skew-super-Hermitian", "super-Hermitian")
        phi = superadjunction_rep(Phi, D.eta)
        A = phi.algebra
    else:
        A, _ = parse_algebra(_read(path))
        B, phi0 = parse_algebra(_read(phi_path))
        if phi0 is None or B.dim != A.dim:
            raise ParseError("the --phi dump must carry an involution of the same algebra", "involution")
        phi = SuperinvolutionRep(A, phi0.images, "dump")
    bad = [c for c in phi.checks() if not c.ok]
    if bad:
        click.echo(emit_result({"ok": False, "failed": [f"{c.name}: {c.detail}" for c in bad]}), err=True, nl=False)
        raise VerificationFailed()
    _write(out_path, emit_algebra(skew(A, phi)))


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns (and with sys.exit, raises) the exit code."""
    try:
        cli.main(args=argv, prog_name="supergrading", standalone_mode=False)
        code = 0
    except click.exceptions.Exit as exc:
        code = exc.exit_code
    except click.Abort:
        code = EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        code = EXIT_USAGE
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        code = EXIT_PARSE
    except (ValidationError, AdmissibilityError, LieError, DivisionError, CensusError, GroupError) as exc:
        cond = getattr(exc, "condition", None)
        click.echo(f"invalid input{f' ({cond})' if cond else ''}: {exc}", err=True)
        code = EXIT_INVALID
    except VerificationFailed:
        code = EXIT_VERIFY
    return code


if __name__ == "__main__":
    sys.exit(main())
