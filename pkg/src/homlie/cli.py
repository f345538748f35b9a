"""Command line front end: ``homlie <command> ALGEBRA [options]``.

ALGEBRA is a path to a JSON document or ``fixture:NAME``.  Exit codes: 0 for
an affirmative verdict, 1 for a negative one (with a witness in the report),
2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import fixtures
from .algebra import (
    HomLieError,
    derived_series,
    lower_central_series,
    nilpotent_length,
    solvable_length,
    upper_central_series,
    validate,
)
from .cohomology import cohomology_dims
from .io import (
    DocumentError,
    algebra_to_dict,
    bilinear_from_dict,
    dumps,
    load_algebra,
    load_json,
    matrix_from_dict,
    matrix_to_dict,
    omega_from_dict,
    omega_to_dict,
    subspace_from_dict,
    z_to_dict,
)
from .linalg import format_scalar
from .nijenhuis import (
    check_trivial_deformation,
    deformed_bracket,
    is_hom_nijenhuis,
    make_deformation,
)
from .tstar import (
    DualValuedTwoForm,
    QuadraticHomLieSuperalgebra,
    decide_equivalence,
    decide_isometric_equivalence,
    dual_subspace,
    recognize_t_star,
    symmetric_part_form,
    t_star_extend,
)

MAX_K = 3


class InputError(Exception):
    pass


# -- input -----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_source(spec: str) -> tuple:
    """``(algebra, form or None)`` from a path or ``fixture:NAME``."""
    if spec.startswith("fixture:"):
        try:
            text = fixtures.document_text(spec[len("fixture:"):])
        except (FileNotFoundError, OSError):
            raise InputError(f"unknown fixture {spec!r}; known: {', '.join(fixtures.FIXTURE_NAMES)}") from None
    else:
        text = _read(spec)
    return load_algebra(text)


def _load_doc(path: str):
    return load_json(_read(path))


def _omega(arg: Optional[str], L) -> DualValuedTwoForm:
    if arg is None or arg == "zero":
        return DualValuedTwoForm.zero(L.parities)
    return omega_from_dict(_load_doc(arg), L.parities)


def _names(L, v) -> dict:
    return {L.basis.names[k]: format_scalar(x) for k, x in enumerate(v) if x}


def _table_entries(L, table) -> list:
    n = L.dim
    out = []
    for i in range(n):
        for j in range(n):
            if any(table[i][j]):
                out.append({"pair": [L.basis.names[i], L.basis.names[j]],
                            "value": _names(L, table[i][j])})
    return out


# -- commands --------------------------------------------------------------

def cmd_validate(args) -> tuple:
    L, _ = load_source(args.algebra)
    r = validate(L)
    nm = L.basis.names
    report = {
        "algebra": L.name,
        "dim": L.dim,
        "skew": r.skew,
        "hom_jacobi": r.hom_jacobi,
        "multiplicative": r.multiplicative,
        "regular": r.regular,
    }
    if r.skew_violations:
        i, j, d = r.skew_violations[0]
        report["first_skew_violation"] = {"pair": [nm[i], nm[j]], "defect": _names(L, d),
                                          "indices": [i, j]}
    if r.jacobi_violations:
        i, j, k, d = r.jacobi_violations[0]
        report["first_jacobi_violation"] = {"triple": [nm[i], nm[j], nm[k]], "defect": _names(L, d),
                                            "indices": [i, j, k]}
    if r.multiplicative_violations:
        i, j, d = r.multiplicative_violations[0]
        report["first_multiplicative_violation"] = {"pair": [nm[i], nm[j]], "defect": _names(L, d)}
    return report, 0 if r.ok else 1


def cmd_cohomology(args) -> tuple:
    if not 0 <= args.k <= MAX_K:
        raise InputError(f"--k must lie in 0..{MAX_K}")
    L, _ = load_source(args.algebra)
    parities = (0, 1) if args.parity == "both" else (int(args.parity),)
    try:
        res = cohomology_dims(L, args.s, args.k, parities)
    except HomLieError as exc:
        return {"algebra": L.name, "error": str(exc)}, 1
    report = {"algebra": L.name, "s": args.s, "parity": args.parity}
    report.update(res.as_dict())
    return report, 0


def cmd_nijenhuis(args) -> tuple:
    L, _ = load_source(args.algebra)
    N = matrix_from_dict(_load_doc(args.operator), L.dim)
    try:
        ok, defect = is_hom_nijenhuis(L, N)
    except (ValueError, HomLieError) as exc:
        raise InputError(f"operator: {exc}") from None
    report = {"algebra": L.name, "hom_nijenhuis": ok}
    if not ok:
        report["defect"] = _table_entries(L, defect)
        return report, 1
    report["deformed_bracket"] = _table_entries(L, deformed_bracket(L, N))
    poly = check_trivial_deformation(L, N)
    report["trivial_deformation_defect"] = {
        f"t^{d}": _table_entries(L, c) for d, c in enumerate(poly.coefficients)}
    report["trivial_deformation_zero"] = poly.is_zero
    if L.is_regular:
        fam = make_deformation(L, deformed_bracket(L, N))
        report["jacobi_psi"] = fam.jacobi_psi
        report["closed"] = fam.closed
    return report, 0 if poly.is_zero else 1


def cmd_deform(args) -> tuple:
    L, _ = load_source(args.algebra)
    psi = bilinear_from_dict(_load_doc(args.psi), L.dim)
    try:
        fam = make_deformation(L, psi)
    except (ValueError, HomLieError) as exc:
        raise InputError(f"psi: {exc}") from None
    report = {
        "algebra": L.name,
        "jacobi_psi": fam.jacobi_psi,
        "closed": fam.closed,
        "linear_condition": fam.linear_condition,
        "twist_multiplicative": fam.twist_multiplicative,
        "deformation": fam.is_deformation,
    }
    if fam.jacobi_defects:
        i, j, k, d = fam.jacobi_defects[0]
        nm = L.basis.names
        report["first_jacobi_psi_violation"] = {"triple": [nm[i], nm[j], nm[k]], "defect": _names(L, d)}
    return report, 0 if fam.is_deformation else 1


def cmd_series(args) -> tuple:
    L, _ = load_source(args.algebra)
    return {
        "algebra": L.name,
        "derived_dims": [S.dim for S in derived_series(L)],
        "lower_central_dims": [S.dim for S in lower_central_series(L)],
        "upper_central_dims": [S.dim for S in upper_central_series(L)],
        "solvable_length": solvable_length(L),
        "nilpotent_length": nilpotent_length(L),
    }, 0


def _write_or_embed(report: dict, key: str, text_doc: dict, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(dumps(text_doc), encoding="utf-8")
        report[f"{key}_written_to"] = output
    else:
        report[key] = text_doc


def cmd_tstar(args) -> tuple:
    L, form = load_source(args.algebra)
    action = args.action
    if action == "build":
        omega = _omega(args.omega, L)
        try:
            T = t_star_extend(L, omega)
        except HomLieError as exc:
            return {"algebra": L.name, "error": str(exc),
                    "hypothesis": getattr(exc, "hypothesis", None)}, 1
        report = {"algebra": L.name, "dim": T.dim, "form_properties": T.properties().as_dict()}
        _write_or_embed(report, "document", algebra_to_dict(T.algebra, T.form), args.output)
        return report, 0
    if action == "recognize":
        if form is None:
            raise InputError("recognize needs a document with a 'form'")
        Lq = QuadraticHomLieSuperalgebra(L, form)
        if args.ideal in (None, "dualspan"):
            if L.dim % 2:
                raise InputError("dualspan needs an even-dimensional algebra")
            I = dual_subspace(L.dim // 2)
        else:
            I = subspace_from_dict(_load_doc(args.ideal), L.dim)
        try:
            rec = recognize_t_star(Lq, I)
        except (HomLieError, ValueError) as exc:
            return {"algebra": L.name, "error": str(exc)}, 1
        report = {"algebra": L.name, "phi": matrix_to_dict(rec.phi.matrix)["matrix"]}
        report["omega"] = omega_to_dict(rec.omega)["omega"]
        _write_or_embed(report, "base", algebra_to_dict(rec.base), args.output)
        return report, 0
    if action in ("equiv", "isoequiv"):
        w1 = _omega(args.omega, L)
        w2 = _omega(args.omega2, L)
        decide = decide_equivalence if action == "equiv" else decide_isometric_equivalence
        try:
            z = decide(L, w1, w2)
        except HomLieError as exc:
            return {"algebra": L.name, "error": str(exc)}, 1
        report = {"algebra": L.name, "equivalent": z is not None}
        if z is None:
            return report, 1
        report["z"] = z_to_dict(z)["z"]
        report["symmetric_part"] = [[format_scalar(x) for x in row]
                                    for row in symmetric_part_form(L, z).gram.rows]
        return report, 0
    raise InputError(f"unknown tstar action {action!r}")


# -- plumbing --------------------------------------------------------------

def render_text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif value is None:
            value = "none"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlie", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("algebra", help="document path or fixture:NAME")
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "check the hom-Lie axioms")
    p = command("cohomology", cmd_cohomology, "dimensions for the alpha^s-adjoint complex")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--parity", choices=("0", "1", "both"), default="both")
    p = command("nijenhuis", cmd_nijenhuis, "test a hom-Nijenhuis operator")
    p.add_argument("--operator", required=True, help='JSON file {"matrix": ...}')
    p = command("deform", cmd_deform, "test a linear deformation [.,.] + t psi")
    p.add_argument("--psi", required=True, help='JSON file {"psi": [{i, j, coeffs}]}')
    command("series", cmd_series, "derived and central series")
    p = command("tstar", cmd_tstar, "T*-extensions")
    p.add_argument("action", choices=("build", "recognize", "equiv", "isoequiv"))
    p.add_argument("--omega", help="omega file or 'zero'")
    p.add_argument("--omega2", help="second omega file or 'zero'")
    p.add_argument("--ideal", help="ideal file {\"vectors\": ...} or 'dualspan'")
    p.add_argument("--output", help="write the produced document here")
    return parser


def _normalize_tstar(argv: list) -> list:
    """Accept ``tstar build ALGEBRA`` as well as ``tstar ALGEBRA build``."""
    actions = {"build", "recognize", "equiv", "isoequiv"}
    if "tstar" in argv:
        t = argv.index("tstar")
        rest = argv[t + 1:]
        if rest and rest[0] in actions and len(rest) > 1:
            argv = argv[:t + 1] + [rest[1], rest[0]] + rest[2:]
    return argv


def main(argv: Optional[list] = None) -> int:
    argv = _normalize_tstar(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (InputError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
