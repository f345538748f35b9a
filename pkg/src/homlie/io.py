"""JSON documents for algebras, forms, operators, subspaces and dual-valued cochains.

Scalars are always strings ``"p/q"`` (or ``"p"`` for integers) in lowest
terms.  Serialization sorts keys and indents by two spaces, so a document
written by :func:`dump_algebra` parses and re-serializes byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Union

from .algebra import HomLieSuperalgebra, Subspace
from .graded import GradedBasis
from .linalg import Matrix, format_scalar, is_zero_vector, parse_scalar
from .tstar import BilinearForm, DualValuedTwoForm, OneCochainToDual

FIELD = "rational"


class DocumentError(ValueError):
    """Malformed input; ``location`` is a JSON path such as ``brackets[2].coeffs``."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON ({exc.msg})", f"line {exc.lineno}") from None


def _scalar(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(f"expected a 'p/q' string, got {x!r}", where)
    try:
        return parse_scalar(x) if isinstance(x, str) else Fraction(x)
    except ValueError as exc:
        raise DocumentError(str(exc), where) from None


def _index(x, n: int, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        raise DocumentError(f"index {x!r} out of range 0..{n - 1}", where)
    return x


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise DocumentError("expected an object", where)
    if key not in doc:
        raise DocumentError(f"missing key {key!r}", where)
    return doc[key]


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise DocumentError("expected a list", where)
    return x


def _matrix(rows, n: int, m: int, where: str) -> Matrix:
    rows = _list(rows, where)
    if len(rows) != n:
        raise DocumentError(f"expected {n} rows, got {len(rows)}", where)
    out = []
    for r, row in enumerate(rows):
        row = _list(row, f"{where}[{r}]")
        if len(row) != m:
            raise DocumentError(f"expected {m} entries, got {len(row)}", f"{where}[{r}]")
        out.append([_scalar(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)])
    return Matrix(out, m)


def _format_matrix(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m.rows]


# -- algebras --------------------------------------------------------------

def algebra_to_dict(L: HomLieSuperalgebra, form: Optional[BilinearForm] = None) -> dict:
    n = L.dim
    brackets = []
    for i in range(n):
        for j in range(n):
            v = L.bracket_basis(i, j)
            if not is_zero_vector(v):
                brackets.append({
                    "i": i, "j": j,
                    "coeffs": {str(k): format_scalar(x) for k, x in enumerate(v) if x},
                })
    doc = {
        "name": L.name,
        "field": FIELD,
        "basis": [{"name": nm, "parity": p} for nm, p in zip(L.basis.names, L.parities)],
        "alpha": _format_matrix(L.alpha),
        "brackets": brackets,
    }
    if form is not None:
        doc["form"] = _format_matrix(form.gram)
    return doc


def dump_algebra(L: HomLieSuperalgebra, form: Optional[BilinearForm] = None) -> str:
    return dumps(algebra_to_dict(L, form))


def algebra_from_dict(doc: Any) -> tuple:
    """``(algebra, form or None)``; raises :class:`DocumentError` on malformed input.

    The bracket table is taken exactly as written: pairs not listed are zero
    and no skew-completion happens, so a corrupted file stays corrupted.
    """
    name = _field(doc, "name", "$")
    if not isinstance(name, str):
        raise DocumentError("expected a string", "name")
    if _field(doc, "field", "$") != FIELD:
        raise DocumentError(f"only the field {FIELD!r} is supported", "field")
    basis = _list(_field(doc, "basis", "$"), "basis")
    names, parities = [], []
    for a, entry in enumerate(basis):
        where = f"basis[{a}]"
        nm = _field(entry, "name", where)
        par = _field(entry, "parity", where)
        if not isinstance(nm, str):
            raise DocumentError("name must be a string", f"{where}.name")
        if par not in (0, 1) or isinstance(par, bool):
            raise DocumentError("parity must be 0 or 1", f"{where}.parity")
        names.append(nm)
        parities.append(par)
    n = len(names)
    try:
        gb = GradedBasis(names, parities)
    except ValueError as exc:
        raise DocumentError(str(exc), "basis") from None
    alpha = _matrix(_field(doc, "alpha", "$"), n, n, "alpha")
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for t, entry in enumerate(_list(_field(doc, "brackets", "$"), "brackets")):
        where = f"brackets[{t}]"
        i = _index(_field(entry, "i", where), n, f"{where}.i")
        j = _index(_field(entry, "j", where), n, f"{where}.j")
        if (i, j) in seen:
            raise DocumentError(f"pair ({i}, {j}) listed twice", where)
        seen.add((i, j))
        coeffs = _field(entry, "coeffs", where)
        if not isinstance(coeffs, dict):
            raise DocumentError("expected an object", f"{where}.coeffs")
        for key, x in coeffs.items():
            try:
                k = int(key)
            except ValueError:
                raise DocumentError(f"bad index key {key!r}", f"{where}.coeffs") from None
            _index(k, n, f"{where}.coeffs")
            table[i][j][k] = _scalar(x, f"{where}.coeffs.{key}")
    try:
        L = HomLieSuperalgebra(gb, table, alpha, name)
    except ValueError as exc:
        raise DocumentError(str(exc), "brackets") from None
    form = None
    if "form" in doc:
        form = BilinearForm(_matrix(doc["form"], n, n, "form"))
    return L, form


def load_algebra(text: str) -> tuple:
    return algebra_from_dict(_loads(text))


# -- cochains, operators, subspaces ----------------------------------------

def omega_to_dict(omega: DualValuedTwoForm) -> dict:
    return {"omega": [{"i": i, "j": j, "k": k, "value": format_scalar(v)}
                      for i, j, k, v in omega.entries()]}


def omega_from_dict(doc: Any, parities) -> DualValuedTwoForm:
    n = len(parities)
    entries = []
    for t, e in enumerate(_list(_field(doc, "omega", "$"), "omega")):
        where = f"omega[{t}]"
        entries.append((
            _index(_field(e, "i", where), n, f"{where}.i"),
            _index(_field(e, "j", where), n, f"{where}.j"),
            _index(_field(e, "k", where), n, f"{where}.k"),
            _scalar(_field(e, "value", where), f"{where}.value"),
        ))
    try:
        return DualValuedTwoForm.from_entries(parities, entries)
    except ValueError as exc:
        raise DocumentError(str(exc), "omega") from None


def z_to_dict(z: OneCochainToDual) -> dict:
    return {"z": [{"i": i, "k": k, "value": format_scalar(v)} for i, k, v in z.entries()]}


def z_from_dict(doc: Any, parities) -> OneCochainToDual:
    n = len(parities)
    vals = [[Fraction(0)] * n for _ in range(n)]
    for t, e in enumerate(_list(_field(doc, "z", "$"), "z")):
        where = f"z[{t}]"
        i = _index(_field(e, "i", where), n, f"{where}.i")
        k = _index(_field(e, "k", where), n, f"{where}.k")
        vals[i][k] = _scalar(_field(e, "value", where), f"{where}.value")
    try:
        return OneCochainToDual(parities, vals)
    except ValueError as exc:
        raise DocumentError(str(exc), "z") from None


def matrix_to_dict(m: Matrix) -> dict:
    return {"matrix": _format_matrix(m)}


def matrix_from_dict(doc: Any, n: int, m: Optional[int] = None) -> Matrix:
    return _matrix(_field(doc, "matrix", "$"), n, n if m is None else m, "matrix")


def vectors_to_dict(S: Union[Subspace, list]) -> dict:
    vecs = S.basis if isinstance(S, Subspace) else S
    return {"vectors": [[format_scalar(x) for x in v] for v in vecs]}


def subspace_from_dict(doc: Any, n: int) -> Subspace:
    rows = _list(_field(doc, "vectors", "$"), "vectors")
    vecs = _matrix(rows, len(rows), n, "vectors").rows if rows else []
    return Subspace.span(vecs, n)


def bilinear_to_dict(table, key: str = "psi") -> dict:
    """Sparse ``[{i, j, coeffs}]`` for a full bilinear table of vectors."""
    out = []
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not is_zero_vector(v):
                out.append({"i": i, "j": j,
                            "coeffs": {str(k): format_scalar(x) for k, x in enumerate(v) if x}})
    return {key: out}


def bilinear_from_dict(doc: Any, n: int, key: str = "psi") -> list:
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for t, e in enumerate(_list(_field(doc, key, "$"), key)):
        where = f"{key}[{t}]"
        i = _index(_field(e, "i", where), n, f"{where}.i")
        j = _index(_field(e, "j", where), n, f"{where}.j")
        coeffs = _field(e, "coeffs", where)
        if not isinstance(coeffs, dict):
            raise DocumentError("expected an object", f"{where}.coeffs")
        for kk, x in coeffs.items():
            try:
                k = int(kk)
            except ValueError:
                raise DocumentError(f"bad index key {kk!r}", f"{where}.coeffs") from None
            _index(k, n, f"{where}.coeffs")
            table[i][j][k] = _scalar(x, f"{where}.coeffs.{kk}")
    return [[tuple(v) for v in row] for row in table]


def load_json(text: str) -> Any:
    return _loads(text)
