"""Hom-Nijenhuis operators and the one-parameter deformations they generate.

Bilinear maps ``L x L -> L`` are handled as full tables ``table[i][j]`` of
coordinate vectors.  The deformation parameter t is formal: every check
compares coefficient tables degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .algebra import (
    HomLieError,
    HomLieSuperalgebra,
    NotRegularError,
    hom_jacobi_defect,
)
from .cohomology import coboundary_ds, cochain_basis
from .graded import CochainTable, GradedMap, bilinear_table, cochain_from_bilinear, sign
from .linalg import Matrix, as_matrix, is_zero_vector, vec_add, vec_sub, vector


class NotNijenhuisError(HomLieError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


def _operator(L: HomLieSuperalgebra, N) -> Matrix:
    m = N.matrix if isinstance(N, GradedMap) else as_matrix(N, L.dim)
    GradedMap(m, L.basis, L.basis)
    if m @ L.alpha != L.alpha @ m:
        raise HomLieError("operator does not commute with alpha")
    return m


def table_zero(table) -> bool:
    return all(is_zero_vector(v) for row in table for v in row)


def bracket_table(L: HomLieSuperalgebra) -> list:
    return [[L.bracket_basis(i, j) for j in range(L.dim)] for i in range(L.dim)]


def apply_bilinear(table, x: Sequence, y: Sequence, n: int):
    acc = [Fraction(0)] * n
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if a:
            for j, b in ys:
                for k, z in enumerate(table[i][j]):
                    if z:
                        acc[k] += a * b * z
    return tuple(acc)


def deformed_bracket(L: HomLieSuperalgebra, N) -> list:
    """Table of ``[u, v]_N = [Nu, v] + [u, Nv] - N[u, v]``."""
    m = _operator(L, N)
    n = L.dim
    images = [m.column(i) for i in range(n)]
    return [[vec_sub(vec_add(L.bracket(images[i], L.unit(j)), L.bracket(L.unit(i), images[j])),
                     m.apply(L.bracket_basis(i, j)))
             for j in range(n)] for i in range(n)]


def nijenhuis_defect(L: HomLieSuperalgebra, N) -> list:
    """Table of ``[Ne_i, Ne_j] - N[e_i, e_j]_N``."""
    m = _operator(L, N)
    n = L.dim
    bn = deformed_bracket(L, m)
    images = [m.column(i) for i in range(n)]
    return [[vec_sub(L.bracket(images[i], images[j]), m.apply(bn[i][j])) for j in range(n)]
            for i in range(n)]


def is_hom_nijenhuis(L: HomLieSuperalgebra, N) -> tuple[bool, list]:
    """``(verdict, defect table)``; the defect table is all zero iff the verdict is true."""
    defect = nijenhuis_defect(L, N)
    return table_zero(defect), defect


@dataclass
class DeformationFamily:
    """``[u, v]_t = [u, v] + t psi(u, v)`` together with its verdicts.

    ``jacobi_psi`` is the quadratic condition (psi is itself a hom-Lie
    bracket), ``closed`` is ``d_{-1} psi = 0``; ``linear_condition`` is the
    linear condition written out directly, kept as a cross-check of ``closed``.
    """

    algebra: HomLieSuperalgebra
    psi: list
    jacobi_psi: bool
    closed: bool
    linear_condition: bool
    twist_multiplicative: bool
    jacobi_defects: list = field(default_factory=list)
    closed_defect: object = None

    @property
    def is_deformation(self) -> bool:
        return self.jacobi_psi and self.closed

    def bracket_at(self, t) -> HomLieSuperalgebra:
        L = self.algebra
        t = Fraction(t)
        c = [[vec_add(L.bracket_basis(i, j), tuple(t * x for x in self.psi[i][j]))
              for j in range(L.dim)] for i in range(L.dim)]
        return L.with_structure(c, name=f"{L.name}_t={t}")


def _check_psi(L: HomLieSuperalgebra, psi) -> list:
    n = L.dim
    psi = [[vector(psi[i][j]) for j in range(n)] for i in range(n)]
    cochain_from_bilinear(psi, L.parities, L.parities)  # even and super-skew, or ValueError
    for i in range(n):
        for j in range(n):
            lhs = L.twist(psi[i][j])
            rhs = apply_bilinear(psi, L.twist(L.unit(i)), L.twist(L.unit(j)), n)
            if lhs != rhs:
                raise HomLieError("psi does not commute with alpha")
    return psi


def make_deformation(L: HomLieSuperalgebra, psi) -> DeformationFamily:
    if not L.is_regular:
        raise NotRegularError(f"{L.name} is not regular")
    psi = _check_psi(L, psi)
    n, p = L.dim, L.parities
    P = lambda x, y: apply_bilinear(psi, x, y, n)  # noqa: E731
    a, b = L.twist, L.bracket

    quad, lin = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                u, v, w = L.unit(i), L.unit(j), L.unit(k)
                pu, pv, pw = p[i], p[j], p[k]
                q = [sign(pu * pw) * x for x in P(a(u), P(v, w))]
                q = vec_add(q, [sign(pv * pu) * x for x in P(a(v), P(w, u))])
                q = vec_add(q, [sign(pw * pv) * x for x in P(a(w), P(u, v))])
                if not is_zero_vector(q):
                    quad.append((i, j, k, q))
                terms = [
                    (sign(pu * pw), vec_add(P(a(u), b(v, w)), b(a(u), P(v, w)))),
                    (sign(pv * pu), vec_add(P(a(v), b(w, u)), b(a(v), P(w, u)))),
                    (sign(pw * pv), vec_add(P(a(w), b(u, v)), b(a(w), P(u, v)))),
                ]
                ln = tuple(sum((s * t[r] for s, t in terms), Fraction(0)) for r in range(n))
                if not is_zero_vector(ln):
                    lin.append((i, j, k, ln))

    table = cochain_from_bilinear(psi, p, p)
    d = coboundary_ds(L, -1, table)
    return DeformationFamily(
        algebra=L, psi=psi, jacobi_psi=not quad, closed=d.is_zero(),
        linear_condition=not lin,
        # degree 0 is multiplicativity of L, degree 1 is psi o alpha = alpha o psi
        twist_multiplicative=L.is_multiplicative,
        jacobi_defects=quad, closed_defect=d,
    )


@dataclass
class PolyBracketDefect:
    """Coefficients of ``T_t[u,v]_t - [T_t u, T_t v]`` in t^0, t^1, t^2."""

    coefficients: list

    @property
    def is_zero(self) -> bool:
        return all(table_zero(c) for c in self.coefficients)


def _poly_mul_map(m_coeffs: list, v_coeffs: list, n: int) -> list:
    """``(sum_a t^a M_a)(sum_b t^b v_b)`` as a list of coefficient vectors."""
    out = [[Fraction(0)] * n for _ in range(len(m_coeffs) + len(v_coeffs) - 1)]
    for da, M in enumerate(m_coeffs):
        for db, v in enumerate(v_coeffs):
            for r, x in enumerate(M.apply(v)):
                out[da + db][r] += x
    return [tuple(c) for c in out]


def _poly_bracket(L: HomLieSuperalgebra, xs: list, ys: list) -> list:
    n = L.dim
    out = [[Fraction(0)] * n for _ in range(len(xs) + len(ys) - 1)]
    for da, x in enumerate(xs):
        for db, y in enumerate(ys):
            for r, z in enumerate(L.bracket(x, y)):
                out[da + db][r] += z
    return [tuple(c) for c in out]


def trivial_deformation_defect(L: HomLieSuperalgebra, N, psi) -> PolyBracketDefect:
    """Expand ``(Id + tN)([u,v] + t psi(u,v)) - [(Id + tN)u, (Id + tN)v]``."""
    m = _operator(L, N)
    n = L.dim
    T = [Matrix.identity(n), m]
    coeffs = [[[None] * n for _ in range(n)] for _ in range(3)]
    for i in range(n):
        for j in range(n):
            lhs = _poly_mul_map(T, [L.bracket_basis(i, j), vector(psi[i][j])], n)
            tu = [T[0].apply(L.unit(i)), T[1].apply(L.unit(i))]
            tv = [T[0].apply(L.unit(j)), T[1].apply(L.unit(j))]
            rhs = _poly_bracket(L, tu, tv)
            for d in range(3):
                coeffs[d][i][j] = vec_sub(lhs[d], rhs[d])
    return PolyBracketDefect(coeffs)


def check_trivial_deformation(L: HomLieSuperalgebra, N) -> PolyBracketDefect:
    """The defect polynomial for ``psi = [., .]_N``; raises if N is not hom-Nijenhuis."""
    ok, defect = is_hom_nijenhuis(L, N)
    if not ok:
        raise NotNijenhuisError("operator is not hom-Nijenhuis", defect=defect)
    return trivial_deformation_defect(L, N, deformed_bracket(L, N))


def d_minus_one_table(L: HomLieSuperalgebra, N) -> list:
    """``d_{-1} N`` as a full bilinear table, N viewed as a 1-cochain."""
    m = _operator(L, N)
    entries = {(i,): m.column(i) for i in range(L.dim)}
    f = CochainTable(1, L.parities, L.parities, 0, entries)
    return bilinear_table(coboundary_ds(L, -1, f))


def deformation_jacobi_holds(family: DeformationFamily, t) -> bool:
    """Direct hom-Jacobi check of ``[., .]_t`` at a concrete t (a sampling cross-check)."""
    D = family.bracket_at(t)
    p = D.parities
    return all(
        is_zero_vector(hom_jacobi_defect(D, D.unit(i), D.unit(j), D.unit(k), p[i], p[j], p[k]))
        for i in range(D.dim) for j in range(D.dim) for k in range(D.dim)
    )


def operator_space(L: HomLieSuperalgebra) -> list:
    """Basis (as matrices) of even operators commuting with alpha."""
    n = L.dim
    return [Matrix.from_columns([f.evaluate((i,)) for i in range(n)], n)
            for f in cochain_basis(L, None, 1)]


def search_nijenhuis(L: HomLieSuperalgebra, coefficients=(-1, 0, 1),
                     skip_scalar: bool = True) -> Iterator[Matrix]:
    """Enumerate hom-Nijenhuis operators with small coordinates in ``operator_space``.

    With ``skip_scalar`` the multiples of the identity are left out.  The
    search is exhaustive, ``len(coefficients) ** dim`` candidates, so slice
    the iterator on larger algebras.
    """
    basis = operator_space(L)
    n = L.dim
    for coords in product(coefficients, repeat=len(basis)):
        m = Matrix.zeros(n, n)
        for c, b in zip(coords, basis):
            if c:
                m = m + b.scale(c)
        if skip_scalar and m == Matrix.identity(n).scale(m[0, 0]):
            continue
        if is_hom_nijenhuis(L, m)[0]:
            yield m
