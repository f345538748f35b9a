"""Invariant bilinear forms, T*-extensions and their recognition and equivalence.

The T*-extension of L lives on ``L + L*`` with basis ``e_1..e_n, e*_1..e*_n``;
the dual vector ``e*_k`` has the parity of ``e_k``.  A dual vector is stored
as its values on ``e_1..e_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .algebra import (
    HomLieError,
    HomLieSuperalgebra,
    NotIdealError,
    Subspace,
    direct_sum,
    graded_complement,
    is_abelian,
    is_bracket_ideal,
    is_ideal,
    is_morphism,
    is_twist_stable,
    quotient,
    validate,
)
from .cohomology import coadjoint
from .graded import EVEN, GradedBasis, GradedMap, canonicalize_tuple, sign
from .linalg import (
    Matrix,
    Vector,
    as_matrix,
    dot,
    inverse,
    is_zero_vector,
    kernel_basis,
    rank,
    solve,
    unit_vector,
    vector,
    zero_vector,
)

# f(x, y) = PLUS * (-1)^{|x||y|} f(y, x) is the convention under which the
# hyperbolic form of a T*-extension is supersymmetric; MINUS is the other reading.
PLUS, MINUS = 1, -1


class TStarError(HomLieError):
    """A hypothesis of the T*-construction failed; ``hypothesis`` names it."""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class LemmaViolation(HomLieError):
    pass


# -- bilinear forms --------------------------------------------------------

@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    def __post_init__(self):
        g = as_matrix(self.gram)
        if g.nrows != g.ncols:
            raise ValueError("gram matrix must be square")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.gram.apply(y))

    def orthogonal(self, S: Subspace) -> Subspace:
        """``{x : f(s, x) = 0 for s in S}``."""
        if not S.basis:
            return Subspace.full(self.dim)
        rows = [self.gram.T.apply(s) for s in S.basis]
        return Subspace.span(kernel_basis(Matrix(rows, self.dim)), self.dim)


@dataclass
class FormProperties:
    nondegenerate: bool
    invariant: bool
    supersymmetric: bool
    superconsistent: bool
    invariance_defects: list = field(default_factory=list)

    @property
    def all(self) -> bool:
        return self.nondegenerate and self.invariant and self.supersymmetric and self.superconsistent

    def as_dict(self) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "invariant": self.invariant,
            "supersymmetric": self.supersymmetric,
            "superconsistent": self.superconsistent,
        }


def invariance_defects(L: HomLieSuperalgebra, B: BilinearForm) -> list:
    """Triples ``(i, j, k, f([e_i,e_j],e_k) - f(e_i,[e_j,e_k]))`` that are nonzero."""
    n = L.dim
    out = []
    for i in range(n):
        for j in range(n):
            left = B.gram.T.apply(L.bracket_basis(i, j))
            for k in range(n):
                d = left[k] - B(L.unit(i), L.bracket_basis(j, k))
                if d:
                    out.append((i, j, k, d))
    return out


def form_properties(L: HomLieSuperalgebra, B: BilinearForm, convention: int = PLUS) -> FormProperties:
    n, p = L.dim, L.parities
    if B.dim != n:
        raise ValueError(f"form has size {B.dim}, algebra has dimension {n}")
    g = B.gram
    consistent = all(g[i, j] == 0 for i in range(n) for j in range(n) if (p[i] + p[j]) % 2)
    symmetric = all(
        g[j, i] == convention * sign(p[i] * p[j]) * g[i, j]
        for i in range(n) for j in range(n) if (p[i] + p[j]) % 2 == 0
    )
    inv = invariance_defects(L, B)
    return FormProperties(rank(g) == n, not inv, symmetric, consistent, inv)


def is_isotropic(B: BilinearForm, S: Subspace) -> bool:
    return all(B(s, t) == 0 for s in S.basis for t in S.basis)


@dataclass(frozen=True)
class QuadraticHomLieSuperalgebra:
    """An algebra with a nondegenerate invariant supersymmetric superconsistent form."""

    algebra: HomLieSuperalgebra
    form: BilinearForm
    check: bool = True

    def __post_init__(self):
        if self.check:
            props = form_properties(self.algebra, self.form)
            if not props.all:
                bad = [k for k, v in props.as_dict().items() if not v]
                raise HomLieError(f"form is not {', '.join(bad)}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def properties(self, convention: int = PLUS) -> FormProperties:
        return form_properties(self.algebra, self.form, convention)


# -- dual-valued cochains --------------------------------------------------

@dataclass(frozen=True)
class DualValuedTwoForm:
    """``omega[i][j]``: the dual vector ``omega(e_i, e_j)``, even and super-skew."""

    parities: tuple
    values: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parities)
        n = len(p)
        vals = tuple(tuple(vector(self.values[i][j]) for j in range(n)) for i in range(n))
        if len(self.values) != n or any(len(v) != n for row in vals for v in row):
            raise ValueError("omega must be an n x n table of length-n dual vectors")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if vals[i][j][k] and (p[i] + p[j] + p[k]) % 2:
                        raise ValueError(f"omega is not even at ({i}, {j}, {k})")
                    if vals[j][i][k] != -sign(p[i] * p[j]) * vals[i][j][k]:
                        raise ValueError(f"omega is not super-skew at ({i}, {j})")
        object.__setattr__(self, "parities", p)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.parities)

    @classmethod
    def zero(cls, parities: Sequence[int]) -> "DualValuedTwoForm":
        n = len(parities)
        return cls(parities, [[zero_vector(n)] * n for _ in range(n)])

    @classmethod
    def from_entries(cls, parities: Sequence[int], entries: Iterable) -> "DualValuedTwoForm":
        """Build from ``(i, j, k, value)`` entries, completing by super-skewness.

        An entry and its mirrored partner may both be given if they agree.
        """
        p = tuple(parities)
        n = len(p)
        table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        seen = {}
        for i, j, k, value in entries:
            value = Fraction(value)
            canon = canonicalize_tuple((i, j), p)
            if canon is None:
                if value:
                    raise ValueError(f"omega({i}, {i}) must vanish for an even index")
                continue
            (a, b), s = canon
            key = (a, b, k)
            if key in seen and seen[key] != s * value:
                raise ValueError(f"conflicting values for omega at ({i}, {j}, {k})")
            seen[key] = s * value
        for (a, b, k), v in seen.items():
            table[a][b][k] = v
            table[b][a][k] = -sign(p[a] * p[b]) * v
        return cls(p, table)

    def entries(self) -> list:
        """Nonzero ``(i, j, k, value)`` with ``(i, j)`` canonical."""
        p, n = self.parities, self.dim
        out = []
        for i in range(n):
            for j in range(i, n):
                if i == j and p[i] == EVEN:
                    continue
                for k in range(n):
                    if self.values[i][j][k]:
                        out.append((i, j, k, self.values[i][j][k]))
        return out

    def __call__(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        acc = [Fraction(0)] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, z in enumerate(self.values[i][j]):
                            if z:
                                acc[k] += a * b * z
        return tuple(acc)

    def coordinates(self) -> list:
        return [self.values[i][j][k] for i in range(self.dim) for j in range(self.dim)
                for k in range(self.dim)]

    def __add__(self, other: "DualValuedTwoForm") -> "DualValuedTwoForm":
        return combine_forms([(1, self), (1, other)], self.parities)

    def __sub__(self, other: "DualValuedTwoForm") -> "DualValuedTwoForm":
        return combine_forms([(1, self), (-1, other)], self.parities)

    def is_zero(self) -> bool:
        return all(is_zero_vector(v) for row in self.values for v in row)


def combine_forms(terms: Iterable[tuple], parities: Sequence[int]) -> DualValuedTwoForm:
    n = len(parities)
    acc = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for c, w in terms:
        for i in range(n):
            for j in range(n):
                for k, x in enumerate(w.values[i][j]):
                    if x:
                        acc[i][j][k] += c * x
    return DualValuedTwoForm(parities, acc)


@dataclass(frozen=True)
class OneCochainToDual:
    """``z[i]``: the dual vector ``z(e_i)``; even, so ``z[i][k] = 0`` unless ``p_i = p_k``."""

    parities: tuple
    values: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parities)
        n = len(p)
        vals = tuple(vector(v) for v in self.values)
        if len(vals) != n or any(len(v) != n for v in vals):
            raise ValueError("z must be n dual vectors of length n")
        for i in range(n):
            for k in range(n):
                if vals[i][k] and p[i] != p[k]:
                    raise ValueError(f"z is not even at ({i}, {k})")
        object.__setattr__(self, "parities", p)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.parities)

    @classmethod
    def zero(cls, parities: Sequence[int]) -> "OneCochainToDual":
        n = len(parities)
        return cls(parities, [zero_vector(n)] * n)

    def __call__(self, x: Sequence) -> Vector:
        n = self.dim
        acc = [Fraction(0)] * n
        for i, a in enumerate(x):
            if a:
                for k, z in enumerate(self.values[i]):
                    acc[k] += a * z
        return tuple(acc)

    def entries(self) -> list:
        return [(i, k, v) for i, row in enumerate(self.values) for k, v in enumerate(row) if v]

    def symmetric_part(self) -> list:
        """``z_s(e_i)(e_j) = (z(e_i)(e_j) + (-1)^{p_i p_j} z(e_j)(e_i)) / 2``."""
        p, n = self.parities, self.dim
        return [[(self.values[i][j] + sign(p[i] * p[j]) * self.values[j][i]) / 2 for j in range(n)]
                for i in range(n)]


def even_pairs(parities: Sequence[int]) -> list:
    """Unknown slots ``(i, k)`` of an even ``z``."""
    n = len(parities)
    return [(i, k) for i in range(n) for k in range(n) if parities[i] == parities[k]]


def z_from_coordinates(parities: Sequence[int], coords: Sequence) -> OneCochainToDual:
    n = len(parities)
    vals = [[Fraction(0)] * n for _ in range(n)]
    for (i, k), x in zip(even_pairs(parities), coords, strict=True):
        vals[i][k] = Fraction(x)
    return OneCochainToDual(parities, vals)


# -- supercyclicity and the cocycle identity -------------------------------

def supercyclic_residual(L: HomLieSuperalgebra, omega: DualValuedTwoForm) -> list:
    """``omega(x,y)(z) - (-1)^{|x|(|y|+|z|)} omega(y,z)(x)`` over basis triples."""
    p, n, w = L.parities, L.dim, omega.values
    return [w[i][j][k] - sign(p[i] * (p[j] + p[k])) * w[j][k][i]
            for i in range(n) for j in range(n) for k in range(n)]


def is_supercyclic(L: HomLieSuperalgebra, omega: DualValuedTwoForm) -> bool:
    _require_shape(L, omega)
    return not any(supercyclic_residual(L, omega))


def cocycle_residual(L: HomLieSuperalgebra, omega: DualValuedTwoForm, pi=None) -> list:
    """The cocycle identity for ``omega`` with coefficients in the coadjoint module,
    as a flat list of values on basis triples ``(x, y, z)``."""
    pi = coadjoint(L) if pi is None else pi
    p, n = L.parities, L.dim
    a, b = L.twist, L.bracket
    out = []
    for i in range(n):
        x, ax = L.unit(i), a(L.unit(i))
        for j in range(n):
            y, ay = L.unit(j), a(L.unit(j))
            for k in range(n):
                z, az = L.unit(k), a(L.unit(k))
                terms = [
                    (1, pi.act(ax, omega(y, z))),
                    (-sign(p[i] * p[j]), pi.act(ay, omega(x, z))),
                    (sign((p[i] + p[j]) * p[k]), pi.act(az, omega(x, y))),
                    (1, omega(ax, b(y, z))),
                    (sign(p[j] * p[k]), omega(b(x, z), ay)),
                    (-1, omega(b(x, y), az)),
                ]
                out.extend(sum((c * v[r] for c, v in terms), Fraction(0)) for r in range(n))
    return out


def is_two_cocycle_dual(L: HomLieSuperalgebra, omega: DualValuedTwoForm) -> bool:
    _require_shape(L, omega)
    return not any(cocycle_residual(L, omega))


def twist_residual(L: HomLieSuperalgebra, omega: DualValuedTwoForm) -> list:
    """``omega(alpha x, alpha y) - omega(x, y) o alpha``; zero iff the extension's
    twist is multiplicative on pairs from L."""
    n = L.dim
    at = L.alpha.T
    out = []
    for i in range(n):
        for j in range(n):
            lhs = omega(L.twist(L.unit(i)), L.twist(L.unit(j)))
            rhs = at.apply(omega.values[i][j])
            out.extend(u - v for u, v in zip(lhs, rhs))
    return out


def _require_shape(L: HomLieSuperalgebra, omega: DualValuedTwoForm) -> None:
    if omega.parities != L.parities:
        raise ValueError("omega does not match the algebra's parities")


def two_form_slots(parities: Sequence[int]) -> list:
    """Free coordinates ``(i, j, k)`` of an even super-skew dual-valued 2-form."""
    n = len(parities)
    return [(i, j, k) for i in range(n) for j in range(i, n) for k in range(n)
            if not (i == j and parities[i] == EVEN) and (parities[i] + parities[j] + parities[k]) % 2 == 0]


def form_from_coordinates(parities: Sequence[int], coords: Sequence) -> DualValuedTwoForm:
    slots = two_form_slots(parities)
    return DualValuedTwoForm.from_entries(
        parities, [(i, j, k, x) for (i, j, k), x in zip(slots, coords, strict=True)])


def _constrained_space(L: HomLieSuperalgebra, residuals) -> list:
    slots = two_form_slots(L.parities)
    units = [form_from_coordinates(L.parities, unit_vector(len(slots), u)) for u in range(len(slots))]
    if not units:
        return []
    cols = [sum((list(r(w)) for r in residuals), []) for w in units]
    if not cols[0]:
        return units
    m = Matrix.from_columns(cols, len(cols[0]))
    return [form_from_coordinates(L.parities, v) for v in kernel_basis(m)]


def supercyclic_space(L: HomLieSuperalgebra, alpha_compatible: bool = False) -> list:
    res = [lambda w: supercyclic_residual(L, w)]
    if alpha_compatible:
        res.append(lambda w: twist_residual(L, w))
    return _constrained_space(L, res)


def cocycle_space(L: HomLieSuperalgebra, alpha_compatible: bool = False) -> list:
    pi = coadjoint(L)
    res = [lambda w: cocycle_residual(L, w, pi)]
    if alpha_compatible:
        res.append(lambda w: twist_residual(L, w))
    return _constrained_space(L, res)


def supercyclic_cocycle_space(L: HomLieSuperalgebra, alpha_compatible: bool = False) -> list:
    """Basis of ``{omega : supercyclic and a 2-cocycle}`` (optionally also twist-compatible)."""
    pi = coadjoint(L)
    res = [lambda w: supercyclic_residual(L, w), lambda w: cocycle_residual(L, w, pi)]
    if alpha_compatible:
        res.append(lambda w: twist_residual(L, w))
    return _constrained_space(L, res)


# -- the T*-extension ------------------------------------------------------

def hyperbolic_form(parities: Sequence[int]) -> BilinearForm:
    """``q(x + f, y + g) = f(y) + (-1)^{|x||y|} g(x)`` on ``L + L*``."""
    n = len(parities)
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = Fraction(sign(parities[i]))
        rows[n + i][i] = Fraction(1)
    return BilinearForm(Matrix(rows, 2 * n))


def t_star_algebra(L: HomLieSuperalgebra, omega: DualValuedTwoForm, name: Optional[str] = None,
                   pi=None) -> HomLieSuperalgebra:
    """The bracket and twist on ``L + L*`` without checking any hypothesis."""
    _require_shape(L, omega)
    pi = coadjoint(L, check=False) if pi is None else pi
    n, p = L.dim, L.parities
    zero = zero_vector(n)
    c = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            c[i][j] = L.bracket_basis(i, j) + omega.values[i][j]
            # [e_i, e*_k] = pi(e_i) e*_k
            c[i][n + j] = zero + pi.rho[i].column(j)
            # [e*_k, e_j] = -(-1)^{p_k p_j} pi(e_j) e*_k
            c[n + i][j] = zero + tuple(-sign(p[i] * p[j]) * x for x in pi.rho[j].column(i))
            c[n + i][n + j] = zero + zero
    basis = GradedBasis(list(L.basis.names) + [f"{nm}*" for nm in L.basis.names], p + p)
    alpha = Matrix.block_diag(L.alpha, L.alpha.T)
    return HomLieSuperalgebra(basis, c, alpha, name or f"T*({L.name})")


def t_star_extend(L: HomLieSuperalgebra, omega: Optional[DualValuedTwoForm] = None,
                  check: bool = True, name: Optional[str] = None) -> QuadraticHomLieSuperalgebra:
    """``T*_omega L`` with its hyperbolic form; ``omega=None`` means ``omega = 0``."""
    if omega is None:
        omega = DualValuedTwoForm.zero(L.parities)
    pi = coadjoint(L, check=check)
    if check:
        if not is_supercyclic(L, omega):
            raise TStarError("omega is not supercyclic (form invariance would fail)", "supercyclic")
        if any(cocycle_residual(L, omega, pi)):
            raise TStarError("omega is not a 2-cocycle (hom-Jacobi would fail)", "cocycle")
    T = t_star_algebra(L, omega, name, pi)
    if check:
        report = validate(T)
        if not report.ok:
            raise TStarError(f"{T.name} fails the hom-Lie axioms", "axioms")
    return QuadraticHomLieSuperalgebra(T, hyperbolic_form(L.parities), check=check)


def dual_subspace(n: int) -> Subspace:
    """``L*`` inside ``L + L*``."""
    return Subspace.span([unit_vector(2 * n, n + k) for k in range(n)], 2 * n)


def base_subspace(n: int) -> Subspace:
    return Subspace.span([unit_vector(2 * n, k) for k in range(n)], 2 * n)


# -- half-dimensional isotropic ideals ------------------------------------

def _require_half_isotropic(Lq: QuadraticHomLieSuperalgebra, I: Subspace) -> None:
    n = Lq.dim
    if n % 2:
        raise ValueError(f"dimension {n} is odd")
    if I.ambient != n or I.dim != n // 2:
        raise ValueError(f"subspace has dimension {I.dim}, expected {n // 2}")
    if not I.is_graded(Lq.algebra.parities):
        raise ValueError("subspace is not graded")
    if not is_isotropic(Lq.form, I):
        raise ValueError("subspace is not isotropic")


def half_dim_isotropic_ideal_lemma_check(Lq: QuadraticHomLieSuperalgebra, I: Subspace) -> tuple:
    """``(is_ideal, is_abelian)`` for a graded isotropic subspace of half dimension.

    Here ideal means ``[I, L] <= I``; the two flags must agree, otherwise
    :class:`LemmaViolation` is raised.
    """
    _require_half_isotropic(Lq, I)
    ideal = is_bracket_ideal(Lq.algebra, I)
    abelian = is_abelian(Lq.algebra, I)
    if ideal != abelian:
        raise LemmaViolation(f"ideal={ideal} but abelian={abelian}")
    return ideal, abelian


def search_isotropic_coordinate_subspaces(Lq: QuadraticHomLieSuperalgebra) -> list:
    """Half-dimensional isotropic subspaces spanned by basis vectors (graded by construction)."""
    n = Lq.dim
    out = []
    for idx in combinations(range(n), n // 2):
        S = Subspace.span([unit_vector(n, i) for i in idx], n)
        if is_isotropic(Lq.form, S):
            out.append(S)
    return out


# -- recognition -----------------------------------------------------------

@dataclass
class Recognition:
    base: HomLieSuperalgebra
    omega: DualValuedTwoForm
    phi: GradedMap
    extension: QuadraticHomLieSuperalgebra
    complement: list

    def __iter__(self):
        return iter((self.base, self.omega, self.phi))


def isotropic_complement(Lq: QuadraticHomLieSuperalgebra, I: Subspace) -> list:
    """A graded isotropic complement ``B0 = {w + h(w)}`` of the isotropic ``I``.

    ``W`` is a complement of standard basis vectors and ``h : W -> I`` is even,
    solving ``q(w_a, w_b) + q(w_a, h w_b) + q(h w_a, w_b) = 0``.
    """
    q, p = Lq.form, Lq.algebra.parities
    W = graded_complement(I)
    ibasis = list(I.basis)
    par = lambda v: {p[i] for i, x in enumerate(v) if x}  # noqa: E731
    if any(len(par(v)) != 1 for v in ibasis):
        raise ValueError("ideal basis is not homogeneous")
    wpar = [par(w).pop() for w in W]
    ipar = [par(v).pop() for v in ibasis]
    unknowns = [(a, c) for a in range(len(W)) for c in range(len(ibasis)) if wpar[a] == ipar[c]]
    rows, rhs = [], []
    for a in range(len(W)):
        for b in range(len(W)):
            row = []
            for (u, c) in unknowns:
                coeff = Fraction(0)
                if u == b:
                    coeff += q(W[a], ibasis[c])
                if u == a:
                    coeff += q(ibasis[c], W[b])
                row.append(coeff)
            rows.append(row)
            rhs.append(-q(W[a], W[b]))
    if unknowns:
        sol = solve(Matrix(rows, len(unknowns)), rhs)
        if sol is None:
            raise HomLieError("no isotropic complement found; is I maximal isotropic?")
    else:
        sol = ()
    B0 = [list(w) for w in W]
    for (a, c), x in zip(unknowns, sol):
        if x:
            for r, y in enumerate(ibasis[c]):
                B0[a][r] += x * y
    B0 = [vector(b) for b in B0]
    if any(q(x, y) for x in B0 for y in B0):
        raise HomLieError("complement construction failed to be isotropic")
    return B0


def recognize_t_star(Lq: QuadraticHomLieSuperalgebra, I: Subspace,
                     name: Optional[str] = None) -> Recognition:
    """Exhibit ``Lq`` as a T*-extension of ``Lq / I``.

    ``I`` must be a graded isotropic ideal of half the dimension with
    ``alpha(I) <= I``.  The returned map ``phi : Lq -> T*_omega B`` is checked
    to be a morphism and an isometry; a failure raises :class:`TStarError`.
    """
    _require_half_isotropic(Lq, I)
    L = Lq.algebra
    if not is_bracket_ideal(L, I):
        raise NotIdealError("I is not an ideal")
    if not is_twist_stable(L, I):
        raise NotIdealError("I is not stable under the twist")
    q = Lq.form
    B0 = isotropic_complement(Lq, I)
    W = graded_complement(I)
    names = [L.basis.names[w.index(1)] for w in W]
    B, proj = quotient(L, I, complement=B0, name=name or f"{L.name}/I", names=names)
    m = B.dim
    entries = []
    for a in range(m):
        for b in range(m):
            br = L.bracket(B0[a], B0[b])
            for c in range(m):
                v = q(br, B0[c])
                if v:
                    entries.append((a, b, c, v))
    omega = DualValuedTwoForm.from_entries(B.parities, entries)

    change = Matrix.from_columns(list(B0) + list(I.basis), L.dim)
    change_inv = inverse(change)
    cols = []
    for r in range(L.dim):
        coords = change_inv.apply(unit_vector(L.dim, r))
        ipart = [Fraction(0)] * L.dim
        for c, x in enumerate(coords[m:]):
            for t, y in enumerate(I.basis[c]):
                ipart[t] += x * y
        dual = tuple(q(ipart, B0[c]) for c in range(m))
        cols.append(tuple(coords[:m]) + dual)
    try:
        T = t_star_extend(B, omega, name=f"T*({B.name})")
    except HomLieError as exc:
        raise TStarError(f"recovered data do not form a T*-extension: {exc}", "recognition") from exc
    phi = GradedMap(Matrix.from_columns(cols, 2 * m), L.basis, T.algebra.basis)
    if not is_morphism(phi, L, T.algebra):
        raise TStarError("recovered map is not a morphism", "morphism")
    if not is_isometry(phi.matrix, q, T.form):
        raise TStarError("recovered map is not an isometry", "isometry")
    return Recognition(B, omega, phi, T, B0)


def is_isometry(m: Matrix, q1: BilinearForm, q2: BilinearForm) -> bool:
    return m.T @ q2.gram @ m == q1.gram


# -- equivalence of extensions ---------------------------------------------

def coboundary_image(L: HomLieSuperalgebra, z: OneCochainToDual, pi=None) -> DualValuedTwoForm:
    """``(x, y) -> pi(x) z(y) - (-1)^{|x||y|} pi(y) z(x) - z([x, y])``."""
    pi = coadjoint(L) if pi is None else pi
    n, p = L.dim, L.parities
    vals = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            t1 = pi.act(L.unit(i), z.values[j])
            t2 = pi.act(L.unit(j), z.values[i])
            t3 = z(L.bracket_basis(i, j))
            s = sign(p[i] * p[j])
            vals[i][j] = tuple(a - s * b - c for a, b, c in zip(t1, t2, t3))
    return DualValuedTwoForm(p, vals)


def z_twist_residual(L: HomLieSuperalgebra, z: OneCochainToDual) -> list:
    """``z(alpha x) - z(x) o alpha``; zero iff ``x + f -> x + z(x) + f`` commutes with the twists."""
    at = L.alpha.T
    out = []
    for i in range(L.dim):
        out.extend(a - b for a, b in zip(z(L.twist(L.unit(i))), at.apply(z.values[i])))
    return out


def z_skew_residual(L: HomLieSuperalgebra, z: OneCochainToDual) -> list:
    """``z(e_i)(e_j) + (-1)^{p_i p_j} z(e_j)(e_i)``, i.e. twice the symmetric part."""
    p, n = L.parities, L.dim
    return [z.values[i][j] + sign(p[i] * p[j]) * z.values[j][i] for i in range(n) for j in range(n)]


def _z_system(L: HomLieSuperalgebra, isometric: bool, pi) -> tuple:
    """Columns (one per unknown) of the linear map ``z -> (image, twist rows[, skew rows])``."""
    p = L.parities
    pairs = even_pairs(p)
    cols = []
    for u in range(len(pairs)):
        z = z_from_coordinates(p, unit_vector(len(pairs), u))
        col = coboundary_image(L, z, pi).coordinates() + z_twist_residual(L, z)
        if isometric:
            col += z_skew_residual(L, z)
        cols.append(col)
    return pairs, cols


def equivalence_system(L: HomLieSuperalgebra, omega1: DualValuedTwoForm, omega2: DualValuedTwoForm,
                       isometric: bool = False, pi=None) -> tuple:
    """``(matrix, rhs)`` of the linear system whose solutions are the admissible ``z``."""
    pi = coadjoint(L) if pi is None else pi
    pairs, cols = _z_system(L, isometric, pi)
    n = L.dim
    diff = (omega1 - omega2).coordinates()
    extra = n * n + (n * n if isometric else 0)
    rhs = diff + [Fraction(0)] * extra
    m = Matrix.from_columns(cols, len(rhs)) if cols else Matrix.zeros(len(rhs), 0)
    return m, rhs


def _check_pair(L, omega1, omega2, pi) -> None:
    for w in (omega1, omega2):
        _require_shape(L, w)
        if not is_supercyclic(L, w):
            raise TStarError("omega is not supercyclic", "supercyclic")
        if any(cocycle_residual(L, w, pi)):
            raise TStarError("omega is not a 2-cocycle", "cocycle")


def equivalence_map(L: HomLieSuperalgebra, z: OneCochainToDual) -> Matrix:
    """``x + f -> x + z(x) + f`` on ``L + L*``."""
    n = L.dim
    cols = [unit_vector(n, i) + z.values[i] for i in range(n)]
    cols += [unit_vector(2 * n, n + k) for k in range(n)]
    return Matrix.from_columns(cols, 2 * n)


def _decide(L, omega1, omega2, isometric: bool) -> Optional[OneCochainToDual]:
    pi = coadjoint(L)
    _check_pair(L, omega1, omega2, pi)
    m, rhs = equivalence_system(L, omega1, omega2, isometric, pi)
    if m.ncols == 0:
        sol = () if not any(rhs) else None
    else:
        sol = solve(m, rhs)
    if sol is None:
        return None
    z = z_from_coordinates(L.parities, sol)
    T1 = t_star_algebra(L, omega1, pi=pi)
    T2 = t_star_algebra(L, omega2, pi=pi)
    phi = equivalence_map(L, z)
    if not is_morphism(phi, T1, T2):
        raise HomLieError("internal error: solution does not induce a morphism")
    q = hyperbolic_form(L.parities)
    if isometric and not is_isometry(phi, q, q):
        raise HomLieError("internal error: solution does not induce an isometry")
    return z


def decide_equivalence(L: HomLieSuperalgebra, omega1: DualValuedTwoForm,
                       omega2: DualValuedTwoForm) -> Optional[OneCochainToDual]:
    """An even ``z`` with ``omega1 - omega2 = pi(x)z(y) - (-1)^{|x||y|}pi(y)z(x) - z([x,y])``
    and ``z(alpha x) = z(x) o alpha``, or ``None``.

    A returned ``z`` is verified to give an isomorphism
    ``T*_omega1 L -> T*_omega2 L`` fixing ``L*`` pointwise.
    """
    return _decide(L, omega1, omega2, isometric=False)


def decide_isometric_equivalence(L: HomLieSuperalgebra, omega1: DualValuedTwoForm,
                                 omega2: DualValuedTwoForm) -> Optional[OneCochainToDual]:
    """As :func:`decide_equivalence` with the symmetric part of ``z`` forced to vanish."""
    return _decide(L, omega1, omega2, isometric=True)


def symmetric_part_form(L: HomLieSuperalgebra, z: OneCochainToDual) -> BilinearForm:
    if z.parities != L.parities:
        raise ValueError("z does not match the algebra")
    return BilinearForm(Matrix(z.symmetric_part(), L.dim))


def admissible_z_space(L: HomLieSuperalgebra) -> list:
    """Even, twist-compatible ``z`` whose coboundary image is supercyclic.

    These are the ``z`` for which ``omega + image(z)`` stays a valid input to
    the equivalence deciders.
    """
    p = L.parities
    pi = coadjoint(L)
    pairs = even_pairs(p)
    cols = []
    for u in range(len(pairs)):
        z = z_from_coordinates(p, unit_vector(len(pairs), u))
        cols.append(z_twist_residual(L, z) + supercyclic_residual(L, coboundary_image(L, z, pi)))
    if not cols:
        return []
    m = Matrix.from_columns(cols, len(cols[0]))
    return [z_from_coordinates(p, v) for v in kernel_basis(m)]


# -- direct sums -----------------------------------------------------------

def t_star_direct_sum_check(I_alg: HomLieSuperalgebra, J_alg: HomLieSuperalgebra) -> dict:
    """Inside ``T*_0(I + J)``: are ``I + I*`` and ``J + J*`` ideals spanning everything,
    and does each carry the bracket of ``T*_0 I`` resp. ``T*_0 J``?"""
    S = direct_sum(I_alg, J_alg)
    T = t_star_extend(S).algebra
    a, b = I_alg.dim, J_alg.dim
    n = a + b
    idx_i = list(range(a)) + [n + k for k in range(a)]
    idx_j = list(range(a, n)) + [n + k for k in range(a, n)]
    SI = Subspace.span([unit_vector(2 * n, r) for r in idx_i], 2 * n)
    SJ = Subspace.span([unit_vector(2 * n, r) for r in idx_j], 2 * n)
    emb_i = Matrix.from_columns([unit_vector(2 * n, r) for r in idx_i], 2 * n)
    emb_j = Matrix.from_columns([unit_vector(2 * n, r) for r in idx_j], 2 * n)
    TI = t_star_extend(I_alg).algebra
    TJ = t_star_extend(J_alg).algebra
    return {
        "I_ideal": is_ideal(T, SI),
        "J_ideal": is_ideal(T, SJ),
        "spanning": (SI + SJ).dim == 2 * n and SI.dim + SJ.dim == 2 * n,
        "I_embeds": is_morphism(emb_i, TI, T),
        "J_embeds": is_morphism(emb_j, TJ, T),
    }
