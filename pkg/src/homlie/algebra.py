"""Hom-Lie superalgebras given by structure constants, and their substructures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .graded import GradedBasis, GradedMap, is_even_map, sign
from .linalg import (
    Matrix,
    Vector,
    as_matrix,
    in_span,
    inverse,
    is_zero_vector,
    kernel_basis,
    span_basis,
    unit_vector,
    vec_sub,
    vector,
    zero_vector,
)


class HomLieError(Exception):
    """Base class for precondition failures in this package."""


class NotRegularError(HomLieError):
    """A negative power of the twist was needed but the twist is not invertible."""


class NotMultiplicativeError(HomLieError):
    pass


class NotIdealError(HomLieError):
    pass


class HomLieSuperalgebra:
    """A finite-dimensional graded algebra with twist ``alpha``.

    ``structure[i][j]`` is the coordinate vector of ``[e_i, e_j]``; it must be
    given for every ordered pair.  The bracket and the twist are required to be
    even; the hom-Lie identities themselves are checked by :func:`validate`.
    """

    def __init__(self, basis: GradedBasis, structure, alpha, name: str = "L"):
        self.basis = basis
        self.name = name
        n = basis.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                v = vector(structure[i][j])
                if len(v) != n:
                    raise ValueError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {n}")
                pij = (basis.parities[i] + basis.parities[j]) % 2
                for k, x in enumerate(v):
                    if x and basis.parities[k] != pij:
                        raise ValueError(
                            f"bracket is not even: [{basis.names[i]},{basis.names[j]}] "
                            f"has a component along {basis.names[k]}")
                row.append(v)
            rows.append(tuple(row))
        self._c = tuple(rows)
        self.alpha = as_matrix(alpha, n) if n else Matrix.zeros(0, 0)
        if self.alpha.shape != (n, n):
            raise ValueError(f"twist has shape {self.alpha.shape}, expected {(n, n)}")
        if not is_even_map(self.alpha, basis.parities, basis.parities):
            raise ValueError("twist is not even")

    @classmethod
    def from_brackets(cls, names, parities, brackets: Mapping, alpha=None,
                      name: str = "L", complete_skew: bool = True) -> "HomLieSuperalgebra":
        """Build from sparse data ``{(i, j): {k: coeff}}``.

        With ``complete_skew`` the partner ``[e_j, e_i]`` is filled in by the
        super-skew rule wherever it was not given.
        """
        basis = GradedBasis(names, parities)
        n = basis.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        given = set()
        for (i, j), coeffs in brackets.items():
            for k, x in coeffs.items():
                c[i][j][k] = Fraction(x)
            given.add((i, j))
        if complete_skew:
            for (i, j) in list(given):
                if (j, i) not in given:
                    s = -sign(basis.parities[i] * basis.parities[j])
                    c[j][i] = [s * x for x in c[i][j]]
        if alpha is None:
            alpha = Matrix.identity(n)
        return cls(basis, c, alpha, name)

    # -- basic data --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def parities(self) -> tuple:
        return self.basis.parities

    @property
    def structure(self) -> tuple:
        return self._c

    def constant(self, i: int, j: int, k: int) -> Fraction:
        return self._c[i][j][k]

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._c[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        acc = [Fraction(0)] * n
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in ys:
                cij = self._c[i][j]
                ab = a * b
                for k, z in enumerate(cij):
                    if z:
                        acc[k] += ab * z
        return tuple(acc)

    def twist(self, v: Sequence) -> Vector:
        return self.alpha.apply(v)

    def unit(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``v -> [x, v]``."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    @cached_property
    def alpha_inverse(self) -> Optional[Matrix]:
        return inverse(self.alpha)

    def alpha_power(self, s: int) -> Matrix:
        if s >= 0:
            return self.alpha.power(s)
        if self.alpha_inverse is None:
            raise NotRegularError(f"alpha^{s} requested but alpha is not invertible")
        return self.alpha_inverse.power(-s)

    @cached_property
    def is_multiplicative(self) -> bool:
        return not multiplicativity_defects(self)

    @cached_property
    def is_regular(self) -> bool:
        return self.is_multiplicative and self.alpha_inverse is not None

    def with_structure(self, structure=None, alpha=None, name=None) -> "HomLieSuperalgebra":
        return HomLieSuperalgebra(
            self.basis,
            self._c if structure is None else structure,
            self.alpha if alpha is None else alpha,
            self.name if name is None else name,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomLieSuperalgebra):
            return NotImplemented
        return (self.basis == other.basis and self._c == other._c
                and self.alpha == other.alpha)

    def __hash__(self):
        return hash((self.basis, self._c, self.alpha))

    def __repr__(self) -> str:
        return f"HomLieSuperalgebra({self.name!r}, dim={self.dim})"


# -- axioms ----------------------------------------------------------------

@dataclass
class ValidationReport:
    skew: bool
    hom_jacobi: bool
    multiplicative: bool
    regular: bool
    skew_violations: list = field(default_factory=list)
    jacobi_violations: list = field(default_factory=list)
    multiplicative_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Both defining identities hold."""
        return self.skew and self.hom_jacobi


def skew_defects(L: HomLieSuperalgebra) -> list:
    """``(i, j, [e_i,e_j] + (-1)^{p_i p_j} [e_j,e_i])`` for ``i <= j`` where nonzero."""
    p = L.parities
    out = []
    for i in range(L.dim):
        for j in range(i, L.dim):
            s = sign(p[i] * p[j])
            d = tuple(a + s * b for a, b in zip(L.bracket_basis(i, j), L.bracket_basis(j, i)))
            if not is_zero_vector(d):
                out.append((i, j, d))
    return out


def hom_jacobi_defect(L: HomLieSuperalgebra, x, y, z, px: int, py: int, pz: int) -> Vector:
    """Left side of the twisted super-Jacobi identity on homogeneous x, y, z."""
    b, a = L.bracket, L.twist
    t1 = b(a(x), b(y, z))
    t2 = b(a(y), b(z, x))
    t3 = b(a(z), b(x, y))
    return tuple(sign(px * pz) * u + sign(py * px) * v + sign(pz * py) * w
                 for u, v, w in zip(t1, t2, t3))


def jacobi_defects(L: HomLieSuperalgebra) -> list:
    p = L.parities
    out = []
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(L.dim):
                d = hom_jacobi_defect(L, L.unit(i), L.unit(j), L.unit(k), p[i], p[j], p[k])
                if not is_zero_vector(d):
                    out.append((i, j, k, d))
    return out


def multiplicativity_defects(L: HomLieSuperalgebra) -> list:
    out = []
    for i in range(L.dim):
        ai = L.twist(L.unit(i))
        for j in range(L.dim):
            lhs = L.twist(L.bracket_basis(i, j))
            rhs = L.bracket(ai, L.twist(L.unit(j)))
            d = vec_sub(lhs, rhs)
            if not is_zero_vector(d):
                out.append((i, j, d))
    return out


def validate(L: HomLieSuperalgebra) -> ValidationReport:
    sk = skew_defects(L)
    jac = jacobi_defects(L)
    mul = multiplicativity_defects(L)
    regular = not mul and L.alpha_inverse is not None
    return ValidationReport(
        skew=not sk, hom_jacobi=not jac, multiplicative=not mul, regular=regular,
        skew_violations=sk, jacobi_violations=jac, multiplicative_violations=mul,
    )


# -- constructions ---------------------------------------------------------

def _require_valid(L: HomLieSuperalgebra) -> None:
    report = validate(L)
    if not report.ok:
        raise HomLieError(f"{L.name} is not a hom-Lie superalgebra")


def direct_sum(L: HomLieSuperalgebra, G: HomLieSuperalgebra, check: bool = True,
               name: Optional[str] = None) -> HomLieSuperalgebra:
    """Block bracket and block twist on ``L + G`` (L's basis first)."""
    if check:
        _require_valid(L)
        _require_valid(G)
    n, m = L.dim, G.dim
    taken = set(L.basis.names)
    names = list(L.basis.names)
    for nm in G.basis.names:
        new = nm
        while new in taken:
            new += "'"
        taken.add(new)
        names.append(new)
    basis = GradedBasis(names, L.parities + G.parities)
    zn, zm = zero_vector(n), zero_vector(m)
    c = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(L.bracket_basis(i, j) + zm)
            elif i >= n and j >= n:
                row.append(zn + G.bracket_basis(i - n, j - n))
            else:
                row.append(zero_vector(n + m))
        c.append(row)
    return HomLieSuperalgebra(basis, c, Matrix.block_diag(L.alpha, G.alpha),
                              name or f"{L.name}+{G.name}")


def _as_matrix_map(phi, L: HomLieSuperalgebra, G: HomLieSuperalgebra) -> Matrix:
    if isinstance(phi, GradedMap):
        return phi.matrix
    m = as_matrix(phi, L.dim)
    GradedMap(m, L.basis, G.basis)  # evenness and shape check
    return m


def is_morphism(phi, L: HomLieSuperalgebra, G: HomLieSuperalgebra) -> bool:
    """``phi[x,y] = [phi x, phi y]`` on basis pairs and ``phi alpha = beta phi``."""
    m = _as_matrix_map(phi, L, G)
    images = [m.apply(L.unit(i)) for i in range(L.dim)]
    for i in range(L.dim):
        for j in range(L.dim):
            if m.apply(L.bracket_basis(i, j)) != G.bracket(images[i], images[j]):
                return False
    return m @ L.alpha == G.alpha @ m


def graph_subalgebra_check(phi, L: HomLieSuperalgebra, G: HomLieSuperalgebra) -> bool:
    """Whether the graph ``{(u, phi u)}`` is a sub-superalgebra of ``L + G``."""
    m = _as_matrix_map(phi, L, G)
    D = direct_sum(L, G, check=False)
    graph = Subspace.span([L.unit(i) + m.apply(L.unit(i)) for i in range(L.dim)], D.dim)
    return is_subalgebra(D, graph)


# -- subspaces -------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of coordinate space, stored by its reduced echelon basis."""

    basis: tuple
    ambient: int

    @classmethod
    def span(cls, vectors, ambient: int) -> "Subspace":
        return cls(tuple(span_basis(vectors, ambient)), ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls((), ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span([unit_vector(ambient, i) for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return in_span(self.basis, vector(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span([m.apply(v) for v in self.basis], m.nrows)

    def is_graded(self, parities: Sequence[int]) -> bool:
        for v in self.basis:
            for par in (0, 1):
                part = tuple(x if parities[i] == par else 0 for i, x in enumerate(v))
                if not self.contains(part):
                    return False
        return True

    def annihilator(self) -> Matrix:
        """Matrix whose kernel is this subspace."""
        if not self.basis:
            return Matrix.identity(self.ambient)
        rows = kernel_basis(Matrix(self.basis, self.ambient))
        return Matrix(rows, self.ambient) if rows else Matrix.zeros(0, self.ambient)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _require_graded(L: HomLieSuperalgebra, S: Subspace) -> None:
    if S.ambient != L.dim:
        raise ValueError(f"subspace lives in dimension {S.ambient}, algebra has {L.dim}")
    if not S.is_graded(L.parities):
        raise ValueError("subspace is not graded")


def subspace_bracket(L: HomLieSuperalgebra, S: Subspace, T: Subspace) -> Subspace:
    return Subspace.span([L.bracket(s, t) for s in S.basis for t in T.basis], L.dim)


def is_twist_stable(L: HomLieSuperalgebra, S: Subspace) -> bool:
    return all(S.contains(L.twist(v)) for v in S.basis)


def is_bracket_ideal(L: HomLieSuperalgebra, S: Subspace) -> bool:
    """``[S, L] <= S`` only."""
    _require_graded(L, S)
    return all(S.contains(L.bracket(v, L.unit(j))) for v in S.basis for j in range(L.dim))


def is_ideal(L: HomLieSuperalgebra, S: Subspace) -> bool:
    """``[S, L] <= S`` and ``alpha(S) <= S``."""
    return is_bracket_ideal(L, S) and is_twist_stable(L, S)


def is_subalgebra(L: HomLieSuperalgebra, S: Subspace) -> bool:
    _require_graded(L, S)
    if not is_twist_stable(L, S):
        return False
    return subspace_bracket(L, S, S).issubset(S)


def is_abelian(L: HomLieSuperalgebra, S: Subspace) -> bool:
    return subspace_bracket(L, S, S).dim == 0


def center(L: HomLieSuperalgebra) -> Subspace:
    n = L.dim
    if n == 0:
        return Subspace.zero(0)
    # row (j, k) of the stack: x -> [x, e_j]_k
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([L.bracket_basis(i, j)[k] for i in range(n)])
    return Subspace.span(kernel_basis(Matrix(rows, n)), n)


def graded_complement(S: Subspace) -> list:
    """Basis vectors, in index order, completing ``S`` to the whole space."""
    chosen = []
    current = list(S.basis)
    for i in range(S.ambient):
        e = unit_vector(S.ambient, i)
        if not in_span(current, e):
            chosen.append(e)
            current.append(e)
    return chosen


def quotient(L: HomLieSuperalgebra, I: Subspace, complement: Optional[Sequence] = None,
             name: Optional[str] = None, names: Optional[Sequence[str]] = None):
    """The quotient ``L / I`` and the projection ``p : L -> L / I``.

    The quotient basis is the image of ``complement`` (default: the greedy
    choice of standard basis vectors); ``complement`` must consist of
    homogeneous vectors.
    """
    if not is_ideal(L, I):
        raise NotIdealError("quotient needs an ideal stable under the twist")
    if complement is None:
        complement = graded_complement(I)
        names = [L.basis.names[v.index(1)] for v in complement]
    else:
        complement = [vector(v) for v in complement]
        names = list(names) if names is not None else [f"b{a}" for a in range(len(complement))]
    parities = []
    for v in complement:
        ps = {L.parities[i] for i, x in enumerate(v) if x}
        if len(ps) != 1:
            raise ValueError("complement vectors must be nonzero and homogeneous")
        parities.append(ps.pop())
    m = len(complement)
    full = list(complement) + list(I.basis)
    if len(full) != L.dim:
        raise ValueError("complement does not complete the ideal to a basis")
    change = Matrix.from_columns(full, L.dim)
    change_inv = inverse(change)
    if change_inv is None:
        raise ValueError("complement does not complete the ideal to a basis")

    def project(v):
        return change_inv.apply(v)[:m]

    c = [[project(L.bracket(complement[a], complement[b])) for b in range(m)] for a in range(m)]
    alpha_b = Matrix.from_columns([project(L.twist(w)) for w in complement], m) if m else Matrix.zeros(0, 0)
    basis = GradedBasis(names, parities)
    B = HomLieSuperalgebra(basis, c, alpha_b, name or f"{L.name}/I")
    p = Matrix.from_columns([project(L.unit(i)) for i in range(L.dim)], m) if m else Matrix.zeros(0, L.dim)
    return B, GradedMap(p, L.basis, basis)


# -- series ----------------------------------------------------------------

def _until_stable(first: Subspace, step) -> list:
    series = [first]
    while True:
        nxt = step(series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def derived_series(L: HomLieSuperalgebra) -> list:
    return _until_stable(Subspace.full(L.dim), lambda S: subspace_bracket(L, S, S))


def lower_central_series(L: HomLieSuperalgebra) -> list:
    full = Subspace.full(L.dim)
    return _until_stable(full, lambda S: subspace_bracket(L, S, full))


def centralizer_mod(L: HomLieSuperalgebra, I: Subspace) -> Subspace:
    """``{a : [a, L] <= I}``."""
    n = L.dim
    ann = I.annihilator()
    if ann.nrows == 0:
        return Subspace.full(n)
    rows = []
    for j in range(n):
        right = Matrix.from_columns([L.bracket_basis(i, j) for i in range(n)], n)
        rows.extend((ann @ right).rows)
    return Subspace.span(kernel_basis(Matrix(rows, n)), n)


def upper_central_series(L: HomLieSuperalgebra) -> list:
    return _until_stable(Subspace.zero(L.dim), lambda S: centralizer_mod(L, S))


def _length(series: list) -> Optional[int]:
    for k, S in enumerate(series):
        if S.dim == 0:
            return k
    return None


def solvable_length(L: HomLieSuperalgebra) -> Optional[int]:
    return _length(derived_series(L))


def nilpotent_length(L: HomLieSuperalgebra) -> Optional[int]:
    return _length(lower_central_series(L))


def yau_twist(L: HomLieSuperalgebra, alpha, name: Optional[str] = None) -> HomLieSuperalgebra:
    """``(L, alpha o [.,.], alpha)`` for an even bracket endomorphism ``alpha``.

    Starting from an algebra with identity twist this produces a
    multiplicative hom-Lie superalgebra.
    """
    a = as_matrix(alpha, L.dim)
    c = [[a.apply(L.bracket_basis(i, j)) for j in range(L.dim)] for i in range(L.dim)]
    return HomLieSuperalgebra(L.basis, c, a, name or f"{L.name}_alpha")
