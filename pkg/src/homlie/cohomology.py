"""Representations, hom-cochains and the two coboundary operators.

Two differentials are provided and kept apart on purpose:

* :func:`coboundary_ds` acts on cochains with values in the algebra itself,
  uses ``[alpha^(k+s)(u_i), .]`` in the action term and puts the bracket
  ``[u_i, u_j]`` in front of the remaining (twisted) arguments;
* :func:`coboundary_delta` acts on cochains with values in an arbitrary
  representation, uses ``rho(alpha^(n+r-1)(x_i))`` and leaves ``[x_i, x_j]``
  in slot ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import HomLieError, HomLieSuperalgebra, NotMultiplicativeError
from .graded import (
    EVEN,
    CochainTable,
    cochain_coordinates,
    cochain_from_coordinates,
    cochain_slots,
    sign,
    table_from_function,
)
from .linalg import (
    Matrix,
    is_zero_vector,
    kernel_basis,
    rank,
    unit_vector,
    vec_sub,
)


class CoadjointError(HomLieError):
    """The coadjoint action is not a representation (a pair breaks the condition)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class Representation:
    """Action matrices ``rho[i]`` of the basis vectors plus a module twist."""

    algebra: HomLieSuperalgebra
    module_parities: tuple
    rho: tuple
    twist: Matrix
    name: str = "V"

    def __post_init__(self):
        L = self.algebra
        m = len(self.module_parities)
        if len(self.rho) != L.dim:
            raise ValueError("need one action matrix per algebra basis vector")
        for i, a in enumerate(self.rho):
            if a.shape != (m, m):
                raise ValueError(f"action matrix {i} has shape {a.shape}")
            pi = L.parities[i]
            for r in range(m):
                for c in range(m):
                    if a[r, c] and self.module_parities[r] != (self.module_parities[c] + pi) % 2:
                        raise ValueError(f"action of {L.basis.names[i]} is not parity consistent")
        if self.twist.shape != (m, m):
            raise ValueError("module twist has the wrong shape")
        for r in range(m):
            for c in range(m):
                if self.twist[r, c] and self.module_parities[r] != self.module_parities[c]:
                    raise ValueError("module twist is not even")

    @property
    def dim(self) -> int:
        return len(self.module_parities)

    def action_matrix(self, x: Sequence) -> Matrix:
        m = self.dim
        acc = Matrix.zeros(m, m)
        for i, a in enumerate(x):
            if a:
                acc = acc + self.rho[i].scale(a)
        return acc

    def act(self, x: Sequence, v: Sequence):
        m = self.dim
        acc = [Fraction(0)] * m
        vs = [(c, b) for c, b in enumerate(v) if b]
        if not vs:
            return tuple(acc)
        for i, a in enumerate(x):
            if not a:
                continue
            mat = self.rho[i]
            for r in range(m):
                row = mat.row(r)
                acc[r] += a * sum((row[c] * b for c, b in vs), Fraction(0))
        return tuple(acc)


def ad_s(L: HomLieSuperalgebra, s: int) -> Representation:
    """``u . v = [alpha^s(u), v]`` with module twist ``alpha``."""
    if not L.is_multiplicative:
        raise NotMultiplicativeError(f"{L.name} is not multiplicative")
    power = L.alpha_power(s)
    rho = tuple(L.ad_matrix(power.column(i)) for i in range(L.dim))
    return Representation(L, L.parities, rho, L.alpha, f"ad_{s}")


def adjoint_module(L: HomLieSuperalgebra) -> Representation:
    """The algebra acting on itself by ``ad_0``, without any precondition."""
    rho = tuple(L.ad_matrix(L.unit(i)) for i in range(L.dim))
    return Representation(L, L.parities, rho, L.alpha, "ad")


def trivial_module(L: HomLieSuperalgebra) -> Representation:
    """The ground field, even, with zero action and identity twist."""
    zero = Matrix.zeros(1, 1)
    return Representation(L, (EVEN,), tuple(zero for _ in range(L.dim)), Matrix.identity(1), "K")


def coadjoint_defects(L: HomLieSuperalgebra) -> list:
    """Pairs ``(i, j, D)`` where
    ``ad(x) ad(alpha y) - (-1)^{|x||y|} ad(y) ad(alpha x) - alpha ad([x,y])`` is nonzero."""
    p = L.parities
    ads = [L.ad_matrix(L.unit(i)) for i in range(L.dim)]
    ad_alpha = [L.ad_matrix(L.twist(L.unit(i))) for i in range(L.dim)]
    out = []
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = ads[i] @ ad_alpha[j] - (ads[j] @ ad_alpha[i]).scale(sign(p[i] * p[j]))
            rhs = L.alpha @ L.ad_matrix(L.bracket_basis(i, j))
            d = lhs - rhs
            if not d.is_zero():
                out.append((i, j, d))
    return out


def coadjoint(L: HomLieSuperalgebra, check: bool = True) -> Representation:
    """Dual module: ``pi(x)(f)(y) = -(-1)^{|x||f|} f([x, y])``, twist ``f -> f o alpha``."""
    if check:
        bad = coadjoint_defects(L)
        if bad:
            i, j, _ = bad[0]
            names = L.basis.names
            raise CoadjointError(
                f"coadjoint action of {L.name} is not a representation: "
                f"condition fails at ({names[i]}, {names[j]})", pair=(i, j))
    n, p = L.dim, L.parities
    rho = []
    for i in range(n):
        # column k: image of the dual vector e*_k; entry l: its value on e_l
        rows = [[-sign(p[i] * p[k]) * L.constant(i, l, k) for k in range(n)] for l in range(n)]
        rho.append(Matrix(rows, n))
    return Representation(L, L.parities, tuple(rho), L.alpha.T, "coad")


def representation_defects(R: Representation) -> list:
    """Failures of ``rho(alpha x) beta = beta rho(x)`` and of
    ``rho([x,y]) beta = rho(alpha x) rho(y) - (-1)^{|x||y|} rho(alpha y) rho(x)``.

    Entries are ``("twist", i, None, D)`` or ``("bracket", i, j, D)``.
    """
    L = R.algebra
    p = L.parities
    beta = R.twist
    rho_alpha = [R.action_matrix(L.twist(L.unit(i))) for i in range(L.dim)]
    out = []
    for i in range(L.dim):
        d = rho_alpha[i] @ beta - beta @ R.rho[i]
        if not d.is_zero():
            out.append(("twist", i, None, d))
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = R.action_matrix(L.bracket_basis(i, j)) @ beta
            rhs = rho_alpha[i] @ R.rho[j] - (rho_alpha[j] @ R.rho[i]).scale(sign(p[i] * p[j]))
            d = lhs - rhs
            if not d.is_zero():
                out.append(("bracket", i, j, d))
    return out


def check_ad_identities(L: HomLieSuperalgebra, s: int) -> list:
    """Defects of the two identities that make ``ad_s`` a representation."""
    return representation_defects(ad_s(L, s))


# -- cochains --------------------------------------------------------------

def _module(L: HomLieSuperalgebra, R: Optional[Representation]) -> Representation:
    return adjoint_module(L) if R is None else R


def compatibility_defect(L: HomLieSuperalgebra, twist: Matrix, f: CochainTable) -> CochainTable:
    """``beta o f - f o alpha^{(x)k}`` as a table (zero iff f commutes with the twists)."""
    images = [L.twist(L.unit(i)) for i in range(L.dim)]

    def value(t):
        return vec_sub(twist.apply(f.evaluate(t)), f(*[images[a] for a in t]))

    return table_from_function(value, f.degree, f.arg_parities, f.value_parities, f.parity)


def is_compatible(L: HomLieSuperalgebra, twist: Matrix, f: CochainTable) -> bool:
    return compatibility_defect(L, twist, f).is_zero()


def cochain_basis(L: HomLieSuperalgebra, R: Optional[Representation], k: int,
                  theta: int = EVEN, alpha_compatible: bool = True) -> list:
    """Basis of degree-k parity-theta super-alternating cochains into ``R``.

    ``R=None`` means the algebra itself with twist alpha.  With
    ``alpha_compatible`` the basis spans ``{f : beta o f = f o alpha^{(x)k}}``
    where the twist acts diagonally on the arguments.
    """
    if k < 0:
        raise ValueError("cochain degree must be nonnegative")
    R = _module(L, R)
    args, vals = L.parities, R.module_parities
    slots = cochain_slots(args, vals, k, theta)
    units = [cochain_from_coordinates(unit_vector(len(slots), u), slots, args, vals, k, theta)
             for u in range(len(slots))]
    if not alpha_compatible or not slots:
        return units
    target_slots = cochain_slots(args, vals, k, theta)
    cols = [cochain_coordinates(compatibility_defect(L, R.twist, f), target_slots) for f in units]
    if not target_slots:
        return units
    m = Matrix.from_columns(cols, len(target_slots))
    return [cochain_from_coordinates(v, slots, args, vals, k, theta) for v in kernel_basis(m)]


def _sum_before(p: Sequence[int], idx: Sequence[int], stop: int) -> int:
    return sum(p[idx[l]] for l in range(stop))


def coboundary_ds(L: HomLieSuperalgebra, s: int, f: CochainTable, check: bool = True) -> CochainTable:
    """The coboundary of the ``alpha^s``-adjoint complex applied to ``f``."""
    k = f.degree
    if f.arg_parities != L.parities or f.value_parities != L.parities:
        raise ValueError("d_s acts on cochains with values in the algebra")
    if check:
        if not L.is_multiplicative:
            raise NotMultiplicativeError(f"{L.name} is not multiplicative")
        if not is_compatible(L, L.alpha, f):
            raise HomLieError("cochain does not commute with alpha")
    power = L.alpha_power(k + s)
    p, theta, n = L.parities, f.parity, L.dim
    act = [power.column(i) for i in range(n)]
    twisted = [L.twist(L.unit(i)) for i in range(n)]

    def value(idx):
        acc = [Fraction(0)] * n
        for i in range(k + 1):
            inner = f.evaluate(idx[:i] + idx[i + 1:])
            if is_zero_vector(inner):
                continue
            sg = sign(i + (theta + _sum_before(p, idx, i)) * p[idx[i]])
            for r, x in enumerate(L.bracket(act[idx[i]], inner)):
                acc[r] += sg * x
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                pi, pj = p[idx[i]], p[idx[j]]
                sg = sign(i + j + _sum_before(p, idx, i) * pi + _sum_before(p, idx, j) * pj + pi * pj)
                rest = [twisted[idx[l]] for l in range(k + 1) if l not in (i, j)]
                val = f(L.bracket_basis(idx[i], idx[j]), *rest)
                for r, x in enumerate(val):
                    if x:
                        acc[r] += sg * x
        return tuple(acc)

    return table_from_function(value, k + 1, p, p, theta)


def coboundary_delta(L: HomLieSuperalgebra, R: Representation, r: int, f: CochainTable) -> CochainTable:
    """The coboundary ``delta_r`` with coefficients in ``R`` applied to ``f``."""
    n_deg = f.degree
    if f.arg_parities != L.parities or f.value_parities != R.module_parities:
        raise ValueError("cochain does not match the algebra and module")
    power = L.alpha_power(n_deg + r - 1)
    p, theta, n = L.parities, f.parity, L.dim
    act = [power.column(i) for i in range(n)]
    twisted = [L.twist(L.unit(i)) for i in range(n)]
    m = R.dim

    def value(idx):
        acc = [Fraction(0)] * m
        for i in range(n_deg + 1):
            inner = f.evaluate(idx[:i] + idx[i + 1:])
            if is_zero_vector(inner):
                continue
            sg = sign(i + (theta + _sum_before(p, idx, i)) * p[idx[i]])
            for q, x in enumerate(R.act(act[idx[i]], inner)):
                acc[q] += sg * x
        for i in range(n_deg + 1):
            for j in range(i + 1, n_deg + 1):
                between = sum(p[idx[l]] for l in range(i + 1, j))
                sg = sign(j + p[idx[j]] * between)
                args = ([twisted[idx[l]] for l in range(i)]
                        + [L.bracket_basis(idx[i], idx[j])]
                        + [twisted[idx[l]] for l in range(i + 1, n_deg + 1) if l != j])
                val = f(*args)
                for q, x in enumerate(val):
                    if x:
                        acc[q] += sg * x
        return tuple(acc)

    return table_from_function(value, n_deg + 1, p, R.module_parities, theta)


# -- cohomology ------------------------------------------------------------

@dataclass
class CohomologyResult:
    k: int
    cochains: int
    cocycles: int
    coboundaries: int
    cohomology: int
    sectors: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "dim_C": self.cochains,
            "dim_Z": self.cocycles,
            "dim_B": self.coboundaries,
            "dim_H": self.cohomology,
            "sectors": {str(t): dict(zip(("dim_C", "dim_Z", "dim_B", "dim_H"), v))
                        for t, v in sorted(self.sectors.items())},
        }


def _image_rank(images: list, slots: list) -> int:
    if not images or not slots:
        return 0
    cols = [cochain_coordinates(g, slots) for g in images]
    return rank(Matrix.from_columns(cols, len(slots)))


def _dims(L, R, k, thetas, apply_d) -> CohomologyResult:
    R = _module(L, R)
    sectors = {}
    for theta in thetas:
        basis_k = cochain_basis(L, R, k, theta)
        next_slots = cochain_slots(L.parities, R.module_parities, k + 1, theta)
        rk = _image_rank([apply_d(f) for f in basis_k], next_slots)
        if k >= 1:
            prev = cochain_basis(L, R, k - 1, theta)
            here_slots = cochain_slots(L.parities, R.module_parities, k, theta)
            b = _image_rank([apply_d(g) for g in prev], here_slots)
        else:
            b = 0
        c = len(basis_k)
        z = c - rk
        sectors[theta] = (c, z, b, z - b)
    tot = [sum(v[i] for v in sectors.values()) for i in range(4)]
    return CohomologyResult(k, *tot, sectors=sectors)


def cohomology_dims(L: HomLieSuperalgebra, s: int, k: int, parities=(0, 1)) -> CohomologyResult:
    """Dimensions for the ``alpha^s``-adjoint complex in degree k.

    Cochains are the alpha-compatible ones; the result sums the requested
    parity sectors and keeps the breakdown in ``sectors``.
    """
    if not L.is_multiplicative:
        raise NotMultiplicativeError(f"{L.name} is not multiplicative")
    # fail early on a missing inverse in either degree used
    L.alpha_power(k + s)
    if k >= 1:
        L.alpha_power(k - 1 + s)
    return _dims(L, None, k, parities, lambda f: coboundary_ds(L, s, f, check=False))


def delta_cohomology_dims(L: HomLieSuperalgebra, R: Representation, r: int, k: int,
                          parities=(0, 1)) -> CohomologyResult:
    """Same bookkeeping for ``delta_r`` with coefficients in ``R``."""
    return _dims(L, R, k, parities, lambda f: coboundary_delta(L, R, r, f))
