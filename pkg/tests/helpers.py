"""Shared generators and oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from homlie.algebra import yau_twist
from homlie.cohomology import cochain_basis
from homlie.fixtures import a2, gl11, h3, osp12, r_lambda
from homlie.graded import combine_cochains, zero_cochain
from homlie.linalg import Matrix
from homlie.tstar import (
    OneCochainToDual,
    combine_forms,
    equivalence_map,
    hyperbolic_form,
    t_star_algebra,
    z_from_coordinates,
    even_pairs,
)


def corpus():
    """Fixtures plus two multiplicative algebras with a nontrivial twist."""
    return [
        a2(), h3(), r_lambda(2), r_lambda(-1), r_lambda(1), gl11(), osp12(),
        yau_twist(h3(), [[2, 0, 0], [0, 1, 1], [0, -1, 1]], name="H3tw"),
        yau_twist(gl11(), Matrix.diag([1, 1, 3, Fraction(1, 3)]), name="GL11tw"),
    ]


def small(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2]))


def random_combination(rng, basis, template=None):
    if not basis:
        return template
    return combine_cochains([(small(rng), b) for b in basis], basis[0])


def random_cochain(rng, L, R, k, theta=0, compatible=True):
    basis = cochain_basis(L, R, k, theta, alpha_compatible=compatible)
    if not basis:
        vp = L.parities if R is None else R.module_parities
        return zero_cochain(k, L.parities, vp, theta)
    return random_combination(rng, basis)


def random_form(rng, basis, parities):
    return combine_forms([(small(rng), w) for w in basis], parities)


def random_z(rng, basis, parities):
    n = len(parities)
    vals = [[Fraction(0)] * n for _ in range(n)]
    for z in basis:
        c = small(rng)
        for i in range(n):
            for k in range(n):
                vals[i][k] += c * z.values[i][k]
    return OneCochainToDual(parities, vals)


def _rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def equivalence_rank_oracle(L, omega1, omega2, isometric=False) -> bool:
    """Is there an even z making ``x + f -> x + z(x) + f`` an isomorphism
    ``T*_omega1 L -> T*_omega2 L`` (an isometry too if asked)?

    The residual of the morphism equations is computed from the two
    extension brackets directly; it is affine in z, so feasibility is a rank
    comparison of the augmented system.
    """
    T1, T2 = t_star_algebra(L, omega1), t_star_algebra(L, omega2)
    q = hyperbolic_form(L.parities).gram
    pairs = even_pairs(L.parities)
    N = T1.dim

    def residual(coords):
        z = z_from_coordinates(L.parities, coords)
        phi = equivalence_map(L, z)
        out = []
        imgs = [phi.column(a) for a in range(N)]
        for a in range(N):
            for b in range(N):
                lhs = phi.apply(T1.bracket_basis(a, b))
                rhs = T2.bracket(imgs[a], imgs[b])
                out.extend(x - y for x, y in zip(lhs, rhs))
        out.extend(x for row in (phi @ T1.alpha - T2.alpha @ phi).rows for x in row)
        if isometric:
            out.extend(x for row in (phi.T @ q @ phi - q).rows for x in row)
        return out

    base = residual([0] * len(pairs))
    cols = []
    for u in range(len(pairs)):
        e = [0] * len(pairs)
        e[u] = 1
        cols.append([x - y for x, y in zip(residual(e), base)])
    if not cols:
        return not any(base)
    aug = {tuple(r) + (-b,) for r, b in zip(zip(*cols), base) if any(r) or b}
    return _rank([r[:-1] for r in aug]) == _rank([list(r) for r in aug])
