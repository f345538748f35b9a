"""An independent classical (alpha = id) Lie superalgebra toolkit for cross-checks.

Nothing here uses the package's sign helpers, canonical storage or linear
algebra: cochains are dense dictionaries over all ordered index tuples, signs
come from counting inversions, and ranks come from sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

import sympy


def structure_tensor(L):
    n = L.dim
    return [[[Fraction(L.structure[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]


def br(c, x, y):
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    for k in range(n):
                        out[k] += x[i] * y[j] * c[i][j][k]
    return out


def unit(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def is_lie_superalgebra(c, p) -> bool:
    """Super-skew and the derivation form of the super-Jacobi identity."""
    n = len(p)
    for i in range(n):
        for j in range(n):
            s = (-1) ** (p[i] * p[j])
            if any(c[i][j][k] + s * c[j][i][k] for k in range(n)):
                return False
    for i, j, k in product(range(n), repeat=3):
        x, y, z = unit(n, i), unit(n, j), unit(n, k)
        lhs = br(c, x, br(c, y, z))
        rhs1 = br(c, br(c, x, y), z)
        rhs2 = br(c, y, br(c, x, z))
        s = (-1) ** (p[i] * p[j])
        if any(a - b - s * d for a, b, d in zip(lhs, rhs1, rhs2)):
            return False
    return True


def permutation_sign(order, p) -> int:
    """Sign of bringing ``order`` (a permutation of argument parities' indices)
    to sorted order for a super-alternating map: a factor ``-(-1)^{p_a p_b}``
    per inverted pair."""
    s = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                s *= -((-1) ** (p[order[a]] * p[order[b]]))
    return s


# -- dense cochains: dict tuple -> list of length m -------------------------

def cochain_space(p, vp, k, theta):
    """Basis (as flat coordinate lists) of super-alternating degree-k maps of parity theta."""
    n, m = len(p), len(vp)
    tuples = list(product(range(n), repeat=k))
    index = {t: a for a, t in enumerate(tuples)}
    vecs = []
    for t in tuples:
        for r in range(m):
            if (sum(p[a] for a in t) + theta) % 2 != vp[r]:
                continue
            v = [0] * (len(tuples) * m)
            for perm in permutations(range(k)):
                # argument in slot s is the original argument perm[s]
                u = tuple(t[q] for q in perm)
                v[index[u] * m + r] += permutation_sign(perm, [p[x] for x in t])
            vecs.append(v)
    M = sympy.Matrix(vecs) if vecs else sympy.zeros(0, len(tuples) * m)
    rows = M.rref()[0] if vecs else M
    basis = [list(rows.row(a)) for a in range(rows.rows) if any(rows.row(a))]
    return basis, tuples


def to_dense(flat, tuples, m):
    return {t: [Fraction(str(x)) for x in flat[a * m:(a + 1) * m]] for a, t in enumerate(tuples)}


def evaluate(f, args_vectors, n):
    """Multilinear evaluation of a dense cochain on coordinate vectors."""
    m = len(next(iter(f.values()))) if f else 0
    out = [Fraction(0)] * m
    supports = [[(i, x) for i, x in enumerate(v) if x] for v in args_vectors]
    for combo in product(*supports):
        coeff = Fraction(1)
        for _, x in combo:
            coeff *= x
        val = f[tuple(i for i, _ in combo)]
        for r in range(m):
            out[r] += coeff * val[r]
    return out


def ce_differential(f, k, theta, c, p, action, vp):
    """Classical coboundary with the bracket left in slot i.

    ``action[i]`` is the matrix (list of rows) of ``e_i`` on the module.
    """
    n, m = len(p), len(vp)
    out = {}
    for t in product(range(n), repeat=k + 1):
        acc = [Fraction(0)] * m
        for i in range(k + 1):
            rest = t[:i] + t[i + 1:]
            inner = f[rest] if k else f[()]
            e = i + (theta + sum(p[t[l]] for l in range(i))) * p[t[i]]
            a = action[t[i]]
            for r in range(m):
                acc[r] += (-1) ** e * sum(a[r][q] * inner[q] for q in range(m))
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                e = j + p[t[j]] * sum(p[t[l]] for l in range(i + 1, j))
                args = ([unit(n, t[l]) for l in range(i)] + [br(c, unit(n, t[i]), unit(n, t[j]))]
                        + [unit(n, t[l]) for l in range(i + 1, k + 1) if l != j])
                val = evaluate(f, args, n)
                for r in range(m):
                    acc[r] += (-1) ** e * val[r]
        out[t] = acc
    return out


def adjoint_action(c):
    n = len(c)
    return [[[c[i][q][r] for q in range(n)] for r in range(n)] for i in range(n)]


def trivial_action(n):
    return [[[Fraction(0)]] for _ in range(n)]


def flatten(f, tuples, m):
    return [x for t in tuples for x in f[t]]


def cohomology_dims(c, p, action, vp, k, theta):
    """``(dim C, dim Z, dim B)`` of the classical complex in degree k, parity theta."""
    m = len(vp)
    Ck, tk = cochain_space(p, vp, k, theta)
    images = [flatten(ce_differential(to_dense(v, tk, m), k, theta, c, p, action, vp),
                      list(product(range(len(p)), repeat=k + 1)), m) for v in Ck]
    rk = sympy.Matrix(images).rank() if images else 0
    if k >= 1:
        Cp, tp = cochain_space(p, vp, k - 1, theta)
        prev = [flatten(ce_differential(to_dense(v, tp, m), k - 1, theta, c, p, action, vp),
                        list(product(range(len(p)), repeat=k)), m) for v in Cp]
        b = sympy.Matrix(prev).rank() if prev else 0
    else:
        b = 0
    return len(Ck), len(Ck) - rk, b


def dense_from_table(f, n):
    """Dense copy of a package cochain (used only to feed both sides the same input)."""
    return {t: list(f.evaluate(t)) for t in product(range(n), repeat=f.degree)}
