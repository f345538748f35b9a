import random
from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie.algebra import HomLieError, HomLieSuperalgebra, NotRegularError, yau_twist
from homlie.fixtures import a2, gl11, h3, r_lambda
from homlie.graded import bilinear_table
from homlie.linalg import Matrix
from homlie.nijenhuis import (
    NotNijenhuisError,
    bracket_table,
    check_trivial_deformation,
    d_minus_one_table,
    deformation_jacobi_holds,
    deformed_bracket,
    is_hom_nijenhuis,
    make_deformation,
    operator_space,
    search_nijenhuis,
    table_zero,
)

from helpers import random_cochain, small


def _tuples(table):
    return [[tuple(v) for v in row] for row in table]


def _scaled(L, c):
    return _tuples([[tuple(c * x for x in L.bracket_basis(i, j)) for j in range(L.dim)]
                    for i in range(L.dim)])


def test_deformed_bracket_examples():
    for L in (r_lambda(2), h3(), gl11()):
        n = L.dim
        assert table_zero(deformed_bracket(L, Matrix.zeros(n, n)))
        assert _tuples(deformed_bracket(L, Matrix.identity(n))) == _scaled(L, 1)
        assert _tuples(deformed_bracket(L, Matrix.identity(n).scale(3))) == _scaled(L, 3)


def test_operator_must_commute_with_twist():
    L = yau_twist(h3(), [[2, 0, 0], [0, 1, 1], [0, -1, 1]])
    with pytest.raises(HomLieError):
        deformed_bracket(L, Matrix.diag([1, 1, 0]))


def test_operator_must_be_even():
    with pytest.raises(ValueError):
        deformed_bracket(h3(), Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_is_hom_nijenhuis_examples():
    R = r_lambda(2)
    assert is_hom_nijenhuis(R, Matrix.zeros(2, 2))[0]
    assert is_hom_nijenhuis(R, Matrix.identity(2).scale(5))[0]
    # every diagonal N = diag(a, b) qualifies: [Ne, Nf] = ab f and [e, f]_N = a f
    for a, b in ((1, 0), (0, 1), (2, -3)):
        ok, defect = is_hom_nijenhuis(R, Matrix.diag([a, b]))
        assert ok and table_zero(defect)
    # on H3, N = diag(0, 1, 0): [N f1, N f1] = z but N[f1, f1]_N = N(2z - Nz) = 0
    ok, defect = is_hom_nijenhuis(h3(), Matrix.diag([0, 1, 0]))
    assert not ok and defect[1][1] == (1, 0, 0)


def test_make_deformation_zero_psi():
    for L in (r_lambda(2), h3()):
        n = L.dim
        zero = [[(0,) * n for _ in range(n)] for _ in range(n)]
        fam = make_deformation(L, zero)
        assert fam.jacobi_psi and fam.closed and fam.is_deformation
        assert _tuples(bracket_table(fam.bracket_at(7))) == _scaled(L, 1)


def test_make_deformation_requires_regular():
    singular = HomLieSuperalgebra.from_brackets(["e", "f"], [0, 1], {}, alpha=Matrix.diag([1, 0]))
    zero = [[(0, 0), (0, 0)], [(0, 0), (0, 0)]]
    with pytest.raises(NotRegularError):
        make_deformation(singular, zero)


def test_make_deformation_rejects_non_skew():
    L = h3()
    psi = [[(0, 0, 0)] * 3 for _ in range(3)]
    psi[1][2] = (1, 0, 0)
    psi[2][1] = (-1, 0, 0)  # odd arguments: the partner must be +psi[1][2]
    with pytest.raises(ValueError):
        make_deformation(L, psi)


def test_scalar_operators_give_trivial_deformations():
    for lam in (2, -1, 1):
        R = r_lambda(lam)
        for c in (0, 1, 2, Fraction(-1, 3)):
            N = Matrix.identity(2).scale(c)
            poly = check_trivial_deformation(R, N)
            assert poly.is_zero
            fam = make_deformation(R, deformed_bracket(R, N))
            assert fam.jacobi_psi and fam.closed


def test_random_psi_on_h3_fails_some_condition():
    rng = random.Random(6)
    L = h3()
    failures = 0
    for _ in range(40):
        psi = bilinear_table(random_cochain(rng, L, None, 2, 0))
        fam = make_deformation(L, psi)
        assert fam.closed == fam.linear_condition
        if not fam.is_deformation:
            failures += 1
            assert not fam.jacobi_psi or not fam.closed
    assert failures >= 1


def test_non_nijenhuis_raises_with_defect():
    rng = random.Random(7)
    L = h3()
    basis = operator_space(L)
    for _ in range(50):
        N = Matrix.zeros(3, 3)
        for b in basis:
            N = N + b.scale(small(rng))
        if not is_hom_nijenhuis(L, N)[0]:
            break
    else:
        pytest.fail("no non-Nijenhuis operator found")
    with pytest.raises(NotNijenhuisError) as exc:
        check_trivial_deformation(L, N)
    assert exc.value.defect is not None and not table_zero(exc.value.defect)


def test_search_is_exhaustive_and_sound():
    found = list(search_nijenhuis(a2()))
    assert found
    for N in found:
        assert is_hom_nijenhuis(a2(), N)[0]
        assert N != Matrix.identity(2).scale(N[0, 0])


@pytest.mark.parametrize("L", [a2(), r_lambda(2), r_lambda(-1), h3(), gl11()], ids=lambda L: L.name)
def test_nijenhuis_operators_satisfy_the_theorem(L):
    for N in islice(search_nijenhuis(L), 6):
        psi = deformed_bracket(L, N)
        assert _tuples(d_minus_one_table(L, N)) == _tuples(psi)
        fam = make_deformation(L, psi)
        assert fam.jacobi_psi and fam.closed and fam.twist_multiplicative
        assert check_trivial_deformation(L, N).is_zero
        assert deformation_jacobi_holds(fam, 3)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["R2", "R-1", "H3", "GL11"]), st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_bridge_d_minus_one_equals_deformed_bracket(name, coords):
    L = {"R2": lambda: r_lambda(2), "R-1": lambda: r_lambda(-1), "H3": h3, "GL11": gl11}[name]()
    N = Matrix.zeros(L.dim, L.dim)
    for c, b in zip(coords, operator_space(L)):
        N = N + b.scale(c)
    psi = deformed_bracket(L, N)
    assert _tuples(d_minus_one_table(L, N)) == _tuples(psi)
    # [., .]_N is super-skew and commutes with alpha
    p = L.parities
    for i in range(L.dim):
        for j in range(L.dim):
            s = -((-1) ** (p[i] * p[j]))
            assert tuple(s * x for x in psi[i][j]) == tuple(psi[j][i])
            assert L.twist(psi[i][j]) == tuple(
                sum((L.alpha[a, i] * L.alpha[b, j] * psi[a][b][k] for a in range(L.dim) for b in range(L.dim)),
                    Fraction(0)) for k in range(L.dim))
