import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie.graded import (
    CochainTable,
    GradedBasis,
    GradedMap,
    canonical_tuples,
    canonicalize_tuple,
    evaluate_cochain,
    koszul_sign,
)
from homlie.linalg import Matrix

from helpers import small


def test_koszul_examples():
    assert koszul_sign([0, 1, 1], [0, 1, 2]) == 1
    assert koszul_sign([0, 0], [1, 0]) == -1
    assert koszul_sign([1, 1], [1, 0]) == 1
    for bad in ([0, 0], [0, 2], [1]):
        with pytest.raises(ValueError):
            koszul_sign([0, 0], bad)


def test_canonicalize_examples():
    p = [0, 0, 0, 1]
    assert canonicalize_tuple((2, 1), p) == ((1, 2), -1)
    assert canonicalize_tuple((3, 3), p) == ((3, 3), 1)
    assert canonicalize_tuple((1, 1), p) is None


def test_evaluate_examples():
    p = (0, 0, 0, 1)
    f = CochainTable(2, p, (0, 0, 0, 1), 0, {(1, 2): (1, 0, 0, 0), (3, 3): (0, 2, 0, 0)})
    assert evaluate_cochain(f, (2, 1)) == (-1, 0, 0, 0)
    assert evaluate_cochain(f, (1, 1)) == (0, 0, 0, 0)
    assert evaluate_cochain(f, (3, 3)) == (0, 2, 0, 0)
    with pytest.raises(ValueError):
        evaluate_cochain(f, (1,))


def test_cochain_table_rejects_bad_entries():
    p = (0, 1)
    with pytest.raises(ValueError):
        CochainTable(2, p, p, 0, {(1, 0): (1, 0)})
    with pytest.raises(ValueError):
        CochainTable(2, p, p, 0, {(0, 1): (1, 0)})


def test_graded_basis_and_map():
    with pytest.raises(ValueError):
        GradedBasis(["a", "a"], [0, 0])
    b = GradedBasis(["e", "f"], [0, 1])
    assert b.is_canonical() and not GradedBasis(["f", "e"], [1, 0]).is_canonical()
    assert b.dual().names == ("e*", "f*")
    with pytest.raises(ValueError):
        GradedMap(Matrix([[1, 1], [0, 1]]), b, b)


parity_lists = st.lists(st.integers(0, 1), min_size=1, max_size=5)


@given(parity_lists, st.data())
def test_koszul_is_multiplicative(p, data):
    k = len(p)
    s = data.draw(st.permutations(range(k)))
    t = data.draw(st.permutations(range(k)))
    # composing reorderings: first s, then t acting on the reordered arguments
    st_ = [s[t[a]] for a in range(k)]
    ps = [p[s[a]] for a in range(k)]
    assert koszul_sign(p, st_) == koszul_sign(p, s) * koszul_sign(ps, t)


def _random_table(rng, p, k):
    tuples = canonical_tuples(p, k)
    n = len(p)
    entries = {}
    for t in tuples:
        target = sum(p[a] for a in t) % 2
        entries[t] = tuple(small(rng) if p[r] == target else 0 for r in range(n))
    return CochainTable(k, p, p, 0, entries)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=4), st.integers(2, 3), st.integers(0, 10**6))
def test_super_alternating(p, k, seed):
    rng = random.Random(seed)
    p = tuple(p)
    f = _random_table(rng, p, k)
    n = len(p)
    for _ in range(10):
        args = [rng.randrange(n) for _ in range(k)]
        a = rng.randrange(k - 1)
        swapped = list(args)
        swapped[a], swapped[a + 1] = swapped[a + 1], swapped[a]
        s = -((-1) ** (p[args[a]] * p[args[a + 1]]))
        assert evaluate_cochain(f, swapped) == tuple(s * x for x in evaluate_cochain(f, args))


@given(parity_lists, st.integers(0, 3))
def test_canonical_tuples_are_fixed_points(p, k):
    for t in canonical_tuples(p, k):
        assert canonicalize_tuple(t, p) == (t, 1)
    for t in set(permutations(range(len(p)), min(k, len(p)))):
        c = canonicalize_tuple(t, p)
        assert c is not None and c[0] in canonical_tuples(p, len(t))
