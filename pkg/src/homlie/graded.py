"""Z/2-graded bookkeeping: parities, Koszul signs and super-alternating cochains."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, Vector, as_matrix, is_zero_vector, vector, zero_vector

EVEN, ODD = 0, 1


def sign(exponent: int) -> int:
    """``(-1) ** exponent``."""
    return -1 if exponent & 1 else 1


def swap_sign(p: int, q: int) -> int:
    """Sign picked up by a super-alternating map when adjacent arguments of
    parities ``p`` and ``q`` are exchanged: ``-(-1)^(p q)``."""
    return -sign(p * q)


@dataclass(frozen=True)
class GradedBasis:
    names: tuple
    parities: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    def __len__(self) -> int:
        return len(self.names)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def dual(self, suffix: str = "*") -> "GradedBasis":
        return GradedBasis([n + suffix for n in self.names], self.parities)

    def is_canonical(self) -> bool:
        """Even vectors precede odd ones."""
        return list(self.parities) == sorted(self.parities)


def is_even_map(m: Matrix, source: Sequence[int], target: Sequence[int]) -> bool:
    return all(
        m[r, c] == 0
        for r in range(m.nrows)
        for c in range(m.ncols)
        if target[r] != source[c]
    )


@dataclass(frozen=True)
class GradedMap:
    """An even linear map between graded spaces; columns are images."""

    matrix: Matrix
    source: GradedBasis
    target: GradedBasis

    def __post_init__(self):
        m = as_matrix(self.matrix, len(self.source))
        object.__setattr__(self, "matrix", m)
        if m.shape != (len(self.target), len(self.source)):
            raise ValueError(f"map shape {m.shape} does not match bases")
        if not is_even_map(m, self.source.parities, self.target.parities):
            raise ValueError("graded map is not even")

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)


# -- super-alternating index tuples ----------------------------------------

def koszul_sign(parities: Sequence[int], permutation: Sequence[int]) -> int:
    """Sign relating ``f(x_0, ..., x_{k-1})`` to the reordered call.

    ``permutation[t]`` is the original position of the argument placed in
    slot ``t``; the result is the product of ``-(-1)^(p_a p_b)`` over the
    adjacent transpositions of a bubble sort.
    """
    k = len(permutation)
    if sorted(permutation) != list(range(k)) or len(parities) != k:
        raise ValueError(f"not a permutation of {k} positions: {permutation!r}")
    seq = list(permutation)
    s = 1
    for end in range(k - 1, 0, -1):
        for t in range(end):
            if seq[t] > seq[t + 1]:
                s *= swap_sign(parities[seq[t]], parities[seq[t + 1]])
                seq[t], seq[t + 1] = seq[t + 1], seq[t]
    return s


def canonicalize_tuple(indices: Sequence[int], parities: Sequence[int]):
    """Sort ``indices`` into canonical order.

    ``parities`` is indexed by basis index.  Returns ``(tuple, sign)`` or
    ``None`` when an even index is repeated (the map vanishes there).
    """
    seq = list(indices)
    s = 1
    for end in range(len(seq) - 1, 0, -1):
        for t in range(end):
            a, b = seq[t], seq[t + 1]
            if a > b:
                s *= swap_sign(parities[a], parities[b])
                seq[t], seq[t + 1] = b, a
    for a, b in zip(seq, seq[1:]):
        if a == b and parities[a] == EVEN:
            return None
    return tuple(seq), s


def canonical_tuples(parities: Sequence[int], k: int) -> list:
    """All canonical k-tuples: nondecreasing, even indices not repeated."""
    n = len(parities)
    return [
        t for t in combinations_with_replacement(range(n), k)
        if all(not (a == b and parities[a] == EVEN) for a, b in zip(t, t[1:]))
    ]


@dataclass(frozen=True)
class CochainTable:
    """A degree-k super-alternating multilinear map into a graded module.

    ``entries`` maps canonical index tuples to value vectors; missing tuples
    are zero.  ``parity`` is the cochain degree shift theta: the value on
    arguments of total parity s lies in module degree s + theta.
    """

    degree: int
    arg_parities: tuple
    value_parities: tuple
    parity: int = EVEN
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "arg_parities", tuple(self.arg_parities))
        object.__setattr__(self, "value_parities", tuple(self.value_parities))
        m = len(self.value_parities)
        clean = {}
        for t, v in self.entries.items():
            t = tuple(t)
            v = vector(v)
            if len(t) != self.degree or len(v) != m:
                raise ValueError(f"entry {t} has wrong arity or value length")
            if canonicalize_tuple(t, self.arg_parities) != (t, 1):
                raise ValueError(f"tuple {t} is not canonical")
            target = (sum(self.arg_parities[a] for a in t) + self.parity) % 2
            if any(x and self.value_parities[r] != target for r, x in enumerate(v)):
                raise ValueError(f"value at {t} leaves the degree-{target} component")
            if not is_zero_vector(v):
                clean[t] = v
        object.__setattr__(self, "entries", clean)

    @property
    def module_dim(self) -> int:
        return len(self.value_parities)

    def evaluate(self, indices: Sequence[int]) -> Vector:
        return evaluate_cochain(self, indices)

    def __call__(self, *vectors: Sequence) -> Vector:
        """Multilinear evaluation on coordinate vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} arguments, got {len(vectors)}")
        m = self.module_dim
        if self.degree == 0:
            return self.entries.get((), zero_vector(m))
        supports = [[(i, x) for i, x in enumerate(v) if x] for v in vectors]
        acc = [Fraction(0)] * m
        for combo in product(*supports):
            coeff = Fraction(1)
            for _, x in combo:
                coeff *= x
            val = self.evaluate([i for i, _ in combo])
            for r, y in enumerate(val):
                if y:
                    acc[r] += coeff * y
        return tuple(acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainTable):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.arg_parities == other.arg_parities
            and self.value_parities == other.value_parities
            and self.entries == other.entries
            and (self.parity == other.parity or self.is_zero())
        )

    def __hash__(self):
        return hash((self.degree, self.arg_parities, tuple(sorted(self.entries))))


def evaluate_cochain(f: CochainTable, indices: Sequence[int]) -> Vector:
    if len(indices) != f.degree:
        raise ValueError(f"cochain of degree {f.degree} called with {len(indices)} arguments")
    canon = canonicalize_tuple(indices, f.arg_parities)
    if canon is None:
        return zero_vector(f.module_dim)
    t, s = canon
    v = f.entries.get(t)
    if v is None:
        return zero_vector(f.module_dim)
    return v if s == 1 else tuple(-x for x in v)


def cochain_slots(arg_parities: Sequence[int], value_parities: Sequence[int],
                  k: int, theta: int) -> list:
    """Coordinates ``(tuple, r)`` of the space of degree-k parity-theta cochains."""
    slots = []
    for t in canonical_tuples(arg_parities, k):
        target = (sum(arg_parities[a] for a in t) + theta) % 2
        slots.extend((t, r) for r, p in enumerate(value_parities) if p == target)
    return slots


def cochain_from_coordinates(coords: Sequence, slots: Sequence, arg_parities,
                             value_parities, k: int, theta: int) -> CochainTable:
    m = len(value_parities)
    entries: dict = {}
    for (t, r), x in zip(slots, coords, strict=True):
        if x:
            v = entries.setdefault(t, [Fraction(0)] * m)
            v[r] += x
    return CochainTable(k, arg_parities, value_parities, theta, entries)


def cochain_coordinates(f: CochainTable, slots: Sequence) -> list:
    out = []
    for t, r in slots:
        v = f.entries.get(t)
        out.append(v[r] if v is not None else Fraction(0))
    return out


def table_from_function(func, k: int, arg_parities, value_parities,
                        theta: int = EVEN) -> CochainTable:
    """Tabulate ``func(indices) -> vector`` on canonical tuples."""
    entries = {t: func(t) for t in canonical_tuples(arg_parities, k)}
    return CochainTable(k, arg_parities, value_parities, theta, entries)


def bilinear_table(f: CochainTable) -> list:
    """Full ``n x n`` table ``[i][j] -> f(e_i, e_j)`` of a degree-2 cochain."""
    if f.degree != 2:
        raise ValueError("bilinear_table needs a degree-2 cochain")
    n = len(f.arg_parities)
    return [[f.evaluate((i, j)) for j in range(n)] for i in range(n)]


def cochain_from_bilinear(table: Sequence[Sequence[Sequence]], arg_parities,
                          value_parities, theta: int = EVEN) -> CochainTable:
    """Read a super-skew bilinear table back into canonical storage.

    Raises ValueError if the table is not super-alternating.
    """
    n = len(arg_parities)
    entries = {}
    for i in range(n):
        for j in range(n):
            v = vector(table[i][j])
            canon = canonicalize_tuple((i, j), arg_parities)
            if canon is None:
                if not is_zero_vector(v):
                    raise ValueError(f"nonzero value on repeated even index ({i}, {j})")
                continue
            t, s = canon
            if t == (i, j):
                entries[t] = v
    f = CochainTable(2, arg_parities, value_parities, theta, entries)
    for i in range(n):
        for j in range(n):
            if f.evaluate((i, j)) != vector(table[i][j]):
                raise ValueError(f"table is not super-skew at ({i}, {j})")
    return f


def combine_cochains(terms: Iterable[tuple], template: CochainTable) -> CochainTable:
    """Linear combination ``sum c * f`` of cochains shaped like ``template``."""
    m = template.module_dim
    acc: dict = {}
    for c, f in terms:
        for t, v in f.entries.items():
            a = acc.setdefault(t, [Fraction(0)] * m)
            for r, x in enumerate(v):
                if x:
                    a[r] += c * x
    return CochainTable(template.degree, template.arg_parities, template.value_parities,
                        template.parity, acc)


def zero_cochain(k: int, arg_parities, value_parities, theta: int = EVEN) -> CochainTable:
    return CochainTable(k, arg_parities, value_parities, theta, {})
