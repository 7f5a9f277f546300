"""Exact subspace arithmetic over GF(p) inside a slice of a group algebra.

A Subspace is stored as a canonical reduced row-echelon basis (pivots 1,
columns cleared above and below, pivot columns strictly increasing) over a
fixed ambient enumeration, so two equal subspaces have identical rows.  The
ambient supplies the enumeration and the right-multiplication structure:
either a word-metric ball of an infinite group carrying the deformed
(lambda-twisted) product, or a finite group algebra.

Also houses the two invariance defects: the rank defect
(rank(F + FS) - rank F)/rank F for subspaces, and the counting defect
(#(F u FS) - #F)/#F for finite subsets of a group.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ContractError, OutOfRangeError
from .groups import GroupOracle, WordMetricBall
from .scalars import is_prime


def rref(mat: np.ndarray, p: int) -> np.ndarray:
    """Canonical reduced row echelon form over GF(p); zero rows trimmed."""
    A = (np.asarray(mat, dtype=np.int64) % p).copy()
    if A.ndim != 2:
        raise ContractError("need a 2-d matrix")
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if A[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            A[nz] = (A[nz] - np.outer(col[nz], A[r])) % p
        r += 1
        if r == rows:
            break
    return A[:r]


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    return rref(mat, p).shape[0]


class Ambient:
    """Enumeration of basis labels plus the right-multiplication structure."""

    labels: tuple
    prime: int

    def __init__(self, labels, prime: int):
        if not is_prime(prime):
            raise ContractError(f"{prime} is not prime")
        self.labels = tuple(labels)
        self.index = {g: i for i, g in enumerate(self.labels)}
        self.prime = prime

    @property
    def dim(self) -> int:
        return len(self.labels)

    def right_translation(self, h) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (perm, coef): basis g_i maps to coef[i] * basis[perm[i]];
        perm[i] = -1 marks a product escaping the enumeration."""
        raise NotImplementedError

    def vector(self, terms: dict) -> np.ndarray:
        """Dense vector from a {label: coefficient} mapping."""
        v = np.zeros(self.dim, dtype=np.int64)
        for g, c in terms.items():
            i = self.index.get(g)
            if i is None:
                raise OutOfRangeError(f"label {g!r} outside the ambient enumeration")
            v[i] = c % self.prime
        return v

    def apply_right(self, v: np.ndarray, element: dict) -> np.ndarray:
        """v * element, where element is a {label: coefficient} mapping."""
        out = np.zeros(self.dim, dtype=np.int64)
        for h, c in element.items():
            c %= self.prime
            if c == 0:
                continue
            perm, coef = self.right_translation(h)
            bad = np.nonzero((perm < 0) & ((v % self.prime) != 0))[0]
            if bad.size:
                g = self.labels[int(bad[0])]
                raise OutOfRangeError(
                    f"product {g!r} * {h!r} escapes the ambient enumeration"
                )
            moved = (v * coef) % self.prime
            ok = perm >= 0
            np.add.at(out, perm[ok], moved[ok] * c)
        return out % self.prime


class BallAmbient(Ambient):
    """Slice of the deformed group algebra spanned by a word-metric ball.

    The product of basis elements g, h carries the twist
    lambda**(len(g) + len(h) - len(gh)); lambda = 1 recovers the plain group
    algebra and lambda = 0 the length-graded degeneration.
    """

    def __init__(self, oracle: GroupOracle, ball: WordMetricBall, prime: int, lam: int):
        super().__init__(ball.elements, prime)
        self.oracle = oracle
        self.ball = ball
        self.lam = lam % prime
        self._tables: dict = {}

    def right_translation(self, h):
        cached = self._tables.get(h)
        if cached is not None:
            return cached
        lh = self.ball.word_length(h)  # raises if h itself is outside
        n = self.dim
        perm = np.full(n, -1, dtype=np.int64)
        coef = np.zeros(n, dtype=np.int64)
        p = self.prime
        lam = self.lam
        for i, g in enumerate(self.labels):
            gh = self.oracle.mul(g, h)
            j = self.index.get(gh)
            if j is None:
                continue
            perm[i] = j
            e = self.ball.lengths[g] + lh - self.ball.lengths[gh]
            coef[i] = 1 if e == 0 else pow(lam, e, p)
        out = (perm, coef)
        self._tables[h] = out
        return out


class Subspace:
    """Immutable canonical-echelon subspace of an ambient enumeration."""

    __slots__ = ("ambient", "rows")

    def __init__(self, ambient: Ambient, rows: np.ndarray, *, _canonical=False):
        if rows.size and rows.shape[1] != ambient.dim:
            raise ContractError("vector length does not match the ambient enumeration")
        if not _canonical:
            rows = rref(rows, ambient.prime)
        rows = np.asarray(rows, dtype=np.int64)
        rows.setflags(write=False)
        self.ambient = ambient
        self.rows = rows

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    def pivots(self) -> list[int]:
        return [int(np.nonzero(row)[0][0]) for row in self.rows]

    def contains_vector(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce_vector(v))

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Remainder of v after elimination against the echelon rows."""
        p = self.ambient.prime
        w = (np.asarray(v, dtype=np.int64) % p).copy()
        for row, c in zip(self.rows, self.pivots()):
            if w[c]:
                w = (w - w[c] * row) % p
        return w

    def __le__(self, other: "Subspace") -> bool:
        _check_same_ambient(self, other)
        return all(other.contains_vector(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient is other.ambient
                and self.rows.shape == other.rows.shape
                and bool(np.array_equal(self.rows, other.rows)))

    def __hash__(self):
        return hash((id(self.ambient), self.rows.tobytes()))

    def __repr__(self):
        return f"<Subspace rank {self.rank} of dim-{self.ambient.dim} ambient>"


def _check_same_ambient(a: Subspace, b: Subspace):
    if a.ambient is not b.ambient:
        raise ContractError("subspaces live in different ambient enumerations")


def span(ambient: Ambient, vectors) -> Subspace:
    """Canonical subspace spanned by vectors ({label: coeff} dicts or arrays)."""
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            rows.append(ambient.vector(v))
        else:
            a = np.asarray(v, dtype=np.int64)
            if a.shape != (ambient.dim,):
                raise ContractError("vector length does not match the ambient enumeration")
            rows.append(a)
    if not rows:
        return Subspace(ambient, np.zeros((0, ambient.dim), dtype=np.int64), _canonical=True)
    return Subspace(ambient, np.array(rows))


def zero_subspace(ambient: Ambient) -> Subspace:
    return span(ambient, [])


def full_subspace(ambient: Ambient) -> Subspace:
    return Subspace(ambient, np.eye(ambient.dim, dtype=np.int64), _canonical=True)


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace(a.ambient, np.vstack([a.rows, b.rows]))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize [[A|A],[B|0]]; rows with zero left block carry
    the intersection in the right block."""
    _check_same_ambient(a, b)
    n = a.ambient.dim
    if a.rank == 0 or b.rank == 0:
        return zero_subspace(a.ambient)
    top = np.hstack([a.rows, a.rows])
    bot = np.hstack([b.rows, np.zeros_like(b.rows)])
    ech = rref(np.vstack([top, bot]), a.ambient.prime)
    keep = [row[n:] for row in ech if not np.any(row[:n])]
    if not keep:
        return zero_subspace(a.ambient)
    return Subspace(a.ambient, np.array(keep))


def right_multiply(f: Subspace, elements: list[dict]) -> Subspace:
    """Span of {row * s : row in basis of F, s in elements}."""
    rows = [f.ambient.apply_right(row, s) for row in f.rows for s in elements]
    return span(f.ambient, rows)


def invariance_defect(f: Subspace, elements: list[dict]) -> Fraction:
    """(rank(F + FS) - rank F) / rank F, exactly."""
    if f.rank == 0:
        raise ContractError("invariance defect needs rank F >= 1")
    fs = right_multiply(f, elements)
    grown = sum_subspaces(f, fs)
    return Fraction(grown.rank - f.rank, f.rank)


def set_defect(f, s, oracle: GroupOracle) -> Fraction:
    """(#(F u FS) - #F) / #F for finite subsets F, S of the group."""
    fset = set(f)
    if not fset:
        raise ContractError("set defect needs a nonempty F")
    grown = set(fset)
    for g in fset:
        for t in s:
            grown.add(oracle.mul(g, t))
    return Fraction(len(grown) - len(fset), len(fset))
