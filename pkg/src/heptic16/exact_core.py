"""Exact linear algebra over Q, accelerated by elimination modulo word-size primes.

Every public routine takes a :class:`ModularConfig`.  Ranks and pivot sets are
first computed modulo each configured prime; if all primes agree the answer is
accepted, otherwise (or when ``cfg.exact`` is set) the computation is redone
with fraction-free elimination over the integers.  Vectors and reduced rows
returned to callers are always exact and checked against the input matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import isprime, nextprime

PRIME_LOW = 2**30
PRIME_HIGH = 2**31  # products of two residues must fit in int64


class DimensionError(ValueError):
    pass


class ExactMatrix:
    """Dense immutable matrix of rationals."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise DimensionError(f"ragged rows: widths {sorted(widths)}")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise DimensionError(f"declared {ncols} columns, rows have {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else ExactMatrix([], 0)

    def columns(self, cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[r[c] for c in cols] for r in self._rows], ncols=len(cols))

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.ncols} columns")
        return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self._rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def integer_rows(self) -> list[list[int]]:
        """Each row scaled by the lcm of its denominators (row space unchanged)."""
        out = []
        for r in self._rows:
            d = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * d) for x in r])
        return out


@dataclass(frozen=True)
class ModularConfig:
    primes: tuple[int, ...]
    seed: int = 0
    exact: bool = False
    max_primes: int = 48

    def __post_init__(self):
        if len(self.primes) < 2:
            raise ValueError("at least two primes are required")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError(f"primes are not distinct: {self.primes}")
        for p in self.primes:
            if not (PRIME_LOW < p < PRIME_HIGH) or not isprime(p):
                raise ValueError(f"{p} is not a prime in (2^30, 2^31)")

    @classmethod
    def from_seed(cls, seed: int = 0, count: int = 2, exact: bool = False) -> "ModularConfig":
        rng = random.Random(seed)
        primes: list[int] = []
        while len(primes) < count:
            p = _draw_prime(rng)
            if p not in primes:
                primes.append(p)
        return cls(tuple(primes), seed=seed, exact=exact)

    def prime_stream(self) -> Iterator[int]:
        """Configured primes followed by an endless seeded supply of further primes."""
        yield from self.primes
        seen = set(self.primes)
        rng = random.Random(f"{self.seed}:extra")
        while True:
            p = _draw_prime(rng)
            if p not in seen:
                seen.add(p)
                yield p


def _draw_prime(rng: random.Random) -> int:
    while True:
        p = int(nextprime(rng.randrange(PRIME_LOW + 1, PRIME_HIGH - 2**20)))
        if p < PRIME_HIGH:
            return p


DEFAULT_CONFIG = ModularConfig.from_seed(0)


# ---------------------------------------------------------------------------
# modular kernels


class _UnluckyPrime(Exception):
    pass


def reduce_mod(M: ExactMatrix, p: int) -> np.ndarray:
    out = np.empty((M.nrows, M.ncols), dtype=np.int64)
    for i, row in enumerate(M.rows):
        for j, x in enumerate(row):
            if x.denominator == 1:
                out[i, j] = x.numerator % p
            else:
                if x.denominator % p == 0:
                    raise _UnluckyPrime(p)
                out[i, j] = x.numerator * pow(x.denominator, -1, p) % p
    return out


def rref_mod(A: np.ndarray, p: int, order: Sequence[int] | None = None) -> tuple[list[int], np.ndarray]:
    """Reduced row echelon form over GF(p); pivot search follows ``order``."""
    A = np.array(A, dtype=np.int64) % p
    n, m = A.shape
    order = range(m) if order is None else order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r]) % p) % p
        pivots.append(c)
        r += 1
    return pivots, A[:r]


def kernel_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning the right kernel of ``A`` over GF(p)."""
    n, m = A.shape
    pivots, R = rref_mod(A, p)
    free = [c for c in range(m) if c not in set(pivots)]
    K = np.zeros((len(free), m), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for r, c in enumerate(pivots):
            K[i, c] = (-R[r, f]) % p
    return K


# ---------------------------------------------------------------------------
# exact kernels


def bareiss(rows: list[list[int]], order: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Fraction-free elimination of an integer matrix; returns pivots and echelon rows."""
    A = [list(r) for r in rows]
    n = len(A)
    m = len(A[0]) if A else 0
    pivots: list[int] = []
    done: set[int] = set()
    prev = 1
    r = 0
    for c in order:
        if r == n:
            break
        k = next((i for i in range(r, n) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        piv_row = A[r]
        pv = piv_row[c]
        live = [j for j in range(m) if j not in done and j != c]
        for i in range(r + 1, n):
            row = A[i]
            a = row[c]
            if a:
                for j in live:
                    row[j] = (pv * row[j] - a * piv_row[j]) // prev
            else:
                for j in live:
                    row[j] = pv * row[j] // prev
            row[c] = 0
        prev = pv
        done.add(c)
        pivots.append(c)
        r += 1
    return pivots, A[:r]


def _rref_exact(M: ExactMatrix, order: Sequence[int]) -> tuple[list[int], list[list[Fraction]]]:
    pivots, E = bareiss(M.integer_rows(), order)
    R = [[Fraction(x) for x in row] for row in E]
    # back substitution to the reduced form
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for s in range(r):
            f = R[s][c]
            if f:
                R[s] = [x - f * y for x, y in zip(R[s], R[r])]
    return pivots, R


def _check_order(order: Sequence[int], m: int) -> list[int]:
    order = list(order)
    if sorted(order) != list(range(m)):
        raise ValueError(f"column order is not a permutation of 0..{m - 1}")
    return order


def _require_nonempty(M: ExactMatrix):
    if M.nrows == 0 or M.ncols == 0:
        raise DimensionError("matrix is empty")


def _modular_pivots(M: ExactMatrix, order: Sequence[int], cfg: ModularConfig):
    """Pivot sets at each configured prime, or None on disagreement."""
    results = []
    stream = cfg.prime_stream()
    while len(results) < len(cfg.primes):
        p = next(stream)
        try:
            A = reduce_mod(M, p)
        except _UnluckyPrime:
            continue
        results.append((p, *rref_mod(A, p, order)))
    first = results[0][1]
    if any(piv != first for _, piv, _ in results[1:]):
        return None
    return results


def rank(M: ExactMatrix, cfg: ModularConfig = DEFAULT_CONFIG) -> int:
    _require_nonempty(M)
    if not cfg.exact:
        res = _modular_pivots(M, range(M.ncols), cfg)
        if res is not None:
            return len(res[0][1])
    pivots, _ = bareiss(M.integer_rows(), range(M.ncols))
    return len(pivots)


def _ratrecon(a: int, m: int) -> Fraction | None:
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _verify_rref(M: ExactMatrix, pivots: list[int], R: list[list[Fraction]]) -> bool:
    # every row of M must equal M[:, pivots] @ R; with modular rank >= len(pivots)
    # this pins R as the unique reduced form.
    for row in M.rows:
        coeffs = [row[c] for c in pivots]
        for j in range(M.ncols):
            s = sum((a * R[k][j] for k, a in enumerate(coeffs) if a), Fraction(0))
            if s != row[j]:
                return False
    return True


def _rref_multimodular(M: ExactMatrix, order: list[int], cfg: ModularConfig):
    res = _modular_pivots(M, order, cfg)
    if res is None:
        return None
    pivots = res[0][1]
    if not pivots:
        return pivots, []
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    modulus = 1
    acc = np.zeros((len(pivots), len(free)), dtype=object)
    used = []

    def absorb(p, R):
        nonlocal modulus, acc
        sub = R[:, free].astype(object)
        if modulus == 1:
            acc = sub
        else:
            inv = pow(modulus, -1, p)
            acc = acc + modulus * (((sub - acc) % p) * inv % p)
        modulus *= p
        used.append(p)

    for p, _, R in res:
        absorb(p, R)
    stream = cfg.prime_stream()
    for _ in range(len(cfg.primes)):
        next(stream)
    while True:
        recon = [[_ratrecon(int(x), modulus) for x in row] for row in acc]
        if all(x is not None for row in recon for x in row):
            R = []
            for r, c in enumerate(pivots):
                full = [Fraction(0)] * M.ncols
                full[c] = Fraction(1)
                for k, f in enumerate(free):
                    full[f] = recon[r][k]
                R.append(full)
            if _verify_rref(M, pivots, R):
                return pivots, R
        if len(used) >= cfg.max_primes:
            return None
        p = next(stream)
        try:
            A = reduce_mod(M, p)
        except _UnluckyPrime:
            continue
        piv_p, R_p = rref_mod(A, p, order)
        if piv_p != pivots:
            continue  # unlucky prime
        absorb(p, R_p)


def row_reduce_ordered(M: ExactMatrix, column_order: Sequence[int],
                       cfg: ModularConfig = DEFAULT_CONFIG) -> tuple[tuple[int, ...], ExactMatrix]:
    """Reduced row echelon form with pivots searched in ``column_order``.

    Returns the pivot columns (one per nonzero reduced row, in row order) and
    the reduced rows.
    """
    _require_nonempty(M)
    order = _check_order(column_order, M.ncols)
    out = None if cfg.exact else _rref_multimodular(M, order, cfg)
    if out is None:
        out = _rref_exact(M, order)
    pivots, R = out
    return tuple(pivots), ExactMatrix(R, ncols=M.ncols)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    d = lcm(*(x.denominator for x in v)) if v else 1
    w = [int(x * d) for x in v]
    g = gcd(*w)
    if g == 0:
        return tuple(w)
    w = [x // g for x in w]
    lead = next(x for x in w if x)
    return tuple(-x for x in w) if lead < 0 else tuple(w)


def kernel_basis(M: ExactMatrix, cfg: ModularConfig = DEFAULT_CONFIG) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right kernel, one vector per free column."""
    pivots, R = row_reduce_ordered(M, range(M.ncols), cfg)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r, f]
        basis.append(primitive(v))
    for v in basis:
        if any(M.apply(v)):
            raise ArithmeticError("kernel vector failed exact verification")
    return basis


def kernel_dimension(M: ExactMatrix, cfg: ModularConfig = DEFAULT_CONFIG) -> int:
    return M.ncols - rank(M, cfg)


def ordered_kernel_pivots(M: ExactMatrix, column_order: Sequence[int],
                          cfg: ModularConfig = DEFAULT_CONFIG) -> tuple[int, ...]:
    """Pivot columns of the kernel basis reduced with pivot search in ``column_order``.

    With columns indexing monomials in decreasing term order these pivots are
    the leading monomials of the kernel.  A column leads some kernel vector
    exactly when it lies in the span of the columns after it in the order, so
    the answer is the complement of the pivots of ``M`` searched in reverse.
    No kernel vector is ever built.
    """
    _require_nonempty(M)
    order = _check_order(column_order, M.ncols)
    backwards = order[::-1]
    pivots = None
    if not cfg.exact:
        res = _modular_pivots(M, backwards, cfg)
        if res is not None:
            pivots = res[0][1]
    if pivots is None:
        pivots, _ = bareiss(M.integer_rows(), backwards)
    taken = set(pivots)
    return tuple(j for j in range(M.ncols) if j not in taken)
