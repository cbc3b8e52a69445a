"""Delta-invariants of parameterized curve singularities and ramification counts.

A singularity is given by its branches, each a tuple of coordinate power
series in its own parameter.  Series are sparse ``((exponent, coeff), ...)``
tuples with exact coefficients.  The delta-invariant is the colength of the
subalgebra generated by the coordinate functions inside the product of the
branch power-series rings, computed modulo t_i^T.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from importlib import resources
from itertools import combinations, combinations_with_replacement
from math import comb, gcd
from pathlib import Path
from typing import Iterable, Sequence

from .exact_core import DEFAULT_CONFIG, ExactMatrix, ModularConfig, kernel_basis, rank
from .monomials import monomials_of_degree

Series = tuple[tuple[int, Fraction], ...]

DEFAULT_TRUNCATION = 16


class TruncationError(ArithmeticError):
    """The colength changed between T and T+2; raise T."""


def _series(pairs) -> Series:
    acc: dict[int, Fraction] = {}
    for e, c in pairs:
        e, c = int(e), Fraction(c)
        if e < 0:
            raise ValueError("negative exponent")
        acc[e] = acc.get(e, Fraction(0)) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def valuation(s: Series) -> int | None:
    return s[0][0] if s else None


@dataclass(frozen=True)
class BranchParam:
    branches: tuple[tuple[Series, ...], ...]

    def __post_init__(self):
        br = tuple(tuple(_series(s) for s in b) for b in self.branches)
        object.__setattr__(self, "branches", br)
        if not br:
            raise ValueError("no branches")
        if len({len(b) for b in br}) != 1:
            raise ValueError("branches live in different embedding dimensions")
        for i, b in enumerate(br):
            if not any(b):
                raise ValueError(f"branch {i} is identically zero")
            if any(valuation(s) == 0 for s in b):
                raise ValueError(f"branch {i} does not pass through the origin")

    @property
    def r(self) -> int:
        return len(self.branches[0])

    @property
    def l(self) -> int:
        return len(self.branches)

    def dense(self, T: int) -> list[list[list[Fraction]]]:
        """Per branch, per coordinate: coefficient list mod t^T."""
        out = []
        for b in self.branches:
            coords = []
            for s in b:
                v = [Fraction(0)] * T
                for e, c in s:
                    if e < T:
                        v[e] = c
                coords.append(v)
            out.append(coords)
        return out

    def is_monomial_unibranch(self) -> bool:
        return self.l == 1 and all(len(s) <= 1 for s in self.branches[0])

    def exponents(self) -> list[int]:
        return [s[0][0] for s in self.branches[0] if s]

    def transform(self, A: Sequence[Sequence]) -> "BranchParam":
        """Apply the linear change x'_i = sum_j A[i][j] x_j."""
        new = []
        for b in self.branches:
            coords = []
            for row in A:
                pairs = [(e, a * c) for a, s in zip(row, b) if a for e, c in s]
                coords.append(_series(pairs))
            new.append(tuple(coords))
        return BranchParam(tuple(new))


def branch_param(branches: Iterable[Iterable[Iterable[Sequence]]]) -> BranchParam:
    return BranchParam(tuple(tuple(_series(s) for s in b) for b in branches))


# ---------------------------------------------------------------------------
# colength of the generated subalgebra


def _mul_trunc(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    T = len(a)
    out = [Fraction(0)] * T
    for i, x in enumerate(a):
        if x:
            for j in range(T - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


class _Echelon:
    """Incremental reduced row echelon form over Q."""

    def __init__(self):
        self.rows: dict[int, list[Fraction]] = {}

    def add(self, v: list[Fraction]) -> list[Fraction] | None:
        v = list(v)
        for p, row in self.rows.items():
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return None
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for q, row in self.rows.items():
            c = row[p]
            if c:
                self.rows[q] = [x - c * y for x, y in zip(row, v)]
        self.rows[p] = v
        return v

    def __len__(self):
        return len(self.rows)


def subalgebra_dimension(p: BranchParam, T: int) -> int:
    """Dimension of the image of C[x_1..x_r] in prod_i C[t_i]/(t_i^T)."""
    dense = p.dense(T)
    gens = [[dense[b][j] for b in range(p.l)] for j in range(p.r)]
    ech = _Echelon()
    one = [[Fraction(int(k == 0)) for k in range(T)] for _ in range(p.l)]

    def flat(v):
        return [x for part in v for x in part]

    def unflat(v):
        return [v[b * T:(b + 1) * T] for b in range(p.l)]

    layer = [flat(one)] if ech.add(flat(one)) else []
    # degree-by-degree: only vectors new in the previous degree need multiplying
    for _ in range(T):
        nxt = []
        for v in layer:
            parts = unflat(v)
            for g in gens:
                w = flat([_mul_trunc(a, b) for a, b in zip(parts, g)])
                if ech.add(w) is not None:
                    nxt.append(w)
        if not nxt:
            break
        layer = nxt
    return len(ech)


def colength(p: BranchParam, T: int) -> int:
    return p.l * T - subalgebra_dimension(p, T)


def delta_invariant(p: BranchParam, T: int = DEFAULT_TRUNCATION) -> int:
    if T < 2:
        raise ValueError("truncation order must be at least 2")
    a, b = colength(p, T), colength(p, T + 2)
    if a != b:
        raise TruncationError(f"colength {a} at T={T} but {b} at T={T + 2}; raise T")
    return a


def semigroup_delta(exponents: Sequence[int]) -> int:
    """Number of gaps of the numerical semigroup generated by ``exponents``."""
    gens = sorted({int(e) for e in exponents})
    if not gens or gens[0] < 1:
        raise ValueError("generators must be positive")
    if reduce(gcd, gens) != 1:
        raise ValueError(f"gcd of {gens} is not 1; the complement is infinite")
    bound = gens[0] * gens[-1]  # past the Frobenius number
    reach = [False] * (bound + 1)
    reach[0] = True
    for k in range(1, bound + 1):
        reach[k] = any(k >= g and reach[k - g] for g in gens)
    return reach.count(False)


# ---------------------------------------------------------------------------
# independent oracle for several branches: delta = sum delta_i + sum_k i(C_k, C_1 u .. u C_{k-1})


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _branch_polys(branch) -> list[list[Fraction]]:
    out = []
    for s in branch:
        top = s[-1][0] if s else 0
        v = [Fraction(0)] * (top + 1)
        for e, c in s:
            v[e] = c
        out.append(v)
    return out


def vanishing_polynomials(branches, r: int, degree: int, cfg: ModularConfig = DEFAULT_CONFIG):
    """Polynomials of degree <= ``degree`` vanishing on every given branch.

    Returned as dicts monomial -> integer coefficient.  Branches must be
    polynomial parametrizations.
    """
    monos = [m for d in range(1, degree + 1) for m in monomials_of_degree(r, d)]
    polys = [_branch_polys(b) for b in branches]
    columns = []
    for m in monos:
        col = []
        for coords in polys:
            img = [Fraction(1)]
            for j, k in enumerate(m):
                for _ in range(k):
                    img = _poly_mul(img, coords[j])
            col.append(img)
        columns.append(col)
    height = [max(len(c[b]) for c in columns) for b in range(len(polys))]
    rows = []
    for b, h in enumerate(height):
        for k in range(h):
            rows.append([c[b][k] if k < len(c[b]) else 0 for c in columns])
    basis = kernel_basis(ExactMatrix(rows, ncols=len(monos)), cfg)
    return [{m: c for m, c in zip(monos, v) if c} for v in basis]


def _quotient_length(gens, r: int, D: int, cfg: ModularConfig) -> int:
    """dim C[x]/(gens + m^D)."""
    monos = [m for d in range(D) for m in monomials_of_degree(r, d)]
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for h in gens:
        low = min(sum(m) for m in h)
        for d in range(D - low):
            for a in monomials_of_degree(r, d):
                row = [0] * len(monos)
                for m, c in h.items():
                    prod = tuple(x + y for x, y in zip(a, m))
                    if prod in index:
                        row[index[prod]] = c
                if any(row):
                    rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank(ExactMatrix(rows, ncols=len(monos)), cfg)


def intersection_length(A, B, r: int, degree: int = 3, cfg: ModularConfig = DEFAULT_CONFIG,
                        max_D: int = 12) -> int:
    """Length of O_0/(I_A + I_B) for two unions of polynomial branches through 0.

    The power of the maximal ideal is raised until m^D lies in the ideal modulo
    m^(D+1), which by Nakayama means it lies in the ideal.
    """
    gens = vanishing_polynomials(A, r, degree, cfg) + vanishing_polynomials(B, r, degree, cfg)
    prev = None
    for D in range(1, max_D + 1):
        cur = _quotient_length(gens, r, D, cfg)
        if cur == prev:
            return cur
        prev = cur
    raise TruncationError(f"intersection length not stable by D={max_D}")


def branch_delta_oracle(branch) -> int | None:
    """Delta of one branch without the colength routine, or None if no oracle applies."""
    vals = [valuation(s) for s in branch if s]
    if 1 in vals:
        return 0
    if all(len(s) <= 1 for s in branch):
        return semigroup_delta(vals)
    return None


def iterated_delta(p: BranchParam, degree: int = 3, cfg: ModularConfig = DEFAULT_CONFIG) -> int | None:
    """sum of branch deltas + sum_k i(C_k, C_1 u ... u C_{k-1})."""
    parts = [branch_delta_oracle(b) for b in p.branches]
    if None in parts:
        return None
    total = sum(parts)
    for k in range(1, p.l):
        total += intersection_length([p.branches[k]], p.branches[:k], p.r, degree, cfg)
    return total


def pairwise_delta(p: BranchParam, degree: int = 3, cfg: ModularConfig = DEFAULT_CONFIG) -> int | None:
    """sum of branch deltas + sum over pairs of intersection multiplicities.

    Agrees with the true value for plane curves only.
    """
    parts = [branch_delta_oracle(b) for b in p.branches]
    if None in parts:
        return None
    return sum(parts) + sum(intersection_length([a], [b], p.r, degree, cfg)
                            for a, b in combinations(p.branches, 2))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class SingularityRecord:
    name: str
    param: BranchParam
    expected_delta: int
    notes: str = ""
    flag_only: bool = False

    def __post_init__(self):
        if self.expected_delta not in (1, 2, 3):
            raise ValueError(f"{self.name}: expected delta {self.expected_delta} outside 1..3")


def parse_catalog(data) -> list[SingularityRecord]:
    out = []
    for rec in data["records"]:
        try:
            branches = rec["branches"]
            if rec.get("branch_count", len(branches)) != len(branches):
                raise ValueError(f"{rec['name']}: branch_count disagrees with the branch list")
            out.append(SingularityRecord(rec["name"], branch_param(branches), int(rec["expected_delta"]),
                                         rec.get("notes", ""), bool(rec.get("flag_only", False))))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed catalog record {rec!r}") from exc
    return out


def load_catalog(path: str | Path | None = None) -> list[SingularityRecord]:
    if path is None:
        text = resources.files("heptic16").joinpath("data").joinpath("singularity_catalog.json").read_text()
    else:
        text = Path(path).read_text()
    return parse_catalog(json.loads(text))


@dataclass
class AuditLine:
    name: str
    expected: int
    computed: int
    semigroup: int | None = None
    iterated: int | None = None
    pairwise: int | None = None
    flag_only: bool = False
    notes: str = ""

    @property
    def match(self) -> bool:
        return self.computed == self.expected

    @property
    def oracle_ok(self) -> bool:
        checks = [x for x in (self.semigroup, self.iterated) if x is not None]
        return all(x == self.computed for x in checks)

    def as_dict(self) -> dict:
        return {"name": self.name, "expected_delta": self.expected, "computed_delta": self.computed,
                "match": self.match, "semigroup_delta": self.semigroup,
                "iterated_intersection_delta": self.iterated, "pairwise_intersection_delta": self.pairwise,
                "oracle_agrees": self.oracle_ok, "flag_only": self.flag_only, "notes": self.notes}


def catalog_audit(catalog: Sequence[SingularityRecord], T: int = DEFAULT_TRUNCATION,
                  cfg: ModularConfig = DEFAULT_CONFIG) -> list[AuditLine]:
    lines = []
    for rec in catalog:
        if T < 2 * rec.expected_delta + 4:
            raise ValueError(f"{rec.name}: truncation {T} is below 2*delta+4")
        p = rec.param
        line = AuditLine(rec.name, rec.expected_delta, delta_invariant(p, T),
                         flag_only=rec.flag_only, notes=rec.notes)
        if p.is_monomial_unibranch():
            line.semigroup = semigroup_delta(p.exponents())
        if p.l > 1:
            line.iterated = iterated_delta(p, cfg=cfg)
            line.pairwise = pairwise_delta(p, cfg=cfg)
        lines.append(line)
    return lines


# ---------------------------------------------------------------------------
# ramification types


@dataclass(frozen=True)
class RamificationType:
    r: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        if not r:
            raise ValueError("empty ramification type")
        if r[0] < 1:
            raise ValueError("vanishing orders must be positive")
        if any(x > y for x, y in zip(r, r[1:])):
            raise ValueError(f"ramification type {r} is not weakly increasing")

    @property
    def n(self) -> int:
        return len(self.r)

    def strictly_increasing(self) -> bool:
        return all(x < y for x, y in zip(self.r, self.r[1:]))


def ramification_codim(rt: RamificationType) -> int:
    return sum(x - i for i, x in enumerate(rt.r, 1))


def expected_codim_alt(rt: RamificationType) -> int:
    """The alternative count sum r_i - C(n, 2); larger by n."""
    return sum(rt.r) - comb(rt.n, 2)


def _det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * a * _det(minor)
    return total


def linearized_rank_conditions(rt: RamificationType, cfg: ModularConfig = DEFAULT_CONFIG) -> int:
    """Rank of the first-order parts of the minors cutting out a fixed ramification type.

    Model: psi_k = t^(r_k)/r_k!, deformed by eps * sum_l alpha_l^(k) t^l / l!.
    The l-th derivative at 0 of psi_k^eps is [l == r_k] + eps * alpha_l^(k).
    For each i every i x i minor of the n x (r_i - 1) matrix of derivatives
    1..r_i-1 must vanish; to first order a minor contributes the linear form
    sum_(a,b) cofactor_(a,b)(A0) * alpha.
    """
    n, r = rt.n, rt.r
    width = max(r) - 1
    if width < 1:
        return 0
    var = {(k, l): k * width + (l - 1) for k in range(n) for l in range(1, width + 1)}
    forms = set()
    for i in range(1, n + 1):
        cols = range(1, r[i - 1])
        for R in combinations(range(n), i):
            for C in combinations(cols, i):
                A0 = [[int(r[k] == l) for l in C] for k in R]
                # cofactors vanish unless A0 has rank >= i - 1
                hit = {r[k] for k in R if r[k] in C}
                if len(hit) < i - 1:
                    continue
                form = [0] * (n * width)
                for a, k in enumerate(R):
                    for b, l in enumerate(C):
                        minor = [row[:b] + row[b + 1:] for x, row in enumerate(A0) if x != a]
                        c = (-1) ** (a + b) * _det(minor)
                        if c:
                            form[var[(k, l)]] += c
                if any(form):
                    forms.add(tuple(form))
    if not forms:
        return 0
    return rank(ExactMatrix(sorted(forms)), cfg)


def weakly_increasing_types(max_n: int = 5, max_r: int = 8, min_r: int = 1):
    for n in range(1, max_n + 1):
        for r in combinations_with_replacement(range(min_r, max_r + 1), n):
            yield RamificationType(r)


def quadruple_point_codim(rank: int = 5, points: int = 4, target_dim: int = 5,
                          point_moduli: int = 4) -> tuple[int, int]:
    fixed = rank * points
    varied = fixed - point_moduli - target_dim
    if varied < 0:
        raise ValueError(f"varied codimension {varied} is negative")
    return fixed, varied


def lemma_verdict(g: int) -> int:
    if g < 0:
        raise ValueError("genus must be non-negative")
    return min(3 * g, 9)


@dataclass
class ResidueCheck:
    g: int
    required: int
    ok: bool


def residue_checks(lo: int = 1, hi: int = 21, base: int = 14) -> list[ResidueCheck]:
    return [ResidueCheck(g, base + lemma_verdict(g), g <= base + lemma_verdict(g)) for g in range(lo, hi + 1)]
