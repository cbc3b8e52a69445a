"""A degree-16 rational curve in P^4 rebuilt from four syzygies, and its initial ideal.

Binary forms of degree e are stored as coefficient lists ``c[j]`` of
``t^(e-j) u^j``.  The curve's ideal in degree m is the kernel of the
substitution map sending a degree-m monomial in x0..x4 to the degree-16m
form obtained by plugging in f0..f4.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb
from pathlib import Path
from typing import Sequence

from .exact_core import (DEFAULT_CONFIG, ExactMatrix, ModularConfig,
                         kernel_basis, ordered_kernel_pivots, rank)
from .monomials import (GREVLEX, Monomial, MonomialIdeal, descending,
                        is_borel_fixed, is_saturated, monomials_of_degree,
                        parse_monomial)

NUM_FORMS = 5
CURVE_DEGREE = 16
SYZYGY_DEGREES = (5, 4, 4, 3)


class NonGenericSyzygies(ValueError):
    pass


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class BiForm:
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.degree + 1:
            raise InputError(f"degree {self.degree} form needs {self.degree + 1} coefficients")

    @classmethod
    def zero(cls, degree: int) -> "BiForm":
        return cls(degree, (0,) * (degree + 1))

    def __mul__(self, other: "BiForm") -> "BiForm":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BiForm(self.degree + other.degree, out)

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.degree != other.degree:
            raise InputError("adding forms of different degrees")
        return BiForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "BiForm":
        return BiForm(self.degree, [c * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(p for p in (_pow("t", self.degree - j), _pow("u", j)) if p)
            terms.append(f"{c:+d}" + ("*" + mono if mono else ""))
        return " ".join(terms) or "0"


def _pow(v: str, k: int) -> str:
    return "" if k == 0 else v if k == 1 else f"{v}^{k}"


_TERM = re.compile(r"([+-]?)(\d*)\*?((?:[tu](?:\^\{?\d+\}?)?\*?)*)")
_FACTOR = re.compile(r"([tu])(?:\^\{?(\d+)\}?)?")


def parse_biform(text: str, degree: int) -> BiForm:
    """Parse ``t^3 u^2 - 2*t^2u^3``-style text into a homogeneous form."""
    body = re.sub(r"\s+", "", text)
    if not body:
        raise InputError("empty form")
    coeffs = [0] * (degree + 1)
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse {text!r} at {body[pos:]!r}")
        sign, digits, mono = m.groups()
        if not digits and not mono:
            raise InputError(f"empty term in {text!r}")
        te = ue = 0
        for f in _FACTOR.finditer(mono):
            k = int(f.group(2) or 1)
            if f.group(1) == "t":
                te += k
            else:
                ue += k
        if te + ue != degree:
            raise InputError(f"term {m.group(0)!r} has degree {te + ue}, expected {degree}")
        c = int(digits or 1) * (-1 if sign == "-" else 1)
        coeffs[ue] += c
        pos = m.end()
    return BiForm(degree, coeffs)


@dataclass(frozen=True)
class SyzygySpec:
    rows: tuple[tuple[BiForm, ...], ...]
    name: str = ""

    def __post_init__(self):
        for r in self.rows:
            if len(r) != NUM_FORMS:
                raise InputError("each syzygy needs five coefficient forms")
            if len({g.degree for g in r}) != 1:
                raise InputError("coefficient forms of one syzygy must share a degree")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r[0].degree for r in self.rows)

    @classmethod
    def zero(cls, degrees: Sequence[int] = SYZYGY_DEGREES) -> "SyzygySpec":
        return cls(tuple(tuple(BiForm.zero(e) for _ in range(NUM_FORMS)) for e in degrees), "zero")

    @classmethod
    def random(cls, seed: int, degrees: Sequence[int] = SYZYGY_DEGREES, spread: int = 3) -> "SyzygySpec":
        rng = random.Random(seed)
        return cls(tuple(tuple(BiForm(e, [rng.randint(-spread, spread) for _ in range(e + 1)])
                               for _ in range(NUM_FORMS)) for e in degrees), f"random:{seed}")


def parse_syzygies(text: str, name: str = "") -> SyzygySpec:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != NUM_FORMS + 1:
            raise InputError(f"expected a degree and five forms: {line!r}")
        try:
            e = int(fields[0])
        except ValueError:
            raise InputError(f"bad degree {fields[0]!r}") from None
        rows.append(tuple(parse_biform(f, e) for f in fields[1:]))
    if not rows:
        raise InputError("no syzygies found")
    return SyzygySpec(tuple(rows), name)


def _data_text(name: str) -> str:
    return resources.files("heptic16").joinpath("data").joinpath(name).read_text()


def load_syzygies(source: str | Path = "u3") -> SyzygySpec:
    """Load a syzygy file; ``"u3"`` and ``"t3"`` name the two bundled readings."""
    if source in ("u3", "t3"):
        return parse_syzygies(_data_text(f"syzygies_{source}.txt"), str(source))
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    return parse_syzygies(text, path.name)


@dataclass(frozen=True)
class ParamCurve:
    f: tuple[BiForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if len(self.f) != NUM_FORMS or any(g.degree != self.f[0].degree for g in self.f):
            raise InputError("a curve needs five forms of one degree")

    @property
    def degree(self) -> int:
        return self.f[0].degree

    def vector(self) -> list[int]:
        return [c for g in self.f for c in g.coeffs]

    @classmethod
    def from_vector(cls, v: Sequence[int], degree: int = CURVE_DEGREE) -> "ParamCurve":
        n = degree + 1
        return cls(tuple(BiForm(degree, v[i * n:(i + 1) * n]) for i in range(NUM_FORMS)))

    def transform(self, A: Sequence[Sequence[int]]) -> "ParamCurve":
        """Coordinates x'_i = sum_j A[i][j] x_j."""
        out = []
        for row in A:
            acc = BiForm.zero(self.degree)
            for a, g in zip(row, self.f):
                if a:
                    acc = acc + g.scale(a)
            out.append(acc)
        return ParamCurve(tuple(out))

    def as_json(self) -> dict:
        return {"degree": self.degree, "forms": [list(g.coeffs) for g in self.f]}


def load_printed_curve() -> ParamCurve:
    forms = []
    for line in _data_text("printed_curve.txt").splitlines():
        if "=" in line and not line.lstrip().startswith("#"):
            forms.append(parse_biform(line.split("=", 1)[1], CURVE_DEGREE))
    return ParamCurve(tuple(forms))


def load_printed_ideal() -> MonomialIdeal:
    text = " ".join(l for l in _data_text("printed_initial_ideal.txt").splitlines() if not l.startswith("#"))
    gens = [parse_monomial(g, NUM_FORMS) for g in text.split(",") if g.strip()]
    return MonomialIdeal(NUM_FORMS, gens)


def printed_generators() -> list[Monomial]:
    """The printed generator list in its original order (duplicates kept)."""
    text = " ".join(l for l in _data_text("printed_initial_ideal.txt").splitlines() if not l.startswith("#"))
    return [parse_monomial(g, NUM_FORMS) for g in text.split(",") if g.strip()]


# ---------------------------------------------------------------------------
# the syzygy system


def assemble_system(s: SyzygySpec, degree: int = CURVE_DEGREE) -> ExactMatrix:
    """Rows: coefficients of sum_i g_i f_i per syzygy; columns: a[i][j] ordered (i, j)."""
    n = degree + 1
    rows = []
    for syz in s.rows:
        e = syz[0].degree
        for k in range(degree + e + 1):
            row = [0] * (NUM_FORMS * n)
            for i, g in enumerate(syz):
                for j in range(n):
                    if 0 <= k - j <= e:
                        row[i * n + j] = g.coeffs[k - j]
            rows.append(row)
    return ExactMatrix(rows, ncols=NUM_FORMS * n)


def residuals(s: SyzygySpec, c: ParamCurve) -> list[BiForm]:
    out = []
    for syz in s.rows:
        acc = BiForm.zero(syz[0].degree + c.degree)
        for g, f in zip(syz, c.f):
            acc = acc + g * f
        out.append(acc)
    return out


def solve_curve(s: SyzygySpec, cfg: ModularConfig = DEFAULT_CONFIG) -> ParamCurve:
    M = assemble_system(s)
    basis = kernel_basis(M, cfg)
    if len(basis) != 1:
        raise NonGenericSyzygies(f"kernel has dimension {len(basis)}; syzygies {s.name!r} do not pin down a curve")
    curve = ParamCurve.from_vector(basis[0])
    bad = [k for k, r in enumerate(residuals(s, curve)) if not r.is_zero()]
    if bad:
        raise ArithmeticError(f"nonzero residual in syzygies {bad}")
    return curve


def match_report(computed: ParamCurve, printed: ParamCurve) -> dict:
    """Compare coefficientwise after fixing one global rational scalar."""
    cv, pv = computed.vector(), printed.vector()
    k = next((i for i, (a, b) in enumerate(zip(cv, pv)) if a and b), None)
    scalar = Fraction(pv[k], cv[k]) if k is not None else None
    diffs = []
    matches = 0
    n = computed.degree + 1
    for idx, (a, b) in enumerate(zip(cv, pv)):
        expect = a * scalar if scalar is not None else a
        if expect == b:
            matches += 1
        else:
            diffs.append({"form": idx // n, "u_power": idx % n,
                          "computed_scaled": str(expect), "printed": b})
    return {"scalar": str(scalar) if scalar is not None else None,
            "matches": matches, "total": len(cv), "mismatches": diffs}


# ---------------------------------------------------------------------------
# graded pieces of the image ideal


class _Images:
    """Exact images of monomials under x_i -> f_i, memoised by exponent."""

    def __init__(self, c: ParamCurve):
        self.c = c
        self.cache: dict[Monomial, BiForm] = {(0,) * NUM_FORMS: BiForm(0, (1,))}

    def __call__(self, e: Monomial) -> BiForm:
        hit = self.cache.get(e)
        if hit is not None:
            return hit
        i = next(k for k, x in enumerate(e) if x)
        prev = list(e)
        prev[i] -= 1
        out = self(tuple(prev)) * self.c.f[i]
        self.cache[e] = out
        return out


_image_cache: dict[ParamCurve, _Images] = {}


def _images(c: ParamCurve) -> _Images:
    if c not in _image_cache:
        _image_cache.clear()
        _image_cache[c] = _Images(c)
    return _image_cache[c]


def slice_monomials(m: int, order: str = GREVLEX) -> list[Monomial]:
    return descending(monomials_of_degree(NUM_FORMS, m), order)


def substitution_matrix(c: ParamCurve, m: int, order: str = GREVLEX) -> tuple[list[Monomial], ExactMatrix]:
    """Columns are degree-m monomials in descending order; rows are t,u coefficients."""
    monos = slice_monomials(m, order)
    img = _images(c)
    cols = [img(e).coeffs for e in monos]
    return monos, ExactMatrix(zip(*cols), ncols=len(monos))


@dataclass
class IdealSlice:
    degree: int
    monomials: list[Monomial]
    dimension: int
    basis: list[tuple[int, ...]] | None = None


def ideal_slice(c: ParamCurve, m: int, cfg: ModularConfig = DEFAULT_CONFIG,
                with_basis: bool = False) -> IdealSlice:
    if m < 1:
        raise ValueError("degree must be positive")
    monos, A = substitution_matrix(c, m)
    if with_basis:
        basis = kernel_basis(A, cfg)
        return IdealSlice(m, monos, len(basis), basis)
    return IdealSlice(m, monos, A.ncols - rank(A, cfg))


@dataclass
class InitialIdeal:
    ideal: MonomialIdeal
    leading: dict[int, list[Monomial]]
    slice_dims: dict[int, int]
    new_gens: dict[int, list[Monomial]] = field(default_factory=dict)


def leading_monomials(c: ParamCurve, m: int, order: str = GREVLEX,
                      cfg: ModularConfig = DEFAULT_CONFIG) -> list[Monomial]:
    monos, A = substitution_matrix(c, m, order)
    piv = ordered_kernel_pivots(A, range(len(monos)), cfg)
    return [monos[j] for j in piv]


def initial_ideal(c: ParamCurve, up_to: int, order: str = GREVLEX,
                  cfg: ModularConfig = DEFAULT_CONFIG) -> InitialIdeal:
    if up_to < 1:
        raise ValueError("up_to must be positive")
    gens: list[Monomial] = []
    leading, dims, new = {}, {}, {}
    for m in range(1, up_to + 1):
        lead = leading_monomials(c, m, order, cfg)
        leading[m] = lead
        dims[m] = len(lead)
        have = MonomialIdeal(NUM_FORMS, gens)
        fresh = [e for e in lead if e not in have]
        new[m] = fresh
        gens.extend(fresh)
    return InitialIdeal(MonomialIdeal(NUM_FORMS, gens), leading, dims, new)


def hilbert_genus(c: ParamCurve, degrees: Sequence[int], cfg: ModularConfig = DEFAULT_CONFIG) -> dict[int, int]:
    """g with C(m+4,4) - dim I_m = 16m + 1 - g, per degree."""
    out = {}
    for m in degrees:
        dim = ideal_slice(c, m, cfg).dimension
        out[m] = c.degree * m + 1 - (comb(m + 4, 4) - dim)
    return out


def random_coordinate_change(rng: random.Random, n: int = NUM_FORMS, spread: int = 5) -> list[list[int]]:
    while True:
        A = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        if rank(ExactMatrix(A), ModularConfig.from_seed(0, exact=True)) == n:
            return A


@dataclass
class Certificate:
    status: str  # "i=0", "withheld" or "inconclusive"
    regularity: int | None
    borel_fixed: bool
    saturated: bool
    retries: int
    ideal: MonomialIdeal
    note: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "regularity": self.regularity,
                "borel_fixed": self.borel_fixed, "saturated": self.saturated,
                "coordinate_retries": self.retries, "generators": self.ideal.serialize(),
                "max_generator_degree": self.ideal.max_degree(), "note": self.note}


def conclude_i_zero(I: MonomialIdeal, curve: ParamCurve | None = None, *, up_to: int = 6,
                    threshold: int = 8, retries: int = 3, seed: int = 0,
                    cfg: ModularConfig = DEFAULT_CONFIG) -> Certificate:
    """Vanishing of h^1(I_C(7)) from the initial ideal's regularity.

    If the ideal is not Borel-fixed and a curve is supplied, the curve is moved
    by seeded random integer coordinate changes and the initial ideal is
    recomputed, at most ``retries`` times.
    """
    rng = random.Random(seed)
    tries = 0
    while True:
        borel = is_borel_fixed(I)
        sat = is_saturated(I)
        if borel and sat and not I.is_zero():
            reg = I.max_degree()
            status = "i=0" if reg <= threshold else "withheld"
            return Certificate(status, reg, borel, sat, tries, I)
        if curve is None or tries >= retries:
            why = "not Borel-fixed" if not borel else "not saturated" if not sat else "zero ideal"
            return Certificate("inconclusive", None, borel, sat, tries, I, why)
        tries += 1
        curve = curve.transform(random_coordinate_change(rng))
        I = initial_ideal(curve, up_to, cfg=cfg).ideal
