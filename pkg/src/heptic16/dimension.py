"""Genus bounds, splitting-stratum codimensions and incidence dimension counts."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator


@dataclass(frozen=True)
class SplittingType:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        object.__setattr__(self, "a", a)
        if not a:
            raise ValueError("empty splitting type")
        if any(x < 1 for x in a):
            raise ValueError(f"splitting type {a} has a summand of degree < 1")
        if any(x < y for x, y in zip(a, a[1:])):
            raise ValueError(f"splitting type {a} is not weakly decreasing")

    @property
    def d(self) -> int:
        return sum(self.a)

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class CurveClass:
    n: int
    d: int
    g: int
    i: int = 0

    def __post_init__(self):
        if self.d < 1 or self.g < 0 or self.i < 0:
            raise ValueError(f"invalid curve class {self}")


@dataclass(frozen=True)
class AmbientConfig:
    hypersurface_degree: int = 7
    curve_degree: int = 16
    ambient_dim: int = 5

    @property
    def N(self) -> int:
        """Dimension of the projective space of hypersurfaces."""
        return comb(self.hypersurface_degree + self.ambient_dim, self.ambient_dim) - 1


def castelnuovo_bound(d: int, n: int) -> int:
    """Maximal arithmetic genus of an irreducible nondegenerate degree-d curve in P^n."""
    if n < 2 or d < n:
        raise ValueError(f"no irreducible nondegenerate curve of degree {d} in P^{n}")
    m, eps = divmod(d - 1, n - 1)
    return comb(m, 2) * (n - 1) + m * eps


def stratum_codim(a) -> int:
    """Codimension of a splitting stratum; the tuple need not be sorted."""
    a = tuple(a.a if isinstance(a, SplittingType) else a)
    return sum(max(0, x - y - 1)
               for i, x in enumerate(a) for j, y in enumerate(a)
               if i != j and x >= y)


def glp_regular(s: SplittingType, bound: int = 8) -> bool:
    """Regularity criterion a_i + a_j <= bound for all i != j."""
    if s.n < 2:
        raise ValueError("criterion needs at least two summands")
    return s.a[0] + s.a[1] <= bound


def partitions(d: int, n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples of n positive integers summing to d."""
    largest = d if largest is None else largest
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(min(largest, d - (n - 1)), 0, -1):
        if first * n < d:
            break
        for rest in partitions(d - first, n - 1, first):
            yield (first,) + rest


def enumerate_obstructed_strata(d: int, n: int, threshold: int = 9) -> list[tuple[SplittingType, int]]:
    """Strata with a_1 + a_2 >= threshold, sorted by codimension (ties by tuple, descending)."""
    if not d >= n >= 2:
        raise ValueError("need d >= n >= 2")
    out = [(SplittingType(a), stratum_codim(a)) for a in partitions(d, n) if a[0] + a[1] >= threshold]
    out.sort(key=lambda sc: (sc[1], tuple(-x for x in sc[0].a)))
    return out


@dataclass(frozen=True)
class IncidenceCount:
    dimension: int
    dominant_excluded: bool  # True when the incidence variety cannot dominate


def incidence_dimension(cfg: AmbientConfig, c: CurveClass) -> IncidenceCount:
    dim = cfg.N + 1 - c.d + c.g + c.i
    return IncidenceCount(dim, c.g + c.i <= c.d - 2)


REQUIRED_BASE = {5: 14, 4: 28}


def required_estimate(n: int, codim: int = 0) -> int:
    """Largest g+i that still keeps curves off a general heptic, per spanned dimension."""
    if n == 3:
        return 42
    if n in REQUIRED_BASE:
        return REQUIRED_BASE[n] + codim
    raise ValueError(f"no estimate for curves spanning P^{n}")
