"""Generic initial ideals of plane sections of degree-16 space curves.

A section gin has the shape (x0^k, x0^(k-1) x1^lam[k-1], ..., x0 x1^lam[1], x1^lam[0])
and is recorded by its step sequence ``lam``.  The index range 0..k-1 is used
for both the generators and the genus sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .monomials import (MonomialIdeal, hilbert_count, is_borel_fixed,
                        is_saturated)

SECTION_DEGREE = 16
REGULARITY = 9


def binom(a: int, b: int) -> int:
    return comb(a, b) if a >= b >= 0 else 0


@dataclass(frozen=True)
class LambdaSequence:
    lam: tuple[int, ...]
    degree: int = SECTION_DEGREE
    regularity: int = REGULARITY

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        problems = violations(self.lam, self.degree, self.regularity)
        if problems:
            raise ValueError(f"lambda sequence {self.lam}: " + "; ".join(problems))

    @property
    def k(self) -> int:
        return len(self.lam)


def violations(lam, degree: int = SECTION_DEGREE, regularity: int = REGULARITY) -> list[str]:
    lam = tuple(lam)
    k = len(lam)
    out = []
    if k < 2:
        out.append("k < 2 puts the points on a line")
    if k > regularity:
        out.append(f"k > {regularity}")
    if any(x < 1 for x in lam):
        out.append("non-positive step")
    if sum(lam) != degree:
        out.append(f"steps sum to {sum(lam)}, not {degree}")
    for j, x in enumerate(lam):
        if j + x > regularity:
            out.append(f"generator x0^{j} x1^{x} has degree above {regularity}")
    for j in range(k - 1):
        if lam[j + 1] > lam[j] - 1:
            out.append(f"lam[{j + 1}] > lam[{j}] - 1 breaks Borel-fixedness")
        if lam[j + 1] < lam[j] - 2:
            out.append(f"lam[{j + 1}] < lam[{j}] - 2 breaks the Gruson-Peskine bound")
    return out


def to_ideal(s: LambdaSequence) -> MonomialIdeal:
    gens = [(s.k, 0, 0)] + [(j, x, 0) for j, x in enumerate(s.lam)]
    return MonomialIdeal(3, gens)


def closed_form_tail(s: LambdaSequence, m: int) -> int:
    """h^0 of the cone ideal in degree m, from the binomial formula."""
    return binom(m + 3 - s.k, 3) + sum(binom(m + 2 - (j + x), 2) for j, x in enumerate(s.lam))


class FormulaMismatch(AssertionError):
    pass


def g_lambda(s: LambdaSequence, m: int = REGULARITY) -> int:
    """Arithmetic genus of the cone over the section, checked against a direct count."""
    if m < s.regularity:
        raise ValueError(f"m={m} is below the regularity {s.regularity}")
    direct = hilbert_count(to_ideal(s).extend(4), m, "ideal")
    tail = closed_form_tail(s, m)
    if direct != tail:
        raise FormulaMismatch(f"{s.lam}: closed form {tail} != direct count {direct} at m={m}")
    return s.degree * m + 1 - comb(m + 3, 3) + tail


@dataclass(frozen=True)
class GinReport:
    sequence: LambdaSequence
    ideal: MonomialIdeal
    g_lambda: int
    h0_at_9: int
    index_range: str = field(default="0..k-1")

    def as_dict(self) -> dict:
        return {
            "k": self.sequence.k,
            "lambda": list(self.sequence.lam),
            "ideal": self.ideal.serialize(),
            "g_lambda": self.g_lambda,
            "h0_cone_at_9": self.h0_at_9,
            "index_range": self.index_range,
        }


def _sequences(degree: int, regularity: int, prefix: tuple[int, ...]):
    total = sum(prefix)
    if total == degree:
        yield prefix
        return
    j = len(prefix)
    if j >= regularity:
        return
    if prefix:
        hi, lo = prefix[-1] - 1, prefix[-1] - 2
    else:
        hi, lo = regularity, 1
    hi = min(hi, regularity - j, degree - total)
    for x in range(hi, max(lo, 1) - 1, -1):
        yield from _sequences(degree, regularity, prefix + (x,))


def enumerate_sequences(degree: int = SECTION_DEGREE, regularity: int = REGULARITY) -> list[GinReport]:
    out = []
    for lam in _sequences(degree, regularity, ()):
        if violations(lam, degree, regularity):
            continue
        s = LambdaSequence(lam, degree, regularity)
        I = to_ideal(s)
        out.append(GinReport(s, I, g_lambda(s), hilbert_count(I.extend(4), regularity, "ideal")))
    out.sort(key=lambda r: (-r.g_lambda, r.sequence.k, tuple(-x for x in r.sequence.lam)))
    return out


def check_report(r: GinReport) -> list[str]:
    """Structural checks every enumerated section gin should pass."""
    problems = []
    if not is_borel_fixed(r.ideal):
        problems.append("not Borel-fixed")
    if not is_saturated(r.ideal):
        problems.append("not saturated")
    if hilbert_count(r.ideal, r.sequence.regularity, "quotient") != r.sequence.degree:
        problems.append("quotient count at the regularity differs from the degree")
    return problems


def k_split(reports: list[GinReport]) -> tuple[list[GinReport], list[GinReport]]:
    two = [r for r in reports if r.sequence.k == 2]
    more = [r for r in reports if r.sequence.k >= 3]
    return two, more
