"""Monomials, graded orders and monomial ideals.

Monomials are plain tuples of exponents ``(e_0, ..., e_n)`` for variables
``x_0 .. x_n``.  Membership in a monomial ideal is a divisibility scan over the
minimal generators; Hilbert counts enumerate monomials of one degree.
"""

from __future__ import annotations

import re
from functools import cmp_to_key, lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

Monomial = tuple[int, ...]

GREVLEX = "grevlex"
GRLEX = "grlex"
ORDERS = (GREVLEX, GRLEX)


class NotApplicable(ValueError):
    """A quoted fact is being used outside the case it covers."""


def degree(a: Monomial) -> int:
    return sum(a)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def compare(a: Monomial, b: Monomial, order: str = GREVLEX) -> int:
    """Return 1 if a > b, -1 if a < b and 0 if equal."""
    if len(a) != len(b):
        raise ValueError(f"monomials in {len(a)} and {len(b)} variables")
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    diff = [x - y for x, y in zip(a, b)]
    if order == GREVLEX:
        for d in reversed(diff):
            if d:
                return 1 if d < 0 else -1
    else:
        for d in diff:
            if d:
                return 1 if d > 0 else -1
    return 0


def sort_key(order: str = GREVLEX):
    return cmp_to_key(lambda a, b: compare(a, b, order))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, m: int) -> tuple[Monomial, ...]:
    """All degree-m monomials in ``nvars`` variables, in lexicographic exponent order."""
    if m < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


def descending(monos: Iterable[Monomial], order: str = GREVLEX) -> list[Monomial]:
    return sorted(monos, key=sort_key(order), reverse=True)


class MonomialIdeal:
    """Monomial ideal held by its minimal generators (immutable)."""

    __slots__ = ("nvars", "gens")

    def __init__(self, nvars: int, gens: Iterable[Sequence[int]] = ()):
        gens = {tuple(int(x) for x in g) for g in gens}
        for g in gens:
            if len(g) != nvars or min(g, default=0) < 0:
                raise ValueError(f"bad exponent vector {g} for {nvars} variables")
        self.nvars = nvars
        self.gens = _minimal(gens)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __repr__(self):
        return f"MonomialIdeal({self.nvars}, {format_gens(self.gens)})"

    def __len__(self):
        return len(self.gens)

    def __contains__(self, mono: Monomial) -> bool:
        return any(divides(g, mono) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def gens_in_degree(self, m: int) -> list[Monomial]:
        return [g for g in self.gens if sum(g) == m]

    def extend(self, nvars: int) -> "MonomialIdeal":
        """Same generators viewed in more variables (a cone over the old scheme)."""
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return MonomialIdeal(nvars, (g + pad for g in self.gens))

    def serialize(self) -> list[list[int]]:
        return [list(g) for g in self.gens]


def _minimal(gens: set[Monomial]) -> tuple[Monomial, ...]:
    ordered = sorted(gens, key=lambda e: (sum(e), e))
    kept: list[Monomial] = []
    for e in ordered:
        if not any(divides(k, e) for k in kept):
            kept.append(e)
    return tuple(sorted(kept))


def minimalize(gens: Iterable[Sequence[int]], nvars: int | None = None) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if nvars is None:
        if not gens:
            raise ValueError("variable count needed for the zero ideal")
        nvars = len(gens[0])
    return MonomialIdeal(nvars, gens)


def _shift(mono: Monomial, i: int, j: int) -> Monomial:
    e = list(mono)
    e[j] -= 1
    e[i] += 1
    return tuple(e)


def is_borel_fixed(I: MonomialIdeal) -> bool:
    for g in I.gens:
        for j in range(1, I.nvars):
            if g[j] == 0:
                continue
            for i in range(j):
                if _shift(g, i, j) not in I:
                    return False
    return True


def is_saturated(I: MonomialIdeal) -> bool:
    """No minimal generator involves the last variable.

    The criterion is only valid for Borel-fixed ideals; callers that need the
    caveat should call :func:`saturation_report`.
    """
    return all(g[-1] == 0 for g in I.gens)


def saturation_report(I: MonomialIdeal) -> dict:
    return {"saturated": is_saturated(I), "criterion_applies": is_borel_fixed(I)}


def hilbert_count(I: MonomialIdeal, m: int, side: str = "ideal") -> int:
    if m < 0:
        raise ValueError("degree must be non-negative")
    total = comb(m + I.nvars - 1, I.nvars - 1)
    inside = sum(1 for e in monomials_of_degree(I.nvars, m) if e in I)
    if side == "ideal":
        return inside
    if side == "quotient":
        return total - inside
    raise ValueError(f"side must be 'ideal' or 'quotient', not {side!r}")


def regularity_saturated_borel(I: MonomialIdeal) -> int:
    """Castelnuovo-Mumford regularity of a saturated Borel-fixed ideal."""
    if not is_borel_fixed(I):
        raise NotApplicable("ideal is not Borel-fixed; max generator degree need not be the regularity")
    if not is_saturated(I):
        raise NotApplicable("ideal is not saturated (a minimal generator involves the last variable)")
    if I.is_zero():
        raise NotApplicable("zero ideal")
    return I.max_degree()


_VAR = re.compile(r"x_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?")


def parse_monomial(text: str, nvars: int) -> Monomial:
    """Parse ``x_0^3x_2`` / ``x0^3*x2`` style monomials."""
    e = [0] * nvars
    body = text.replace("*", "").replace(" ", "")
    pos = 0
    for m in _VAR.finditer(body):
        if m.start() != pos:
            raise ValueError(f"cannot parse monomial {text!r}")
        e[int(m.group(1))] += int(m.group(2) or 1)
        pos = m.end()
    if pos != len(body) and body != "1":
        raise ValueError(f"cannot parse monomial {text!r}")
    return tuple(e)


def format_monomial(e: Monomial) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts) or "1"


def format_gens(gens: Iterable[Monomial]) -> str:
    return "(" + ", ".join(format_monomial(g) for g in gens) + ")"
