"""Rewriting rules lifting a plane-section gin to a space-curve gin.

Rule 1 replaces a pure power x0^e by x0^e * (x0, x1, x2); rule 2 replaces
x0^e x1^f (f >= 1) by x0^e x1^f * (x1, x2).  Each rewriting of a generator of
degree below the cap lowers the bound on g+i by one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .monomials import (Monomial, MonomialIdeal, format_monomial,
                        hilbert_count, is_borel_fixed)

RULE_1 = 1
RULE_2 = 2


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    rule: int
    target: Monomial

    @property
    def degree(self) -> int:
        return sum(self.target)

    def as_pair(self) -> list:
        return [self.rule, format_monomial(self.target)]


@dataclass(frozen=True)
class GeneratorTree:
    leaves: tuple[Monomial, ...]
    num_vars: int = 3
    applied: tuple[Step, ...] = ()

    @classmethod
    def from_ideal(cls, I: MonomialIdeal) -> "GeneratorTree":
        return cls(I.gens, I.nvars)

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.num_vars, self.leaves)


def children(target: Monomial, rule: int) -> list[Monomial]:
    if len(target) != 3:
        raise RuleError("rules act on monomials in x0, x1, x2")
    e, f, h = target
    if rule == RULE_1:
        if f or h:
            raise RuleError(f"rule 1 needs a pure power of x0, got {format_monomial(target)}")
        return [(e + 1, 0, 0), (e, 1, 0), (e, 0, 1)]
    if rule == RULE_2:
        if h or f < 1:
            raise RuleError(f"rule 2 needs x0^e x1^f with f >= 1, got {format_monomial(target)}")
        return [(e, f + 1, 0), (e, f, 1)]
    raise RuleError(f"unknown rule {rule}")


def applicable_rule(target: Monomial) -> int | None:
    e, f, h = target
    if h:
        return None
    return RULE_1 if f == 0 else RULE_2


def apply_rule(t: GeneratorTree, target: Monomial, rule: int) -> GeneratorTree:
    target = tuple(target)
    if target not in t.leaves:
        raise RuleError(f"{format_monomial(target)} is not a current generator")
    kids = children(target, rule)
    rest = [g for g in t.leaves if g != target]
    I = MonomialIdeal(t.num_vars, rest + kids)
    return GeneratorTree(I.gens, t.num_vars, t.applied + (Step(rule, target),))


def bound_after(t: GeneratorTree, start_bound: int, degree_cap: int = 7) -> int:
    return start_bound - sum(1 for s in t.applied if s.degree < degree_cap)


@dataclass(frozen=True)
class BezoutConstraints:
    """Caps on ideal-side Hilbert counts of the curve ideal in P^3 (4 variables).

    With a cubic present, the quartic cap is the number of quartic multiples
    of one cubic; otherwise at most one quartic is allowed.
    """

    max_quadrics: int = 0
    max_cubics: int = 1
    max_quartics_alone: int = 1
    ambient_vars: int = 4

    def quartic_cap(self, cubics: int) -> int:
        if cubics == 0:
            return self.max_quartics_alone
        return hilbert_count(MonomialIdeal(self.ambient_vars, [(3,) + (0,) * (self.ambient_vars - 1)]), 4)

    def caps(self, I: MonomialIdeal) -> dict[int, int]:
        J = I.extend(self.ambient_vars)
        cubics = hilbert_count(J, 3)
        return {2: self.max_quadrics, 3: self.max_cubics, 4: self.quartic_cap(cubics)}

    def satisfied(self, I: MonomialIdeal) -> bool:
        J = I.extend(self.ambient_vars)
        return all(hilbert_count(J, m) <= cap for m, cap in self.caps(I).items())

    @property
    def top_degree(self) -> int:
        return 4


@dataclass(frozen=True)
class QuadricOnly(BezoutConstraints):
    """Only the no-quadric condition."""

    def caps(self, I: MonomialIdeal) -> dict[int, int]:
        return {2: self.max_quadrics}

    @property
    def top_degree(self) -> int:
        return 2


@dataclass
class SearchResult:
    status: str  # "found", "infeasible" or "inconclusive"
    count: int | None
    witness: list[Step] = field(default_factory=list)
    final: MonomialIdeal | None = None
    explored: int = 0

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "count": self.count,
            "witness": [s.as_pair() for s in self.witness],
            "final_ideal": self.final.serialize() if self.final is not None else None,
            "states_explored": self.explored,
        }


def min_forced_rewritings(start: MonomialIdeal, c: BezoutConstraints | None = None,
                          degree_cap: int = 7, max_depth: int = 16,
                          require_borel: bool = False) -> SearchResult:
    """Fewest counted rewritings after which the generators meet every cap.

    Breadth-first over rewriting sequences; moves are generated in sorted
    order so the witness is deterministic.  Generators above the highest
    capped degree are never rewritten: their children cannot change any
    capped count.
    """
    c = c or BezoutConstraints()
    if start.nvars != 3:
        raise ValueError("start ideal must live in x0, x1, x2")

    def ok(I):
        return c.satisfied(I) and (not require_borel or is_borel_fixed(I))

    root = GeneratorTree.from_ideal(start)
    if ok(start):
        return SearchResult("found", 0, [], start, 1)
    # 0-1 breadth-first search: uncounted rewritings (degree >= cap) cost nothing
    frontier = deque([(0, root)])
    best = {root.leaves: 0}
    truncated = False
    while frontier:
        cost, t = frontier.popleft()
        if cost > best.get(t.leaves, cost):
            continue
        I = t.ideal()
        if ok(I):
            return SearchResult("found", cost, list(t.applied), I, len(best))
        for g in sorted(t.leaves, key=lambda e: (sum(e), e)):
            if sum(g) > c.top_degree:
                continue
            rule = applicable_rule(g)
            if rule is None:
                continue
            step = 1 if sum(g) < degree_cap else 0
            if cost + step > max_depth:
                truncated = True
                continue
            nxt = apply_rule(t, g, rule)
            if best.get(nxt.leaves, max_depth + 1) <= cost + step:
                continue
            best[nxt.leaves] = cost + step
            if step:
                frontier.append((cost + step, nxt))
            else:
                frontier.appendleft((cost, nxt))
    return SearchResult("inconclusive" if truncated else "infeasible", None, [], None, len(best))
