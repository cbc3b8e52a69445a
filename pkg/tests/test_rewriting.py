import pytest

from heptic16.monomials import MonomialIdeal, hilbert_count
from heptic16.rewriting import (RULE_1, RULE_2, BezoutConstraints, GeneratorTree,
                                QuadricOnly, RuleError, apply_rule, bound_after,
                                children, min_forced_rewritings)

START = MonomialIdeal(3, [(2, 0, 0), (1, 7, 0), (0, 9, 0)])


def test_children():
    assert children((2, 0, 0), RULE_1) == [(3, 0, 0), (2, 1, 0), (2, 0, 1)]
    assert children((1, 2, 0), RULE_2) == [(1, 3, 0), (1, 2, 1)]
    with pytest.raises(RuleError):
        children((1, 1, 0), RULE_1)
    with pytest.raises(RuleError):
        children((2, 0, 0), RULE_2)
    with pytest.raises(RuleError):
        children((1, 0, 1), RULE_2)


def test_apply_and_bound():
    t = GeneratorTree.from_ideal(START)
    t = apply_rule(t, (2, 0, 0), RULE_1)
    assert (2, 0, 0) not in t.leaves and (2, 0, 1) in t.leaves
    assert bound_after(t, 49) == 48
    with pytest.raises(RuleError):
        apply_rule(t, (2, 0, 0), RULE_1)
    # rewriting a degree-8 generator is free
    t2 = apply_rule(t, (1, 7, 0), RULE_2)
    assert bound_after(t2, 49) == 48


def brute_min(start, c, limit):
    """Exhaustive depth-first search over counted rewritings (small limits only)."""
    best = None

    def go(t, cost):
        nonlocal best
        I = t.ideal()
        if c.satisfied(I):
            best = cost if best is None else min(best, cost)
            return
        if cost >= limit or (best is not None and cost >= best):
            return
        for g in t.leaves:
            if sum(g) > c.top_degree or g[2]:
                continue
            go(apply_rule(t, g, RULE_1 if g[1] == 0 else RULE_2), cost + 1)

    go(GeneratorTree.from_ideal(start), 0)
    return best


def test_bfs_matches_brute_force():
    res = min_forced_rewritings(START)
    assert res.status == "found"
    assert res.count == brute_min(START, BezoutConstraints(), 6)
    assert BezoutConstraints().satisfied(res.final)
    # replaying the witness reproduces the final ideal
    t = GeneratorTree.from_ideal(START)
    for step in res.witness:
        t = apply_rule(t, step.target, step.rule)
    assert t.ideal() == res.final


def test_quadric_only():
    res = min_forced_rewritings(START, QuadricOnly())
    assert res.count == 1
    assert hilbert_count(res.final.extend(4), 2) == 0


def test_depth_limit_and_borel():
    assert min_forced_rewritings(START, max_depth=2).status == "inconclusive"
    assert min_forced_rewritings(START, require_borel=True).status == "infeasible"
    with pytest.raises(ValueError):
        min_forced_rewritings(MonomialIdeal(2, [(1, 1)]))


def test_quartic_cap():
    c = BezoutConstraints()
    assert c.quartic_cap(0) == 1
    assert c.quartic_cap(1) == 4
