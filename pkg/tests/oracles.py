"""Slow, obviously-correct reference implementations used by the tests."""

import random
from fractions import Fraction

import sympy

from heptic16.monomials import MonomialIdeal, monomials_of_degree


def borel_closure(gens):
    """Close a set of monomials under moving one exponent unit to an earlier variable."""
    todo = [tuple(g) for g in gens]
    seen = set(todo)
    while todo:
        g = todo.pop()
        for j in range(1, len(g)):
            if g[j]:
                for i in range(j):
                    e = list(g)
                    e[j] -= 1
                    e[i] += 1
                    e = tuple(e)
                    if e not in seen:
                        seen.add(e)
                        todo.append(e)
    return seen


def brute_is_borel(I: MonomialIdeal, top: int) -> bool:
    """Check the Borel moves on every monomial of the ideal up to degree ``top``."""
    for m in range(top + 1):
        for e in monomials_of_degree(I.nvars, m):
            if e not in I:
                continue
            for j in range(1, I.nvars):
                if e[j]:
                    for i in range(j):
                        f = list(e)
                        f[j] -= 1
                        f[i] += 1
                        if tuple(f) not in I:
                            return False
    return True


def random_int_matrix(rng: random.Random, big=False):
    rows, cols = rng.randint(1, 7), rng.randint(1, 8)
    spread = 10**12 if big else 6
    A = [[rng.randint(-spread, spread) for _ in range(cols)] for _ in range(rows)]
    # make some rank deficiency likely
    if rows > 2 and rng.random() < 0.5:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        A[-1] = [a * x + b * y for x, y in zip(A[0], A[1])]
    return A


def sympy_ordered_kernel_leads(A, order):
    """Leading columns of the kernel, reducing a sympy nullspace basis in ``order``."""
    basis = sympy.Matrix(A).nullspace()
    if not basis:
        return ()
    K = sympy.Matrix.hstack(*basis).T
    K = K[:, list(order)]
    _, piv = K.rref()
    return tuple(sorted(order[p] for p in piv))


def subalgebra_colength_bruteforce(branches, T):
    """Colength via sympy: span every monomial of degree <= T, evaluated mod t^T."""
    r = len(branches[0])
    cols = []
    for d in range(T + 1):
        for e in monomials_of_degree(r, d):
            col = []
            for b in branches:
                v = [Fraction(0)] * T
                v[0] = Fraction(1)
                for j, k in enumerate(e):
                    for _ in range(k):
                        w = [Fraction(0)] * T
                        for p, x in enumerate(v):
                            if x:
                                for q, c in b[j]:
                                    if p + q < T:
                                        w[p + q] += x * c
                        v = w
                col.extend(v)
            cols.append(col)
    M = sympy.Matrix(cols).T
    return len(branches) * T - M.rank()

