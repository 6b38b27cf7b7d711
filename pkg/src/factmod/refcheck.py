"""Brute-force oracles written straight from the definitions.

Nothing here touches the convolution, transform or prefix-scan code paths;
the only shared input is the list of window residues.  Enumeration sizes are
capped so that a stray call fails fast with ``TooLarge``.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import product

from factmod.errors import NonInvertibleMultiplier, TooLarge
from factmod.fieldcore import PrimeContext, SequenceKind, Window, sequence_residues

TUPLE_LIMIT = 2 * 10**6  # one-sided tuple enumeration


def _guard(size: int, limit: int = TUPLE_LIMIT) -> None:
    if size > limit:
        raise TooLarge(f"enumeration of {size} items exceeds the oracle limit {limit}")


def _products(ctx: PrimeContext, w: Window, ell: int) -> Counter:
    """Multiset of prod u(n_i) over all ell-tuples of the window."""
    res = sequence_residues(ctx, w)
    _guard(len(res) ** ell)
    out = Counter()
    for tup in product(res, repeat=ell):
        v = 1
        for x in tup:
            v = v * x % ctx.p
        out[v] += 1
    return out


def _sums(ctx: PrimeContext, w: Window, ell: int) -> Counter:
    res = sequence_residues(ctx, w)
    _guard(len(res) ** ell)
    return Counter(sum(tup) % ctx.p for tup in product(res, repeat=ell))


def oracle_I(ctx: PrimeContext, w: Window, ell: int) -> int:
    """Pairs (left l-tuple, right l-tuple) with equal products.

    Enumerates the N^l one-sided tuples and pairs them by product value,
    which counts the N^(2l) full tuples without visiting each one.
    """
    return sum(c * c for c in _products(ctx, w, ell).values())


def oracle_I_full(ctx: PrimeContext, w: Window, ell: int) -> int:
    """Literal loop over every 2l-tuple; only for very small cases."""
    res = sequence_residues(ctx, w)
    _guard(len(res) ** (2 * ell), 10**6)
    count = 0
    for tup in product(res, repeat=2 * ell):
        lhs = math.prod(tup[:ell]) % ctx.p
        rhs = math.prod(tup[ell:]) % ctx.p
        count += lhs == rhs
    return count


def oracle_J(ctx: PrimeContext, w: Window, ell: int) -> int:
    return sum(c * c for c in _sums(ctx, w, ell).values())


def oracle_F(ctx: PrimeContext, a: int, w: Window, ell: int) -> int:
    return _products(ctx, w, ell)[a % ctx.p]


def oracle_V(ctx: PrimeContext, w: Window, ell: int) -> int:
    return len(_products(ctx, w, ell))


def _u(ctx: PrimeContext, n: int) -> int:
    if ctx.kind is SequenceKind.CENTRAL_BINOMIAL:
        return math.comb(2 * n, n)
    if ctx.kind is SequenceKind.DOUBLE_FACTORIAL:
        return math.prod(range(1, 2 * n + 2, 2))
    return math.factorial(n)


def oracle_G(ctx: PrimeContext, a: int, N: int, ell: int) -> int:
    """Ordered compositions of N into ell positive parts with prod n_i! = a."""
    _guard(math.comb(N - 1, ell - 1) if N >= ell else 0)
    p = ctx.p
    count = 0

    def rec(remaining: int, parts: int, acc: int) -> None:
        nonlocal count
        if parts == 0:
            count += remaining == 0 and acc == a % p
            return
        for n in range(1, remaining - parts + 2):
            rec(remaining - n, parts - 1, acc * _u(ctx, n) % p)

    rec(N, ell, 1)
    return count


def oracle_D(ctx: PrimeContext, a: int, w: Window, ell: int) -> Fraction:
    """Discrepancy by trying every pair of candidate endpoints.

    Candidates are the distinct points together with 0 and 1.  Closed
    intervals [x, y] give A/M - (y - x); open intervals (x, y) give the
    supremum of (y - x) - A/M over the closed intervals inside them.
    """
    p = ctx.p
    if a % p == 0:
        raise NonInvertibleMultiplier("a must be invertible modulo p")
    points = Counter()
    for v, c in _products(ctx, w, ell).items():
        points[Fraction(a * v % p, p)] += c
    M = sum(points.values())
    cands = sorted(set(points) | {Fraction(0), Fraction(1)})
    best = Fraction(0)
    for i, x in enumerate(cands):
        for y in cands[i:]:
            closed = sum(c for t, c in points.items() if x <= t <= y)
            best = max(best, Fraction(closed, M) - (y - x))
            if y > x:
                inner = sum(c for t, c in points.items() if x < t < y)
                best = max(best, (y - x) - Fraction(inner, M))
    return best
