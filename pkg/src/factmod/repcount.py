"""Representation counts for products of factorial residues.

F_l(a, H, N): number of l-tuples in the window with prod u(n_i) = a.
V_l(H, N): number of residues a with F_l(a, H, N) > 0.
G_l(a, N): number of ordered compositions N = n_1 + ... + n_l with
prod u(n_i) = a.
D_l(a, H, N): discrepancy of the multiset {a * prod u(n_i) / p}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from factmod.errors import EllOutOfRange, NonInvertibleMultiplier, WindowOutOfRange
from factmod.fieldcore import PrimeContext, Window, next_value, sequence_residues
from factmod.momentlab import Domain, check_ell, convolution_power, histogram


@dataclass(frozen=True)
class RepresentationTable:
    """``values[a]`` is F_l(a, H, N); ``values[0]`` is always 0."""

    p: int
    ell: int
    window: Window
    values: tuple[int, ...]

    def __getitem__(self, a: int) -> int:
        return self.values[a % self.p]

    @property
    def total(self) -> int:
        return sum(self.values)

    def support(self) -> np.ndarray:
        return np.array([v > 0 for v in self.values], dtype=bool)


@dataclass(frozen=True)
class DiscrepancyResult:
    a: int
    ell: int
    D: Fraction
    alpha: Fraction
    beta: Fraction
    closed: bool  # True: sup attained on [alpha, beta]; False: approached from inside (alpha, beta)

    def as_dict(self, p: int) -> dict:
        return {"p": p, "a": self.a, "ell": self.ell, "D": float(self.D),
                "D_exact": f"{self.D.numerator}/{self.D.denominator}",
                "alpha": float(self.alpha), "beta": float(self.beta), "closed": self.closed}


def table_from_index_counts(ctx: PrimeContext, w: Window, ell: int, by_index) -> RepresentationTable:
    values = [0] * ctx.p
    x = 1
    for k in range(ctx.p - 1):
        values[x] = int(by_index[k])
        x = x * ctx.g % ctx.p
    return RepresentationTable(ctx.p, ell, w, tuple(values))


def table_F(ctx: PrimeContext, w: Window, ell: int) -> RepresentationTable:
    check_ell(ell)
    conv = convolution_power(histogram(ctx, w, Domain.MULTIPLICATIVE), ell)
    return table_from_index_counts(ctx, w, ell, conv)


def value_set_V(ctx: PrimeContext, w: Window, ell: int) -> int:
    return sum(1 for v in table_F(ctx, w, ell).values if v > 0)


def max_F1(ctx: PrimeContext, w: Window) -> tuple[int, int]:
    """(smallest maximising residue, its count)."""
    res = np.asarray(sequence_residues(ctx, w), dtype=np.int64)
    counts = np.bincount(res, minlength=ctx.p)
    a = int(np.argmax(counts))
    return a, int(counts[a])


def table_G(ctx: PrimeContext, N: int, ell: int, allow_large: bool = False) -> RepresentationTable:
    """G_l(a, N) for every residue a at once.

    Dynamic programme over (parts used, partial sum, index of partial
    product); a part n whose u(n) vanishes mod p contributes only to a = 0
    and is skipped.
    """
    check_ell(ell)
    if N < 1:
        raise WindowOutOfRange("N must be positive")
    if not allow_large and ell * N >= ctx.p:
        raise WindowOutOfRange(f"need N < p/ell (N={N}, ell={ell}, p={ctx.p}); pass allow_large to lift")
    L = ctx.p - 1
    top = N - ell + 1  # largest admissible part
    if top < 1:
        return RepresentationTable(ctx.p, ell, Window(0, 1), (0,) * ctx.p)
    shifts = []
    u = 1
    for n in range(1, top + 1):
        try:
            u = next_value(ctx.kind, n, u, ctx.p)
        except WindowOutOfRange:
            break  # u(n) is 0 mod p from here on (factorials past p-1)
        shifts.append((n, int(ctx.ind[u])))
    dtype = np.int64 if math.comb(N - 1, ell - 1) < 2**62 else object
    layer = np.zeros((N + 1, L), dtype=dtype)
    layer[0, 0] = 1
    for _ in range(ell):
        nxt = np.zeros((N + 1, L), dtype=dtype)
        for n, s in shifts:
            nxt[n:, :] += np.roll(layer[: N + 1 - n, :], s, axis=1)
        layer = nxt
    return table_from_index_counts(ctx, Window(0, 1), ell, layer[N])


def count_G(ctx: PrimeContext, a: int, N: int, ell: int, allow_large: bool = False) -> int:
    if a % ctx.p == 0:
        return 0
    return table_G(ctx, N, ell, allow_large)[a]


def _weights_for(ctx: PrimeContext, table: RepresentationTable, a: int) -> list[int]:
    """weights[c] = F_l(a^{-1} c) for c = 0, ..., p-1."""
    p = ctx.p
    inv = pow(a, -1, p)
    return [table.values[inv * c % p] for c in range(p)]


def discrepancy_from_table(ctx: PrimeContext, table: RepresentationTable, a: int) -> DiscrepancyResult:
    """Exact discrepancy of the weighted points {c/p : weight F_l(a^{-1} c)}.

    Closed intervals [h/p, k/p] maximise A/M - length; open intervals
    (h/p, k/p) with 0 <= h < k <= p maximise length - A/M.  Both are scanned
    in O(p) with running extrema on integer numerators scaled by M*p.
    """
    p = ctx.p
    if a % p == 0:
        raise NonInvertibleMultiplier("a must be invertible modulo p")
    weights = _weights_for(ctx, table, a % p)
    M = sum(weights)
    # prefix[k] = total weight of c <= k-1
    prefix = [0] * (p + 1)
    for c in range(p):
        prefix[c + 1] = prefix[c] + weights[c]

    # closed [h, k], h <= k: p*(prefix[k+1] - prefix[h]) - M*(k - h)
    best_pos, pos_arg = None, (0, 0)
    lo_val, lo_h = None, 0
    for k in range(p):
        cand = p * prefix[k] - M * k  # h = k as left endpoint
        if lo_val is None or cand < lo_val:
            lo_val, lo_h = cand, k
        val = p * prefix[k + 1] - M * k - lo_val
        if best_pos is None or val > best_pos:
            best_pos, pos_arg = val, (lo_h, k)

    # open (h, k), h < k: M*(k - h) - p*(prefix[k] - prefix[h+1])
    best_neg, neg_arg = None, (0, 1)
    hi_val, hi_h = None, 0
    for k in range(1, p + 1):
        h = k - 1
        cand = -M * h + p * prefix[h + 1]
        if hi_val is None or cand > hi_val:
            hi_val, hi_h = cand, h
        val = M * k - p * prefix[k] + hi_val
        if best_neg is None or val > best_neg:
            best_neg, neg_arg = val, (hi_h, k)

    scale = M * p
    if best_pos >= best_neg:
        h, k = pos_arg
        return DiscrepancyResult(a, table.ell, Fraction(best_pos, scale), Fraction(h, p), Fraction(k, p), True)
    h, k = neg_arg
    return DiscrepancyResult(a, table.ell, Fraction(best_neg, scale), Fraction(h, p), Fraction(k, p), False)


def discrepancy_D(ctx: PrimeContext, a: int, w: Window, ell: int) -> DiscrepancyResult:
    if a % ctx.p == 0:
        raise NonInvertibleMultiplier("a must be invertible modulo p")
    return discrepancy_from_table(ctx, table_F(ctx, w, ell), a)


def exp_sum_from_table(ctx: PrimeContext, table: RepresentationTable, a: int) -> complex:
    p = ctx.p
    a %= p
    if a == 0:
        return complex(table.total)
    c = np.arange(p, dtype=np.int64)
    ang = 2 * math.pi * (a * c % p) / p
    wts = np.array([float(v) for v in table.values])
    return complex(math.fsum(wts * np.cos(ang)), math.fsum(wts * np.sin(ang)))


def exp_sum_product(ctx: PrimeContext, a: int, w: Window, ell: int) -> complex:
    """sum over l-tuples of e(a * prod u(n_i)), via the representation table."""
    return exp_sum_from_table(ctx, table_F(ctx, w, ell), a)


def table_csv_rows(table: RepresentationTable):
    yield ["p", "a", "F_ell"]
    for a in range(1, table.p):
        yield [table.p, a, str(table.values[a])]
