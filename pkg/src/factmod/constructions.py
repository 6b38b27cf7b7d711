"""Explicit constructions and scans over factorial residues."""

from __future__ import annotations

import math
import statistics
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from factmod.errors import InconsistencyError, InvalidSubset, JOutOfRange, OutOfRange, BadRange, WindowOutOfRange
from factmod.fieldcore import (
    PrimeContext,
    Window,
    build_context,
    check_window,
    factorials_mod,
    is_prime,
    legendre,
    primes_in_range,
    residue_indices,
)
from factmod.repcount import table_F, value_set_V


@dataclass(frozen=True)
class WilsonWitness:
    a: int
    b: int
    r_b: int
    factors: tuple[int, ...]  # n such that the product of n! is a
    product: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["factors"] = list(self.factors)
        d["text"] = " * ".join(f"{n}!" for n in self.factors) + f" = {self.product}"
        return d


@dataclass(frozen=True)
class SpacingReport:
    J: int
    nonresidues: tuple[int, ...]
    d: tuple[int, ...]
    alt_sum: int
    legendre_sum: int

    @property
    def n_J(self) -> int:
        return self.nonresidues[-1]


@dataclass(frozen=True)
class DistinctScanRecord:
    p: int
    is_distinct: bool
    missing_residue: int | None = None
    matches_prediction: bool | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _unit(x: int, p: int) -> int:
    return -1 if x == p - 1 else x


def wilson_pair(ctx: PrimeContext, b: int, fact: list[int] | None = None) -> int:
    """b! (p-1-b)! mod p as a signed unit; checked against (-1)^(b+1)."""
    p = ctx.p
    if not 1 <= b <= p - 1:
        raise OutOfRange(f"b must lie in [1, {p - 1}]")
    fact = fact or factorials_mod(p)
    val = fact[b] * fact[p - 1 - b] % p
    expected = 1 if (b + 1) % 2 == 0 else p - 1
    if val != expected:
        raise InconsistencyError(f"Wilson pair fails at p={p}, b={b}")
    return _unit(val, p)


def wilson_representation(ctx: PrimeContext, a: int, fact: list[int] | None = None) -> WilsonWitness:
    """a as a product of at most three factorials, from Wilson's theorem."""
    p = ctx.p
    if not 1 <= a <= p - 1:
        raise OutOfRange(f"a must lie in [1, {p - 1}]")
    fact = fact or factorials_mod(p)
    b = pow(a, -1, p)
    r_b = (b + 1) % 2
    factors = (p - 1,) * r_b + (b - 1, p - 1 - b)
    prod = 1
    for n in factors:
        prod = prod * fact[n] % p
    if prod != a:
        raise InconsistencyError(f"Wilson witness fails at p={p}, a={a}")
    return WilsonWitness(a, b, r_b, factors, prod)


def quadratic_nonresidues(ctx: PrimeContext) -> list[int]:
    return [n for n in range(1, ctx.p) if ctx.ind[n] % 2 == 1]


def nonresidue_spacings(ctx: PrimeContext, J: int) -> SpacingReport:
    """Spacings of the first J nonresidues and both sides of

        sum_{j<=J} (-1)^(j-1) d_j = sum_{n=0}^{n_J - 1} (n!/p).
    """
    p = ctx.p
    if not 1 <= J <= (p - 1) // 2:
        raise JOutOfRange(f"J must lie in [1, {(p - 1) // 2}]")
    nonres = quadratic_nonresidues(ctx)[:J]
    d = [nonres[0]] + [nonres[j] - nonres[j - 1] for j in range(1, J)]
    alt = sum(dj if j % 2 == 0 else -dj for j, dj in enumerate(d))
    fact = factorials_mod(p, nonres[-1] - 1)
    leg = sum(legendre(ctx, f) for f in fact)
    return SpacingReport(J, tuple(nonres), tuple(d), alt, leg)


def is_primitive_root_index(k: int, order: int) -> bool:
    return math.gcd(k, order) == 1


def find_primroot_factorial(ctx: PrimeContext) -> int | None:
    """Smallest n >= 1 with n! a primitive root mod p, or None."""
    p = ctx.p
    f = 1
    for n in range(1, p):
        f = f * n % p
        if math.gcd(int(ctx.ind[f]), p - 1) == 1:
            return n
    return None


def primroot_mask(ctx: PrimeContext, w: Window) -> np.ndarray:
    idx = residue_indices(ctx, w)
    return np.gcd(idx, ctx.p - 1) == 1


def count_Q(ctx: PrimeContext, w: Window) -> int:
    return int(primroot_mask(ctx, w).sum())


def count_Qm(ctx: PrimeContext, m: int, w: Window) -> int:
    """n in the window with n!, ..., (n+m-1)! all primitive roots."""
    if m < 1:
        raise OutOfRange("m must be positive")
    if w.last + m - 1 >= ctx.p:
        raise WindowOutOfRange(f"need H+N+m-1 < p, got {w.last + m - 1} >= {ctx.p}")
    mask = primroot_mask(ctx, Window(w.H, w.N + m - 1))
    ok = np.ones(w.N, dtype=bool)
    for s in range(m):
        ok &= mask[s : s + w.N]
    return int(ok.sum())


def euler_phi_ratio(ctx: PrimeContext) -> float:
    r = 1.0
    for q in ctx.factors:
        r *= 1 - 1 / q
    return r


def classify_power_residues(ctx: PrimeContext, R, w: Window) -> int:
    """Count n with: q | ind(u(n)) iff q in R, for every prime q | p-1."""
    R = frozenset(int(q) for q in R)
    if not R <= set(ctx.factors):
        raise InvalidSubset(f"R must be a subset of {list(ctx.factors)}")
    idx = residue_indices(ctx, w)
    ok = np.ones(len(idx), dtype=bool)
    for q in ctx.factors:
        div = idx % q == 0
        ok &= div if q in R else ~div
    return int(ok.sum())


def power_class_expectation(ctx: PrimeContext, R, N: int) -> float:
    out = float(N)
    for q in ctx.factors:
        out *= 1 / q if q in R else (q - 1) / q
    return out


def all_power_classes(ctx: PrimeContext, w: Window) -> dict[tuple[int, ...], int]:
    return {
        R: classify_power_residues(ctx, R, w)
        for k in range(len(ctx.factors) + 1)
        for R in combinations(ctx.factors, k)
    }


def v2_witness_count(ctx: PrimeContext) -> dict:
    """Solutions of 2u(2u+1) = 2v (mod p), 0 <= u, v <= (p-3)/2, and the
    lower bound (p-1)/2 + W/2 they give for V_2(0, p-1)."""
    p = ctx.p
    top = (p - 3) // 2
    u = np.arange(top + 1, dtype=np.int64)
    v = u * (2 * u + 1) % p  # 2v = 2u(2u+1) and 2 is invertible
    W = int((v <= top).sum())
    bound = (p - 1) / 2 + W / 2
    V2 = value_set_V(ctx, Window(0, p - 1), 2)
    return {"p": p, "W": W, "W_ratio": W / (p / 4), "derived_bound": bound, "V2": V2,
            "target": 5 * p / 8}


def distinct_record(p: int) -> DistinctScanRecord:
    fact = factorials_mod(p)
    seen = set(fact[2:])
    if len(seen) != p - 2:
        return DistinctScanRecord(p, False)
    (missing,) = set(range(1, p)) - seen
    predicted = (-fact[(p - 1) // 2]) % p
    return DistinctScanRecord(p, True, missing, missing == predicted and p % 8 == 5)


def distinct_factorial_scan(p_lo: int, p_hi: int, jobs: int = 1) -> list[DistinctScanRecord]:
    """One record per prime in [p_lo, p_hi], ascending."""
    if p_lo < 3 or p_hi < p_lo:
        raise BadRange(f"need 3 <= lo <= hi, got [{p_lo}, {p_hi}]")
    from factmod.sweep import run_ordered

    return run_ordered(distinct_record, primes_in_range(p_lo, p_hi), jobs)


def search_representation(ctx: PrimeContext, a: int, ell: int, M: int) -> tuple[int, ...] | None:
    """Lexicographically smallest ell-tuple with all n_i <= M and
    prod n_i! = a (mod p), by meet in the middle over representation tables
    of arity ceil(ell/2) and floor(ell/2); None if there is none."""
    p = ctx.p
    if not 1 <= a <= p - 1:
        raise OutOfRange(f"a must lie in [1, {p - 1}]")
    if not 1 <= M < p:
        raise OutOfRange(f"M must lie in [1, {p - 1}]")
    left_ar, right_ar = (ell + 1) // 2, ell // 2
    w = Window(0, M)
    L = p - 1
    idx = residue_indices(ctx, w)  # idx[n-1] = ind(n!)
    # supp[k][i]: some k-tuple has product index i
    supp = {0: np.eye(1, L, 0, dtype=bool)[0]}
    for k in range(1, left_ar + 1):
        supp[k] = table_F(ctx, w, k).support()[[ctx.power(i) for i in range(L)]]
    target = ctx.index(a)
    # left product indices x with a complementary right tuple
    right_need = np.roll(supp[right_ar][::-1], target + 1)  # right_need[x] = supp_R[target - x]
    feasible = supp[left_ar] & right_need
    if not feasible.any():
        return None

    def lexmin(allowed: np.ndarray, k: int) -> list[int]:
        out = []
        for depth in range(k, 0, -1):
            for n in range(1, M + 1):
                s = int(idx[n - 1])
                # remaining (depth-1)-tuple must land on an allowed index
                cand = np.roll(supp[depth - 1], s) & allowed
                if cand.any():
                    out.append(n)
                    allowed = np.roll(allowed, -s)
                    break
        return out

    left = lexmin(feasible, left_ar)
    left_idx = sum(int(idx[n - 1]) for n in left) % L
    right_allowed = np.zeros(L, dtype=bool)
    right_allowed[(target - left_idx) % L] = True
    right = lexmin(right_allowed, right_ar)
    tup = tuple(left + right)
    fact = factorials_mod(p, M)
    prod = 1
    for n in tup:
        prod = prod * fact[n] % p
    if len(tup) != ell or prod != a:
        raise InconsistencyError(f"search produced invalid tuple {tup}")
    return tup


def guy_f11_report(primes) -> dict:
    """V_1(0, p-1)/p per prime and its mean against 1 - 1/e."""
    rows = []
    for p in primes:
        fact = factorials_mod(p)
        v1 = len(set(fact[1:]))
        rows.append({"p": p, "V1": v1, "ratio": v1 / p})
    ratios = [r["ratio"] for r in rows]
    target = 1 - math.exp(-1)
    mean = statistics.fmean(ratios) if ratios else float("nan")
    return {
        "primes": rows,
        "count": len(rows),
        "mean": mean,
        "stdev": statistics.pstdev(ratios) if ratios else float("nan"),
        "target": target,
        "deviation": mean - target,
    }
