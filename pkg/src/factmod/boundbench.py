"""Right-hand sides of the asymptotic bounds, paired with exact left-hand sides.

Every bound is evaluated with implied constant 1 and natural logarithms.
Ratios are the deliverable; nothing here decides pass or fail.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np

from factmod.errors import DomainViolation


class BoundKind(str, enum.Enum):
    T_INDIVIDUAL = "T_individual"
    T_SECONDMOMENT = "T_secondmoment"
    S_SECONDMOMENT = "S_secondmoment"
    I_MOMENT = "I_moment"
    I_ASYMPTOTIC = "I_asymptotic"
    F_UNIFORM = "F_uniform"
    V_VALUESET = "V_valueset"
    D_DISCREPANCY = "D_discrepancy"
    G_FIXEDSUM = "G_fixedsum"
    F_MAX = "F_max"
    V2_LOWER = "V2_lower"
    SPACING_ALTSUM = "spacing_altsum"
    Q_PRIMROOT = "Q_primroot"
    POLYA_VINOGRADOV = "polya_vinogradov"
    J_MOMENT = "J_moment"


# kinds whose left-hand side is compared as |lhs - main_term| / rhs
ASYMPTOTIC = {
    BoundKind.I_ASYMPTOTIC,
    BoundKind.V_VALUESET,
    BoundKind.V2_LOWER,
    BoundKind.Q_PRIMROOT,
}


@dataclass(frozen=True)
class BoundReport:
    kind: str
    p: int
    H: int
    N: int
    ell: int | None
    r: int | None
    lhs: str
    main_term: float | None
    rhs: float
    ratio: float

    def row(self) -> list:
        def fmt(x):
            return "" if x is None else (repr(x) if isinstance(x, float) else str(x))

        return [fmt(getattr(self, f)) for f in CSV_COLUMNS]


CSV_COLUMNS = ("kind", "p", "H", "N", "ell", "r", "lhs", "main_term", "rhs", "ratio")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainViolation(msg)


def _require(params: dict, *names: str) -> list:
    missing = [n for n in names if params.get(n) is None]
    _need(not missing, f"missing parameters: {', '.join(missing)}")
    return [params[n] for n in names]


def eval_bound(kind: BoundKind | str, **params) -> float:
    """Bound expression for ``kind`` at the given parameters."""
    kind = BoundKind(kind)
    lg = math.log
    if kind in (BoundKind.I_MOMENT, BoundKind.J_MOMENT):
        N, ell = _require(params, "N", "ell")
        _need(N >= 1 and ell >= 1, "need N >= 1, ell >= 1")
        if kind is BoundKind.I_MOMENT:
            return N ** (2 * ell - 1 + 2.0 ** -ell)
        return N ** (2 * ell - 1 + 1 / (ell + 1))
    if kind is BoundKind.F_MAX:
        (N,) = _require(params, "N")
        _need(N >= 1, "need N >= 1")
        return N ** (2 / 3)
    if kind is BoundKind.POLYA_VINOGRADOV:
        (p,) = _require(params, "p")
        _need(p >= 3, "need p >= 3")
        return math.sqrt(p) * lg(p)
    if kind is BoundKind.V2_LOWER:
        (p,) = _require(params, "p")
        _need(p >= 3, "need p >= 3")
        return math.sqrt(p) * lg(p) ** 2
    if kind is BoundKind.SPACING_ALTSUM:
        p, J = _require(params, "p", "J")
        _need(math.sqrt(p) * lg(p) <= J <= (p - 1) // 2, "need sqrt(p) log p <= J <= (p-1)/2")
        return J**0.75 * p**0.125 * lg(p) ** 0.25

    p, N = _require(params, "p", "N")
    _need(p >= 3 and 1 <= N < p, "need 1 <= N < p")
    if kind is BoundKind.T_INDIVIDUAL:
        return N**0.75 * p**0.125 * lg(p) ** 0.25
    if kind in (BoundKind.T_SECONDMOMENT, BoundKind.S_SECONDMOMENT):
        return p * N**1.5
    if kind is BoundKind.Q_PRIMROOT:
        eps = params.get("eps") or 0.01
        _need(eps > 0, "need eps > 0")
        return N**0.75 * p ** (0.125 + eps)
    if kind is BoundKind.G_FIXEDSUM:
        (ell,) = _require(params, "ell")
        _need(ell >= 1 and ell * N < p, "need ell >= 1 and N < p/ell")
        return N ** (0.75 * ell) * p ** ((ell + 6) / 8) * lg(p) ** ((ell - 2) / 4)

    ell, r = _require(params, "ell", "r")
    if kind is BoundKind.I_ASYMPTOTIC:
        _need(ell >= r >= 1, "need ell >= r >= 1")
        return N ** (1.5 * ell + r / 2 - 1 + 2.0**-r) * p ** ((ell - r) / 4) * lg(p) ** ((ell - r) / 2)
    if kind is BoundKind.V_VALUESET:
        _need(ell >= r >= 1, "need ell >= r >= 1")
        return N ** (-ell / 2 + r / 2 - 1 + 2.0**-r) * p ** ((ell - r + 8) / 4) * lg(p) ** ((ell - r) / 2)
    if kind is BoundKind.F_UNIFORM:
        _need(r >= 1 and ell >= 2 * r, "need ell >= 2r >= 1")
        return N ** (0.75 * ell + r / 2 - 1 + 2.0**-r) * p ** ((ell - 2 * r) / 8) * lg(p) ** ((ell - 2 * r) / 4)
    if kind is BoundKind.D_DISCREPANCY:
        _need(r >= 1 and ell >= 2 * r, "need ell >= 2r >= 1")
        e = ell - 2 * r + 4
        return N ** (-ell / 4 + r / 2 - 1 + 2.0**-r) * p ** (e / 8) * lg(p) ** (e / 4)
    raise DomainViolation(f"unhandled kind {kind}")  # pragma: no cover


def main_term(kind: BoundKind | str, **params) -> float | None:
    kind = BoundKind(kind)
    p, N, ell = params.get("p"), params.get("N"), params.get("ell")
    if kind is BoundKind.I_ASYMPTOTIC:
        return N ** (2 * ell) / (p - 1)
    if kind is BoundKind.F_UNIFORM:
        return N**ell / (p - 1)
    if kind is BoundKind.V_VALUESET:
        return float(p)
    if kind is BoundKind.V2_LOWER:
        return 5 * p / 8
    if kind is BoundKind.Q_PRIMROOT:
        from factmod.fieldcore import prime_factors

        phi = 1.0
        for q in prime_factors(p - 1):
            phi *= 1 - 1 / q
        return N * phi
    if kind is BoundKind.G_FIXEDSUM:
        return math.comb(N - 1, ell - 1) / (p - 1)
    return None


def _polya_vinogradov_lhs(ctx) -> float:
    """max over nonprincipal chi and 0 <= h <= k <= p-1 of |sum_{h<c<=k} chi(c)|."""
    from scipy.spatial import ConvexHull, QhullError

    from factmod.charspectrum import character_table

    table = character_table(ctx)
    partial = np.concatenate((np.zeros((table.shape[0], 1)), np.cumsum(table[:, 1:], axis=1)), axis=1)
    best = 0.0
    for j in range(1, ctx.p - 1):
        z = partial[j]
        if np.ptp(z.imag) < 1e-9:  # real character: the points are collinear
            best = max(best, float(np.ptp(z.real)))
            continue
        pts = np.column_stack((z.real, z.imag))
        try:
            verts = pts[ConvexHull(pts).vertices]
        except QhullError:
            verts = pts
        diff = verts[:, None, :] - verts[None, :, :]
        best = max(best, float(np.sqrt((diff**2).sum(axis=2)).max()))
    return best


def _lhs(kind: BoundKind, ctx, H: int, N: int, params: dict):
    """Exact (or exactly-derived) left-hand side for one prime."""
    from factmod import charspectrum, constructions, momentlab, repcount
    from factmod.fieldcore import Window

    w = Window(H, N)
    ell = params.get("ell")
    p = ctx.p
    if kind is BoundKind.T_INDIVIDUAL:
        spec = charspectrum.spectrum_T(ctx, w)
        return float(np.abs(spec[1:]).max())
    if kind is BoundKind.T_SECONDMOMENT:
        return momentlab.moment_T(ctx, w, 1)
    if kind is BoundKind.S_SECONDMOMENT:
        return momentlab.moment_S(ctx, w, 1)
    if kind in (BoundKind.I_MOMENT, BoundKind.I_ASYMPTOTIC):
        return momentlab.count_I(ctx, w, ell)
    if kind is BoundKind.J_MOMENT:
        return momentlab.count_J(ctx, w, ell)
    if kind is BoundKind.F_UNIFORM:
        table = repcount.table_F(ctx, w, ell)
        mean = Fraction(N**ell, p - 1)
        return max(abs(v - mean) for v in table.values[1:])
    if kind is BoundKind.V_VALUESET:
        return repcount.value_set_V(ctx, w, ell)
    if kind is BoundKind.D_DISCREPANCY:
        table = repcount.table_F(ctx, w, ell)
        return max(repcount.discrepancy_from_table(ctx, table, a).D for a in range(1, p))
    if kind is BoundKind.G_FIXEDSUM:
        table = repcount.table_G(ctx, N, ell)
        mean = Fraction(math.comb(N - 1, ell - 1), p - 1)
        return max(abs(v - mean) for v in table.values[1:])
    if kind is BoundKind.F_MAX:
        return repcount.max_F1(ctx, w)[1]
    if kind is BoundKind.V2_LOWER:
        return repcount.value_set_V(ctx, Window(0, p - 1), 2)
    if kind is BoundKind.SPACING_ALTSUM:
        return abs(constructions.nonresidue_spacings(ctx, params["J"]).alt_sum)
    if kind is BoundKind.Q_PRIMROOT:
        return constructions.count_Q(ctx, w)
    if kind is BoundKind.POLYA_VINOGRADOV:
        return _polya_vinogradov_lhs(ctx)
    raise DomainViolation(f"unhandled kind {kind}")  # pragma: no cover


def _fmt_lhs(x) -> str:
    if isinstance(x, Fraction):
        return repr(float(x)) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def report_for_prime(kind: BoundKind | str, params: dict, p: int) -> BoundReport:
    from factmod.fieldcore import build_context

    kind = BoundKind(kind)
    params = dict(params)
    ctx = build_context(p)
    H = params.get("H") or 0
    N = params.get("N")
    if kind is BoundKind.G_FIXEDSUM:
        ell = params.get("ell") or 2
        params["ell"] = ell
        N = N or -(-p // ell) - 1
    elif N is None or H + N >= p:
        N = p - 1 - H
    if kind is BoundKind.SPACING_ALTSUM and params.get("J") is None:
        params["J"] = (p - 1) // 2
    full = {**params, "p": p, "N": N}
    rhs = eval_bound(kind, **full)
    lhs = _lhs(kind, ctx, H, N, full)
    main = main_term(kind, **full)
    if kind in ASYMPTOTIC:
        ratio = abs(float(lhs) - main) / rhs
    else:
        ratio = float(lhs) / rhs
    return BoundReport(kind.value, p, H, N, params.get("ell"), params.get("r"), _fmt_lhs(lhs), main, rhs, ratio)


def ratio_sweep(kind: BoundKind | str, primes, params: dict | None = None, jobs: int = 1) -> list[BoundReport]:
    """One report per prime, in ascending-prime order."""
    from factmod.sweep import run_ordered

    kind = BoundKind(kind)
    params = dict(params or {})
    return run_ordered(partial(report_for_prime, kind, params), sorted(primes), jobs)


def summarize(reports: list[BoundReport]) -> dict:
    if not reports:
        return {"count": 0}
    worst = max(reports, key=lambda r: r.ratio)
    return {"kind": worst.kind, "count": len(reports), "max_ratio": worst.ratio, "argmax_p": worst.p}
