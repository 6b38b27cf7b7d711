"""Exact moment counts I_l, J_l and the spectral moments they equal.

I_l(H, N) counts 2l-tuples from the window whose first l factorial residues
and last l factorial residues have the same product; J_l(H, N) does the same
for sums.  Both are evaluated as sum_v h^{*l}(v)^2, where h is the window's
histogram in the index domain Z_{p-1} (products) or the value domain Z_p
(sums), and h^{*l} its exact l-fold cyclic self-convolution.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from factmod import charspectrum
from factmod.charspectrum import ZERO, PhasePolynomial
from factmod.errors import EllOutOfRange
from factmod.exactconv import cyclic_power
from factmod.fieldcore import PrimeContext, Window, sequence_residues

MAX_ELL = 8


class Domain(str, enum.Enum):
    MULTIPLICATIVE = "mult"
    ADDITIVE = "add"


@dataclass(frozen=True)
class ResidueHistogram:
    domain: Domain
    counts: np.ndarray  # int64; length p-1 (mult) or p (add)

    @property
    def length(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def check_ell(ell: int, lo: int = 1, hi: int = MAX_ELL) -> None:
    if not lo <= ell <= hi:
        raise EllOutOfRange(f"ell must lie in [{lo}, {hi}], got {ell}")


def histogram(ctx: PrimeContext, w: Window, domain: Domain | str = Domain.MULTIPLICATIVE) -> ResidueHistogram:
    domain = Domain(domain)
    res = np.asarray(sequence_residues(ctx, w), dtype=np.int64)
    if domain is Domain.ADDITIVE:
        counts = np.bincount(res, minlength=ctx.p)
    else:
        counts = np.bincount(ctx.ind[res], minlength=ctx.p - 1)
    counts.flags.writeable = False
    return ResidueHistogram(domain, counts)


def convolution_power(hist: ResidueHistogram, ell: int) -> list[int]:
    """Exact ell-fold cyclic self-convolution of a histogram."""
    return cyclic_power(hist.counts.tolist(), hist.length, ell)


def count_I(ctx: PrimeContext, w: Window, ell: int) -> int:
    check_ell(ell)
    conv = convolution_power(histogram(ctx, w, Domain.MULTIPLICATIVE), ell)
    return sum(v * v for v in conv)


def count_J(ctx: PrimeContext, w: Window, ell: int) -> int:
    check_ell(ell)
    conv = convolution_power(histogram(ctx, w, Domain.ADDITIVE), ell)
    return sum(v * v for v in conv)


def _power_sum(values: np.ndarray, ell: int) -> float:
    return math.fsum((np.abs(values) ** 2) ** ell)


def moment_T(ctx: PrimeContext, w: Window, ell: int, f: PhasePolynomial = ZERO) -> float:
    """sum_j |T(chi_j, f, H, N)|^(2 ell)."""
    check_ell(ell)
    return _power_sum(charspectrum.spectrum_T(ctx, w, f), ell)


def moment_S(ctx: PrimeContext, w: Window, ell: int) -> float:
    """sum_a |S(a, H, N)|^(2 ell)."""
    check_ell(ell)
    return _power_sum(charspectrum.spectrum_S(ctx, w), ell)


def cauchy_schwarz_floor_holds(count: int, p: int, N: int, ell: int) -> bool:
    """I_l * (p-1) >= N^(2l), compared in exact integers."""
    return count * (p - 1) >= N ** (2 * ell)


def moment_report(ctx: PrimeContext, w: Window, ell: int, which: str) -> dict:
    """JSON-ready report; counts are emitted as decimal strings."""
    from factmod import boundbench

    which = which.upper()
    if which == "I":
        value = count_I(ctx, w, ell)
        rhs = boundbench.eval_bound("I_moment", N=w.N, ell=ell)
    elif which == "J":
        value = count_J(ctx, w, ell)
        rhs = boundbench.eval_bound("J_moment", N=w.N, ell=ell)
    elif which == "T":
        value = moment_T(ctx, w, ell)
        rhs = boundbench.eval_bound("T_secondmoment", p=ctx.p, N=w.N) if ell == 1 else None
    elif which == "S":
        value = moment_S(ctx, w, ell)
        rhs = boundbench.eval_bound("S_secondmoment", p=ctx.p, N=w.N) if ell == 1 else None
    else:
        raise ValueError(f"unknown moment {which!r}")
    count = str(value) if isinstance(value, int) else repr(value)
    ratio = None if rhs is None else float(value) / rhs
    return {"p": ctx.p, "H": w.H, "N": w.N, "ell": ell, "which": which,
            "count": count, "bound_rhs": rhs, "ratio": ratio}
