"""Multiplicative and additive character sums over factorial residues.

Characters are parametrised by j in {0, ..., p-2} through
chi_j(g^k) = exp(2*pi*i*j*k/(p-1)), with chi_j(0) = 0.  Full spectra over all
j (or all additive frequencies a) are exact-length cyclic DFTs of residue
histograms, evaluated with Bluestein's chirp-z reduction.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from factmod.errors import OutOfRange
from factmod.fieldcore import PrimeContext, Window, check_window, sequence_residues


@dataclass(frozen=True)
class PhasePolynomial:
    """f(X) = c_0 + c_1 X + ... + c_d X^d over F_p."""

    coeffs: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str | None) -> PhasePolynomial:
        if not text:
            return cls()
        return cls(tuple(int(c) for c in text.split(",")))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, n: int, p: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * n + c) % p
        return acc


ZERO = PhasePolynomial()


def _chirp(length: int, sign: int) -> np.ndarray:
    # exp(sign*i*pi*m^2/length) with m^2 reduced mod 2*length in integers
    m = np.arange(length, dtype=np.int64)
    sq = (m * m) % (2 * length)
    return np.exp(sign * 1j * math.pi * sq / length)


def bluestein_dft(x: Sequence[complex], sign: int = 1) -> np.ndarray:
    """X_k = sum_n x_n exp(sign*2*pi*i*n*k/L) for arbitrary length L."""
    x = np.asarray(x, dtype=np.complex128)
    length = len(x)
    if length == 1:
        return x.copy()
    c = _chirp(length, sign)
    size = 1 << (2 * length - 2).bit_length()
    a = np.zeros(size, dtype=np.complex128)
    a[:length] = x * c
    b = np.zeros(size, dtype=np.complex128)
    cb = np.conj(c)
    b[:length] = cb
    b[size - length + 1 :] = cb[1:][::-1]
    y = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))[:length]
    return c * y


def _fsum_complex(angles: np.ndarray) -> complex:
    return complex(math.fsum(np.cos(angles)), math.fsum(np.sin(angles)))


def sum_T(ctx: PrimeContext, j: int, w: Window, f: PhasePolynomial = ZERO) -> complex:
    """Direct evaluation of sum_{n in window} chi_j(u(n)) e(f(n))."""
    if not 0 <= j < ctx.p - 1:
        raise OutOfRange(f"character index must lie in [0, {ctx.p - 2}]")
    p, L = ctx.p, ctx.p - 1
    res = sequence_residues(ctx, w)
    if j == 0 and f.is_zero:
        return complex(len(res))
    # phase numerator over the common denominator p*(p-1)
    nums = np.array(
        [(j * int(ctx.ind[u]) % L) * p + f(n, p) * L for n, u in zip(w.range(), res)],
        dtype=np.int64,
    ) % (p * L)
    return _fsum_complex(2 * math.pi * nums / (p * L))


def sum_S(ctx: PrimeContext, a: int, w: Window) -> complex:
    """Direct evaluation of sum_{n in window} e(a u(n))."""
    if not 0 <= a < ctx.p:
        raise OutOfRange(f"a must lie in [0, {ctx.p - 1}]")
    res = sequence_residues(ctx, w)
    if a == 0:
        return complex(len(res))
    nums = np.asarray(res, dtype=np.int64) * a % ctx.p
    return _fsum_complex(2 * math.pi * nums / ctx.p)


def spectrum_T(ctx: PrimeContext, w: Window, f: PhasePolynomial = ZERO) -> np.ndarray:
    """T(chi_j, f, H, N) for every j = 0, ..., p-2."""
    check_window(ctx, w)
    p, L = ctx.p, ctx.p - 1
    res = sequence_residues(ctx, w)
    idx = ctx.ind[np.asarray(res, dtype=np.int64)]
    if f.is_zero:
        weights = np.bincount(idx, minlength=L).astype(np.complex128)
    else:
        phase = np.array([f(n, p) for n in w.range()], dtype=np.int64)
        ang = 2 * math.pi * phase / p
        weights = np.bincount(idx, weights=np.cos(ang), minlength=L) + 1j * np.bincount(
            idx, weights=np.sin(ang), minlength=L
        )
    out = bluestein_dft(weights, sign=1)
    out[0] = weights.sum()
    return out


def spectrum_S(ctx: PrimeContext, w: Window) -> np.ndarray:
    """S(a, H, N) for every a = 0, ..., p-1."""
    check_window(ctx, w)
    res = np.asarray(sequence_residues(ctx, w), dtype=np.int64)
    hist = np.bincount(res, minlength=ctx.p).astype(np.complex128)
    out = bluestein_dft(hist, sign=1)
    out[0] = w.N
    return out


def character_table(ctx: PrimeContext) -> np.ndarray:
    """Matrix M[j, x] = chi_j(x) for 0 <= j < p-1, 0 <= x < p."""
    L = ctx.p - 1
    j = np.arange(L, dtype=np.int64)[:, None]
    k = ctx.ind[None, :]
    table = np.exp(2j * math.pi * ((j * k) % L) / L)
    table[:, 0] = 0
    return table


def write_spectrum_csv(fh: io.TextIOBase, p: int, values: np.ndarray) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["p", "j_or_a", "re", "im", "magnitude2"])
    for k, z in enumerate(values):
        writer.writerow([p, k, repr(float(z.real)), repr(float(z.imag)), repr(float(abs(z) ** 2))])


def write_spectrum_binary(path: str, values: np.ndarray) -> None:
    """Interleaved (re, im) little-endian float64 pairs."""
    np.asarray(values, dtype="<c16").view("<f8").tofile(path)
