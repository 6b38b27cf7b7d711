"""Exact cyclic convolution of nonnegative integer vectors.

Short vectors use a schoolbook product on Python integers.  Longer ones go
through number-theoretic transforms modulo several word-size primes and are
reassembled with Garner's mixed-radix CRT; enough primes are used that
their product exceeds the a-priori bound on every output coefficient, so the
reconstruction is exact.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# (prime, primitive root); every prime is < 2**31 and has 2**21 | prime - 1
NTT_PRIMES = (
    (998244353, 3),
    (167772161, 3),
    (469762049, 3),
    (754974721, 11),
    (1004535809, 3),
    (924844033, 5),
    (1224736769, 3),
    (1107296257, 10),
    (1711276033, 29),
    (2013265921, 31),
)
MAX_NTT_LOG2 = 21
SCHOOLBOOK_MAX = 64


def schoolbook_cyclic(a, b, length: int) -> list[int]:
    """Reference cyclic convolution over Z_length on Python integers."""
    out = [0] * length
    bb = [(j, int(y)) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        x = int(x)
        if not x:
            continue
        for j, y in bb:
            out[(i + j) % length] += x * y
    return out


@lru_cache(maxsize=64)
def _bitrev(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=512)
def _twiddles(mod: int, root: int, m: int, invert: bool) -> np.ndarray:
    w = pow(root, (mod - 1) // (2 * m), mod)
    if invert:
        w = pow(w, -1, mod)
    pw = np.ones(1, dtype=np.int64)
    while len(pw) < m:
        step = pow(w, len(pw), mod)
        pw = np.concatenate((pw, pw * step % mod))
    out = pw[:m]
    out.flags.writeable = False
    return out


def _ntt(a: np.ndarray, mod: int, root: int, invert: bool = False) -> np.ndarray:
    n = len(a)
    a = a[_bitrev(n)]
    m = 1
    while m < n:
        blocks = a.reshape(-1, 2 * m)
        u = blocks[:, :m]
        v = blocks[:, m:] * _twiddles(mod, root, m, invert) % mod
        a = np.concatenate(((u + v) % mod, (u - v) % mod), axis=1).ravel()
        m *= 2
    if invert:
        a = a * pow(n, -1, mod) % mod
    return a


def _moduli_for(bound: int) -> list[tuple[int, int]]:
    chosen = []
    prod = 1
    for mod, root in NTT_PRIMES:
        chosen.append((mod, root))
        prod *= mod
        if prod > bound:
            return chosen
    raise OverflowError(f"coefficient bound {bound} exceeds the CRT range")


def _garner(residues: list[np.ndarray], moduli: list[int]) -> list[int]:
    """Reconstruct nonnegative integers below prod(moduli) from residues."""
    k = len(moduli)
    digits = [residues[0]]
    for j in range(1, k):
        mj = moduli[j]
        # value of the partial reconstruction modulo mj
        acc = np.zeros_like(residues[j])
        radix = 1
        for i in range(j):
            acc = (acc + digits[i] % mj * (radix % mj)) % mj
            radix *= moduli[i]
        inv = pow(radix % mj, -1, mj)
        digits.append((residues[j] - acc) % mj * inv % mj)
    out = digits[-1].astype(object)
    for i in range(k - 2, -1, -1):
        out = out * moduli[i] + digits[i].astype(object)
    return [int(x) for x in out]


def _fold(lin: np.ndarray, length: int, mod: int) -> np.ndarray:
    pad = (-len(lin)) % length
    if pad:
        lin = np.concatenate((lin, np.zeros(pad, dtype=np.int64)))
    return lin.reshape(-1, length).sum(axis=0) % mod


def _transform_size(linear_len: int) -> int:
    n = 1
    while n < linear_len:
        n *= 2
    if n.bit_length() - 1 > MAX_NTT_LOG2:
        raise OverflowError(f"transform length {n} too large")
    return n


def _as_residues(vec, mod: int) -> np.ndarray:
    return np.array([int(x) % mod for x in vec], dtype=np.int64)


def cyclic_convolve(a, b, length: int) -> list[int]:
    """Exact cyclic convolution of two nonnegative integer vectors."""
    a = list(a)
    b = list(b)
    if length <= SCHOOLBOOK_MAX:
        return schoolbook_cyclic(a, b, length)
    bound = max(1, sum(int(x) for x in a) * sum(int(x) for x in b))
    n = _transform_size(len(a) + len(b) - 1)
    residues, moduli = [], []
    for mod, root in _moduli_for(bound):
        fa = np.zeros(n, dtype=np.int64)
        fb = np.zeros(n, dtype=np.int64)
        fa[: len(a)] = _as_residues(a, mod)
        fb[: len(b)] = _as_residues(b, mod)
        prod = _ntt(fa, mod, root) * _ntt(fb, mod, root) % mod
        lin = _ntt(prod, mod, root, invert=True)
        residues.append(_fold(lin, length, mod))
        moduli.append(mod)
    return _garner(residues, moduli)


def cyclic_power(h, length: int, ell: int) -> list[int]:
    """The ell-fold cyclic self-convolution of h over Z_length."""
    h = list(h)
    if ell == 1:
        return [int(x) for x in h] + [0] * (length - len(h))
    if length <= SCHOOLBOOK_MAX:
        acc = [int(x) for x in h]
        for _ in range(ell - 1):
            acc = schoolbook_cyclic(acc, h, length)
        return acc
    bound = max(1, sum(int(x) for x in h) ** ell)
    n = _transform_size(ell * (len(h) - 1) + 1)
    residues, moduli = [], []
    for mod, root in _moduli_for(bound):
        fh = np.zeros(n, dtype=np.int64)
        fh[: len(h)] = _as_residues(h, mod)
        fh = _ntt(fh, mod, root)
        acc = fh.copy()
        for _ in range(ell - 1):
            acc = acc * fh % mod
        lin = _ntt(acc, mod, root, invert=True)
        residues.append(_fold(lin, length, mod))
        moduli.append(mod)
    return _garner(residues, moduli)
