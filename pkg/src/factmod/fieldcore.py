"""Prime-field context: primality, primitive root, index table, sequence residues."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from factmod.errors import EvenOrTooSmall, NotPrime, OutOfRange, WindowOutOfRange


class SequenceKind(str, enum.Enum):
    """Which integer sequence u(n) is reduced modulo p.

    FACTORIAL is n!, CENTRAL_BINOMIAL is binom(2n, n), DOUBLE_FACTORIAL is
    (2n+1)!! = 1*3*...*(2n+1).  All start from u(0) = 1.
    """

    FACTORIAL = "factorial"
    CENTRAL_BINOMIAL = "central-binomial"
    DOUBLE_FACTORIAL = "double-factorial"


@dataclass(frozen=True)
class Window:
    """The range n = H+1, ..., H+N."""

    H: int
    N: int

    def __post_init__(self):
        if self.H < 0 or self.N < 1:
            raise WindowOutOfRange(f"need H >= 0 and N >= 1, got H={self.H}, N={self.N}")

    @property
    def first(self) -> int:
        return self.H + 1

    @property
    def last(self) -> int:
        return self.H + self.N

    def range(self) -> range:
        return range(self.H + 1, self.H + self.N + 1)


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for desk-scale n."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Odd primes in [lo, hi], ascending (sieve of Eratosthenes)."""
    if hi < 3 or hi < lo:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, math.isqrt(hi) + 1):
        if sieve[d]:
            sieve[d * d :: d] = False
    return [int(q) for q in np.flatnonzero(sieve) if q >= max(lo, 3)]


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def smallest_primitive_root(p: int, factors: tuple[int, ...] | None = None) -> int:
    if factors is None:
        factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise NotPrime(p)  # unreachable for primes


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """Immutable per-prime precomputation.

    ``ind[x]`` is the discrete logarithm of x to base ``g`` for 1 <= x < p;
    ``ind[0]`` holds -1 and must never be used.
    """

    p: int
    g: int
    ind: np.ndarray = field(repr=False)
    kind: SequenceKind = SequenceKind.FACTORIAL
    factors: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return self.p - 1

    def index(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise OutOfRange("the index of 0 is undefined")
        return int(self.ind[x])

    def power(self, k: int) -> int:
        return pow(self.g, k % (self.p - 1), self.p)

    def inverse(self, x: int) -> int:
        return pow(x, -1, self.p)

    def summary(self) -> dict:
        return {"p": self.p, "g": self.g, "kind": self.kind.value}

    def with_kind(self, kind: SequenceKind) -> PrimeContext:
        return PrimeContext(self.p, self.g, self.ind, SequenceKind(kind), self.factors)


def build_context(p: int, kind: SequenceKind | str = SequenceKind.FACTORIAL) -> PrimeContext:
    if p < 3 or p % 2 == 0:
        raise EvenOrTooSmall(f"p must be an odd prime >= 3, got {p}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    factors = prime_factors(p - 1)
    g = smallest_primitive_root(p, factors)
    ind = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        ind[x] = k
        x = x * g % p
    ind.flags.writeable = False
    return PrimeContext(p, g, ind, SequenceKind(kind), factors)


def next_value(kind: SequenceKind, n: int, prev: int, p: int) -> int:
    if kind is SequenceKind.FACTORIAL:
        if n % p == 0:
            raise WindowOutOfRange(f"{n}! vanishes modulo {p}")
        return prev * n % p
    if kind is SequenceKind.DOUBLE_FACTORIAL:
        if (2 * n + 1) % p == 0:
            raise WindowOutOfRange(f"multiplier {2 * n + 1} vanishes modulo {p}")
        return prev * (2 * n + 1) % p
    # binom(2n, n) = binom(2n-2, n-1) * 2(2n-1) / n
    if n % p == 0 or (2 * n - 1) % p == 0:
        raise WindowOutOfRange(f"binom({2 * n},{n}) step is singular modulo {p}")
    return prev * 2 * (2 * n - 1) * pow(n, -1, p) % p


def sequence_values(p: int, last: int, kind: SequenceKind = SequenceKind.FACTORIAL) -> list[int]:
    """[u(0), u(1), ..., u(last)] modulo p, checking every step is nonsingular."""
    kind = SequenceKind(kind)
    out = [1]
    u = 1
    for n in range(1, last + 1):
        u = next_value(kind, n, u, p)
        out.append(u)
    return out


def factorials_mod(p: int, last: int | None = None) -> list[int]:
    """[0!, 1!, ..., last!] modulo p (default last = p-1)."""
    last = p - 1 if last is None else last
    out = [1] * (last + 1)
    for n in range(1, last + 1):
        out[n] = out[n - 1] * n % p
    return out


def check_window(ctx: PrimeContext, w: Window) -> None:
    if w.last >= ctx.p:
        raise WindowOutOfRange(f"need H+N < p, got H+N={w.last}, p={ctx.p}")


def sequence_residues(ctx: PrimeContext, w: Window) -> list[int]:
    """u(n) mod p for n = H+1, ..., H+N."""
    check_window(ctx, w)
    vals = sequence_values(ctx.p, w.last, ctx.kind)
    return vals[w.first :]


def residue_indices(ctx: PrimeContext, w: Window) -> np.ndarray:
    """ind(u(n)) for n in the window, as an int64 array."""
    res = np.asarray(sequence_residues(ctx, w), dtype=np.int64)
    return ctx.ind[res]


def legendre(ctx: PrimeContext, x: int) -> int:
    x %= ctx.p
    if x == 0:
        return 0
    return 1 if ctx.ind[x] % 2 == 0 else -1
