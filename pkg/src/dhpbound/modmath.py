"""Arbitrary-precision modular arithmetic, primality, factoring, and integer helpers.

Everything here works on plain Python ints (arbitrary precision, non-negative
unless stated). These are the primitives the group backends, the reduction
engine, and the bound calculator are built on.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass

# Deterministic Miller-Rabin witness set, valid for every n below this bound.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_DIVISION_LIMIT = 1_000_000


class IncompleteFactorizationError(ValueError):
    """Raised when an operation requires a complete factorization but got a partial one."""


@dataclass(frozen=True)
class Factorization:
    """Factorization of a positive integer, possibly partial.

    factors holds (prime, exponent) pairs in ascending prime order; cofactor is
    the unfactored remainder (1 when none). complete is True iff cofactor == 1,
    in which case the product of prime**exponent terms equals the input.
    """

    factors: tuple[tuple[int, int], ...]
    complete: bool
    cofactor: int = 1

    @property
    def value(self) -> int:
        v = self.cofactor
        for prime, exp in self.factors:
            v *= prime**exp
        return v

    def primes(self) -> tuple[int, ...]:
        return tuple(prime for prime, _ in self.factors)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus for non-negative exponent; modulus must be >= 2."""
    if modulus < 2:
        raise ValueError(f"invalid modulus {modulus}: must be at least 2")
    return pow(base, exponent, modulus)


def is_prime(n: int, rounds: int = 64) -> bool:
    """Miller-Rabin primality verdict.

    Deterministic (fixed witness set) for n below ~3.3e24; for larger n runs
    `rounds` random-base rounds with error probability <= 4**(-rounds). Bases
    are drawn from an RNG seeded by n, so the verdict is reproducible.
    """
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    # write n-1 = 2^r * s with s odd
    r, s = 0, n - 1
    while s % 2 == 0:
        r += 1
        s //= 2
    if n < _MR_DETERMINISTIC_BOUND:
        bases = [w for w in _MR_WITNESSES if w < n - 1]
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        x = pow(a, s, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    """Primes below the trial-division limit, sieved once on first use."""
    limit = _TRIAL_DIVISION_LIMIT
    composite = bytearray(limit)
    for i in range(2, math.isqrt(limit - 1) + 1):
        if not composite[i]:
            composite[i * i :: i] = b"\x01" * len(composite[i * i :: i])
    return tuple(i for i in range(2, limit) if not composite[i])


def _brent_rho(n: int, budget: int) -> tuple[int, int]:
    """One Brent-cycle factor-finding attempt on composite odd n.

    Returns (factor, remaining_budget); factor == n means the budget ran out.
    The budget counts modular multiplications.
    """
    rng = random.Random(n ^ 0x9E3779B97F4A7C15)
    while budget > 0:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and budget > 0:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            budget -= r
            k = 0
            while k < r and g == 1 and budget > 0:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget -= 2 * min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # backtrack one step at a time to recover the factor the batch gcd skipped
            g = 1
            while g == 1 and budget > 0:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                budget -= 2
        if 1 < g < n:
            return g, budget
        # g == n even after backtracking: retry with a fresh polynomial
    return n, 0


@functools.lru_cache(maxsize=4096)
def _factorize_cached(n: int, effort_budget: int) -> Factorization:
    found: dict[int, int] = {}
    m = n
    for prime in _small_primes():
        if prime * prime > m:
            break
        while m % prime == 0:
            found[prime] = found.get(prime, 0) + 1
            m //= prime
    if m > 1 and m < _TRIAL_DIVISION_LIMIT * _TRIAL_DIVISION_LIMIT:
        # below the square of the trial limit the remainder must be prime
        found[m] = found.get(m, 0) + 1
        m = 1
    budget = effort_budget
    pending = [m] if m > 1 else []
    while pending:
        piece = pending.pop()
        if is_prime(piece):
            found[piece] = found.get(piece, 0) + 1
            continue
        factor, budget = _brent_rho(piece, budget)
        if factor == piece:  # budget exhausted
            cofactor = piece
            for other in pending:
                cofactor *= other
            return Factorization(
                factors=tuple(sorted(found.items())), complete=False, cofactor=cofactor
            )
        pending.append(factor)
        pending.append(piece // factor)
    return Factorization(factors=tuple(sorted(found.items())), complete=True, cofactor=1)


def factorize(n: int, effort_budget: int = 10**8) -> Factorization:
    """Factor n by trial division to 10^6 then Brent's cycle method.

    effort_budget caps the modular multiplications spent in the cycle phase;
    when it runs out the result carries the unfactored remainder as cofactor
    with complete=False.
    """
    if n < 2:
        raise ValueError(f"cannot factor {n}: must be at least 2")
    return _factorize_cached(n, effort_budget)


def isqrt(n: int) -> int:
    """Exact floor square root: the r with r*r <= n < (r+1)*(r+1)."""
    return math.isqrt(n)


def icbrt(n: int) -> int:
    """Exact floor cube root: the r with r**3 <= n < (r+1)**3."""
    if n < 0:
        raise ValueError(f"cube root of negative {n} not supported")
    if n == 0:
        return 0
    r = 1 << -(-n.bit_length() // 3)  # upper bound: 2^ceil(bits/3)
    while True:  # Newton iteration, monotone from above
        s = (2 * r + n // (r * r)) // 3
        if s >= r:
            break
        r = s
    return r


def log2_approx(n: int) -> float:
    """log2(n) from the bit length plus the leading 64 bits; error well under 1e-6."""
    if n < 1:
        raise ValueError(f"log2 of {n} undefined: must be at least 1")
    k = n.bit_length()
    if k <= 64:
        return math.log2(n)
    return (k - 64) + math.log2(n >> (k - 64))


def divisors_in_range(f: Factorization, lo: int, hi: int, cap: int = 10**6) -> list[int]:
    """Ascending divisors of the factored integer lying in [lo, hi], at most cap of them.

    Depth-first over exponent vectors, pruning any branch whose partial product
    already exceeds hi, so smooth inputs cannot blow up the enumeration.
    """
    if not f.complete:
        raise IncompleteFactorizationError(
            "divisor enumeration requires a complete factorization"
        )
    if lo > hi:
        raise ValueError(f"empty range: lo {lo} > hi {hi}")
    out: list[int] = []
    entries = f.factors

    def walk(idx: int, acc: int) -> None:
        if len(out) >= cap:
            return
        if idx == len(entries):
            if lo <= acc <= hi:
                out.append(acc)
            return
        prime, exp = entries[idx]
        value = acc
        for _ in range(exp + 1):
            if value > hi:
                break
            walk(idx + 1, value)
            value *= prime


    walk(0, 1)
    out.sort()
    return out[:cap]
