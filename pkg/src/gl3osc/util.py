"""Small numeric utilities shared across modules.

Summation and reduction order are fixed and compensated so every result is
bit-reproducible run to run; nothing here depends on scheduling.
"""

from __future__ import annotations

import numpy as np

from .errors import InsufficientGridError

TWO_PI = 2.0 * np.pi


def e(x):
    """exp(2*pi*i*x), the additive character. Accepts scalars or arrays."""
    return np.exp(2j * np.pi * np.asarray(x, dtype=float))


def kahan_sum(values) -> float:
    """Compensated sum of real values in the given order.

    Neumaier's variant: the correction survives even when a later term
    swamps the running sum, unlike the classic update.
    """
    s = 0.0
    c = 0.0
    for v in np.asarray(values, dtype=float).ravel():
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def kahan_csum(values) -> complex:
    """Compensated sum of complex values in the given order."""
    arr = np.asarray(values, dtype=complex).ravel()
    return complex(kahan_sum(arr.real), kahan_sum(arr.imag))


def loglog_slope(xs, ys) -> tuple[float, float]:
    """Least-squares slope and intercept of log(y) against log(x).

    Used for all decay-rate fits; requires at least 3 strictly positive
    points so a slope estimate is meaningful.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3:
        raise InsufficientGridError("slope fit needs at least 3 grid points")
    if np.any(xs <= 0.0) or np.any(ys <= 0.0):
        raise InsufficientGridError("slope fit needs strictly positive data")
    slope, intercept = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope), float(intercept)


def primes_in(lo: float, hi: float) -> list[int]:
    """Primes p with lo <= p <= hi, ascending. Plain sieve; desk scale."""
    if hi < 2.0 or hi < lo:
        return []
    limit = int(np.floor(hi))
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, int(limit**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    start = max(2, int(np.ceil(lo)))
    return [p for p in range(start, limit + 1) if sieve[p]]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    q = 2
    while q * q <= m:
        if m % q == 0:
            return False
        q += 1
    return True
