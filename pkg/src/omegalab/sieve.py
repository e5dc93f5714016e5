"""Exact multiplicative backbone: segmented smallest-prime-factor sieves,
range evaluation of omega/tau/phi, and certified scalar factorization.

Conventions used throughout: omega(1) = 0, tau(1) = 1, phi(1) = 1.
Range functions return plain numpy arrays where index i corresponds to
n = lo + i.  Everything here is deterministic; the parallel paths split
the range into fixed blocks whose results do not depend on the thread
count or on block boundaries.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceError

__all__ = [
    "FactorSieve",
    "Factorization",
    "build_factor_sieve",
    "factorize",
    "is_prime",
    "omega",
    "omega_range",
    "phi",
    "phi_range",
    "prime_mask",
    "primes_up_to",
    "tau",
    "tau_range",
]

#: Largest supported sieve endpoint.  Base primes up to sqrt(2**50) = 2**25
#: keep the auxiliary sieve tiny, and every spf value fits in uint32.
MAX_SIEVE_HI = 1 << 50

_BUDGET_ENV = "OMEGALAB_MEMORY_BUDGET"
_DEFAULT_BUDGET = 2_000_000_000  # bytes
_DEFAULT_BLOCK = 1 << 20  # uint32 block ~ 4 MiB, near L2/L3 boundary


def _memory_budget(explicit: int | None) -> int:
    if explicit is not None:
        return int(explicit)
    return int(os.environ.get(_BUDGET_ENV, _DEFAULT_BUDGET))


def _check_budget(needed: int, budget: int, what: str) -> None:
    if needed > budget:
        raise ResourceError(
            f"{what} needs ~{needed} bytes but the memory budget is {budget} "
            f"bytes (override via {_BUDGET_ENV} or the memory_budget argument)"
        )


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (classic Eratosthenes)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def prime_mask(n: int) -> np.ndarray:
    """Boolean array of length n+1 with mask[k] true iff k is prime."""
    if n < 1:
        return np.zeros(max(n + 1, 0), dtype=bool)
    mask = np.ones(n + 1, dtype=bool)
    mask[: min(2, n + 1)] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


# ---------------------------------------------------------------------------
# segmented smallest-prime-factor table


@dataclass(eq=False)
class FactorSieve:
    """Smallest-prime-factor table for the window [lo, hi].

    ``spf[i]`` holds the smallest prime factor of n = lo + i, with the
    sentinel 0 meaning "no prime <= sqrt(hi) divides n", i.e. n is 1 or
    prime.  ``spf_of`` resolves the sentinel.
    """

    lo: int
    hi: int
    block_size: int
    spf: np.ndarray = field(repr=False)
    base_primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def spf_of(self, n: int) -> int:
        """Smallest prime factor of n (returns n itself for primes, 1 for 1)."""
        if not self.lo <= n <= self.hi:
            raise DomainError(f"n={n} outside sieve window [{self.lo}, {self.hi}]")
        v = int(self.spf[n - self.lo])
        return v if v else max(n, 1)

    def is_prime_in_window(self, n: int) -> bool:
        return n >= 2 and self.spf_of(n) == n


def _fill_spf_block(spf: np.ndarray, lo: int, a: int, b: int, base: np.ndarray) -> None:
    # Write strides for base primes in decreasing order so the smallest
    # prime lands last and wins without any masking.
    view = spf[a - lo : b - lo]
    for p in base[::-1]:
        p = int(p)
        view[(-a) % p :: p] = p


def build_factor_sieve(
    lo: int,
    hi: int,
    block_size: int = _DEFAULT_BLOCK,
    memory_budget: int | None = None,
    threads: int | None = None,
) -> FactorSieve:
    """Build a smallest-prime-factor table for the inclusive window [lo, hi].

    Parameters
    ----------
    lo, hi : int
        Window endpoints, 1 <= lo <= hi <= 2**50.
    block_size : int
        Segment length used while filling (and by the range functions).
        The result is independent of this value.
    memory_budget : int, optional
        Byte budget; defaults to the OMEGALAB_MEMORY_BUDGET environment
        variable or 2e9.  Exceeding it raises ResourceError up front.
    threads : int, optional
        Worker threads for the fill.  Output is identical for any value.

    Returns
    -------
    FactorSieve
    """
    if lo < 1 or hi < lo:
        raise DomainError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > MAX_SIEVE_HI:
        raise DomainError(f"hi={hi} exceeds supported limit 2**50")
    if block_size < 1:
        raise DomainError("block_size must be positive")
    size = hi - lo + 1
    budget = _memory_budget(memory_budget)
    _check_budget(4 * size + math.isqrt(hi) + 1, budget, f"spf table for [{lo}, {hi}]")

    base = primes_up_to(math.isqrt(hi))
    spf = np.zeros(size, dtype=np.uint32)
    blocks = [(a, min(a + block_size - 1, hi)) for a in range(lo, hi + 1, block_size)]
    nthreads = max(1, threads or 1)
    if nthreads == 1 or len(blocks) == 1:
        for a, b in blocks:
            _fill_spf_block(spf, lo, a, b + 1, base)
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            futs = [ex.submit(_fill_spf_block, spf, lo, a, b + 1, base) for a, b in blocks]
            for f in futs:
                f.result()
    return FactorSieve(lo=lo, hi=hi, block_size=block_size, spf=spf, base_primes=base)


# ---------------------------------------------------------------------------
# range evaluation of omega / tau / phi


def _omega_block(a: int, b: int, base: np.ndarray) -> np.ndarray:
    """omega(n) for n in [a, b) via slice-adds per base prime.

    For each base prime p we add 1 along the stride of p and divide the
    residual cofactor by p along the strides of p, p**2, ...; whatever is
    left > 1 at the end is a single prime factor > sqrt(b).
    """
    om = np.zeros(b - a, dtype=np.uint8)
    rem = np.arange(a, b, dtype=np.int64)
    for p in base:
        p = int(p)
        if p * p >= b:
            break
        om[(-a) % p :: p] += 1
        pk = p
        while pk < b:
            rem[(-a) % pk :: pk] //= p
            pk *= p
    om[rem > 1] += 1
    return om


def omega_range(sieve: FactorSieve, threads: int | None = None) -> np.ndarray:
    """Number of distinct prime factors for every n in the sieve window.

    Returns a uint8 array where index i corresponds to n = sieve.lo + i.
    The blockwise computation touches each n independently, so the result
    is invariant under block partition and thread count.
    """
    lo, hi, base = sieve.lo, sieve.hi, sieve.base_primes
    out = np.empty(hi - lo + 1, dtype=np.uint8)
    blocks = [(a, min(a + sieve.block_size - 1, hi)) for a in range(lo, hi + 1, sieve.block_size)]

    def work(ab: tuple[int, int]) -> None:
        a, b = ab
        out[a - lo : b + 1 - lo] = _omega_block(a, b + 1, base)

    nthreads = max(1, threads or 1)
    if nthreads == 1 or len(blocks) == 1:
        for ab in blocks:
            work(ab)
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            for f in [ex.submit(work, ab) for ab in blocks]:
                f.result()
    return out


def tau_range(sieve: FactorSieve) -> np.ndarray:
    """Divisor counts tau(n) over the window, by paired divisor enumeration.

    Every divisor pair (d, n/d) with d*d <= n contributes 2, and perfect
    squares give back the double-counted root.  Cost is ~(hi-lo) log hi
    plus sqrt(hi) stride writes, so windows far from the origin stay cheap.
    """
    lo, hi = sieve.lo, sieve.hi
    tau = np.zeros(hi - lo + 1, dtype=np.int32)
    for d in range(1, math.isqrt(hi) + 1):
        start = max(d * d, lo + (-lo) % d)
        if start <= hi:
            tau[start - lo :: d] += 2
    r0 = math.isqrt(lo - 1) + 1
    for r in range(r0, math.isqrt(hi) + 1):
        tau[r * r - lo] -= 1
    return tau


def phi_range(sieve: FactorSieve) -> np.ndarray:
    """Euler phi(n) over the window via the product formula.

    Starts from phi = n and applies the factor (1 - 1/p) exactly, dividing
    before multiplying so all intermediates stay integral; the cofactor
    left after the base primes is a lone prime > sqrt(hi).
    """
    lo, hi, base = sieve.lo, sieve.hi, sieve.base_primes
    phi_arr = np.arange(lo, hi + 1, dtype=np.int64)
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    for p in base:
        p = int(p)
        sl = slice((-lo) % p, None, p)
        phi_arr[sl] //= p
        phi_arr[sl] *= p - 1
        pk = p
        while pk <= hi:
            rem[(-lo) % pk :: pk] //= p
            pk *= p
    big = rem > 1
    phi_arr[big] //= rem[big]
    phi_arr[big] *= rem[big] - 1
    return phi_arr


# ---------------------------------------------------------------------------
# scalar primality and factorization

# Deterministic Miller-Rabin witness set, complete for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 3.3e24."""
    n = int(n)
    if n < 0 or n >= _MR_LIMIT:
        raise DomainError(f"n={n} outside supported primality range [0, {_MR_LIMIT})")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_SMALL_PRIMES = [int(p) for p in primes_up_to(1000)]


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n, exact integer arithmetic."""
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _brent_rho(n: int) -> int:
    """Nontrivial factor of an odd composite n, deterministic constant sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"rho failed to split {n}")  # unreachable in practice


@dataclass(frozen=True)
class Factorization:
    """Certified factorization n = prod p**e with p ascending."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def tau(self) -> int:
        t = 1
        for _, e in self.factors:
            t *= e + 1
        return t

    @property
    def phi(self) -> int:
        v = self.n
        for p, _ in self.factors:
            v = v // p * (p - 1)
        return v

    def verify(self) -> bool:
        prod = 1
        for p, e in self.factors:
            if not is_prime(p):
                return False
            prod *= p**e
        return prod == self.n


def factorize(n: int) -> Factorization:
    """Full factorization of n >= 1; every prime is certified by is_prime.

    Trial division below 1000, then perfect-power detection and Brent's
    cycle method on what remains.  Deterministic.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    powers: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            powers[p] = powers.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            powers[m] = powers.get(m, 0) + 1
            continue
        split = None
        for k in (2, 3, 5, 7):
            r = _iroot(m, k)
            if r**k == m:
                split = [r] * k
                break
        if split is None:
            d = _brent_rho(m)
            split = [d, m // d]
        stack.extend(split)
    fac = Factorization(n=n, factors=tuple(sorted(powers.items())))
    if not fac.verify():
        raise RuntimeError(f"factorization of {n} failed certification")
    return fac


def omega(n: int) -> int:
    """Number of distinct prime factors (omega(1) = 0)."""
    return factorize(n).omega


def tau(n: int) -> int:
    """Number of divisors."""
    return factorize(n).tau


def phi(n: int) -> int:
    """Euler totient."""
    return factorize(n).phi
