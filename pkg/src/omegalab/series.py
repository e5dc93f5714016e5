"""Exact rational interval arithmetic for alpha_t = sum_{n>=1} omega(n)/t^n.

partial_sum is an exact Fraction; tail_bound majorises the dropped tail
via omega(n) <= log2(n) and the tangent line of log2 at N+1, giving a
geometric-series closed form.  The bounds nest: the enclosure at N+1 is
contained in the enclosure at N.

decompose_tail splits b * sum_{k>=1} omega(N+k)/t^k at k = K and k = L
(N = n0 * Q) and, when every (Q/k) n0 + 1 is prime, checks the exact
additivity identity

    S1 = b * sum_{k<=K} omega(k)/t^k + b * sum_{k<=K} 1/t^k,

which holds because k^2 | Q forces gcd(k, (Q/k) n0 + 1) = 1, so
omega(n0 Q + k) = omega(k * ((Q/k) n0 + 1)) = omega(k) + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .sieve import build_factor_sieve, factorize, is_prime, omega_range

__all__ = [
    "SeriesEnclosure",
    "TailDecomposition",
    "alpha_enclosure",
    "integrality_probe",
    "partial_sum",
    "tail_bound",
]


def _validate_t(t: int) -> int:
    t = int(t)
    if t < 2:
        raise DomainError(f"base t must be an integer >= 2, got {t}")
    return t


def _omega_prefix(N: int) -> list[int]:
    """omega(n) for n = 1..N as plain ints."""
    if N < 1:
        return []
    sieve = build_factor_sieve(1, N)
    return [int(w) for w in omega_range(sieve)]


def partial_sum(t: int, N: int) -> Fraction:
    """Exact sum_{n=1}^{N} omega(n)/t^n as a reduced Fraction."""
    t = _validate_t(t)
    if N < 0:
        raise DomainError("N must be >= 0")
    num = 0
    for w in _omega_prefix(N):  # Horner: num = sum omega(n) t^(N-n)
        num = num * t + w
    return Fraction(num, t**N)


def tail_bound(t: int, N: int) -> Fraction:
    """Rational upper bound for sum_{n>N} omega(n)/t^n, exact arithmetic.

    Uses omega(n) <= log2(n) <= c + s*(n - N - 1) with c = bitlength(N+1)
    and s = 2/(N+1), a tangent-line majorant valid for all n > N; summing
    the two geometric pieces gives

        tail <= t^(-(N+1)) * ( c*t/(t-1) + s*t/(t-1)^2 ).

    Requires N >= 2.  Strictly positive, decreasing in N, and nesting:
    partial_sum(N+1) + tail_bound(N+1) stays inside the previous interval.
    """
    t = _validate_t(t)
    if N < 2:
        raise DomainError("tail_bound needs N >= 2")
    c = (N + 1).bit_length()
    s = Fraction(2, N + 1)
    geo = Fraction(c * t, t - 1) + s * Fraction(t, (t - 1) ** 2)
    return geo / t ** (N + 1)


@dataclass(frozen=True)
class SeriesEnclosure:
    """Certified interval partial <= alpha_t <= partial + tail_hi."""

    t: int
    N: int
    partial: Fraction
    tail_hi: Fraction

    @property
    def lo(self) -> Fraction:
        return self.partial

    @property
    def hi(self) -> Fraction:
        return self.partial + self.tail_hi

    @property
    def width(self) -> Fraction:
        return self.tail_hi

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def nested_in(self, other: "SeriesEnclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "N": self.N,
            "partial": str(self.partial),
            "tail_hi": str(self.tail_hi),
            "lo_decimal": float(self.lo),
            "hi_decimal": float(self.hi),
            "width_decimal": float(self.width),
        }


def alpha_enclosure(t: int, N: int) -> SeriesEnclosure:
    """Exact enclosure of alpha_t from the first N terms (N >= 2)."""
    return SeriesEnclosure(t=int(t), N=int(N), partial=partial_sum(t, N), tail_hi=tail_bound(t, N))


@dataclass(frozen=True)
class TailDecomposition:
    """b * sum_{k>=1} omega(N+k)/t^k split at K and L, truncated at M."""

    t: int
    b: int
    n0: int
    K: int
    Q: int
    L: int
    M: int
    N: int  # n0 * Q
    S1: Fraction  # k = 1..K
    S2: Fraction  # k = K+1..L
    S3_truncated: Fraction  # k = L+1..M
    S3_tail_hi: Fraction  # bound for k > M
    identity_applicable: bool  # all (Q/k) n0 + 1 prime
    identity_holds: bool | None
    identity_rhs: Fraction | None

    @property
    def total_lo(self) -> Fraction:
        return self.S1 + self.S2 + self.S3_truncated

    @property
    def total_hi(self) -> Fraction:
        return self.total_lo + self.S3_tail_hi

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "b": self.b,
            "n0": self.n0,
            "K": self.K,
            "Q": self.Q,
            "L": self.L,
            "M": self.M,
            "N": self.N,
            "S1": str(self.S1),
            "S2": str(self.S2),
            "S3_truncated": str(self.S3_truncated),
            "S3_tail_hi": str(self.S3_tail_hi),
            "total_lo_decimal": float(self.total_lo),
            "total_hi_decimal": float(self.total_hi),
            "identity_applicable": self.identity_applicable,
            "identity_holds": self.identity_holds,
            "identity_rhs": str(self.identity_rhs) if self.identity_rhs is not None else None,
        }


def _block_sum(t: int, N: int, b: int, lo_k: int, hi_k: int) -> Fraction:
    """b * sum_{k=lo_k}^{hi_k} omega(N+k)/t^k, omega via certified factorize."""
    num = 0
    for k in range(lo_k, hi_k + 1):  # Horner in t over the block
        num = num * t + factorize(N + k).omega
    return Fraction(b * num, t**hi_k)


def decompose_tail(
    t: int, b: int, n0: int, K: int, Q: int, L: int, M: int | None = None
) -> TailDecomposition:
    """Split b * sum_{k>=1} omega(n0 Q + k)/t^k at K and L, truncate at M.

    S1 covers the prime-certificate block k <= K, S2 the controlled block
    K < k <= L, S3 everything beyond L (computed exactly to M, bounded
    after that by the same tangent-line majorant as tail_bound).  When
    all K certificates are prime the additivity identity for S1 is
    checked exactly and reported.
    """
    t = _validate_t(t)
    if b < 1 or n0 < 1 or K < 1:
        raise DomainError("need b >= 1, n0 >= 1, K >= 1")
    if not K < L <= (M if M is not None else L + 32):
        raise DomainError(f"need K < L <= M, got K={K}, L={L}, M={M}")
    for k in range(1, K + 1):
        if Q % (k * k) != 0:
            raise DomainError(f"k^2 | Q fails at k={k} (Q={Q})")
    if M is None:
        M = L + 32
    N = n0 * Q

    S1 = _block_sum(t, N, b, 1, K)
    S2 = _block_sum(t, N, b, K + 1, L)
    S3_trunc = _block_sum(t, N, b, L + 1, M)

    # Tail k > M: omega(N+k) <= c + s*(k - M - 1) with the tangent at N+M+1.
    c = (N + M + 1).bit_length()
    s = Fraction(2, N + M + 1)
    geo = Fraction(c * t, t - 1) + s * Fraction(t, (t - 1) ** 2)
    S3_tail = Fraction(b, 1) * geo / t ** (M + 1)

    applicable = all(is_prime((Q // k) * n0 + 1) for k in range(1, K + 1))
    rhs = None
    holds = None
    if applicable:
        num = 0
        for k in range(1, K + 1):
            num = num * t + factorize(k).omega + 1
        rhs = Fraction(b * num, t**K)
        holds = rhs == S1
    return TailDecomposition(
        t=t,
        b=b,
        n0=n0,
        K=K,
        Q=Q,
        L=L,
        M=M,
        N=N,
        S1=S1,
        S2=S2,
        S3_truncated=S3_trunc,
        S3_tail_hi=S3_tail,
        identity_applicable=applicable,
        identity_holds=holds,
        identity_rhs=rhs,
    )


def integrality_probe(a: int, b: int, t: int, N: int) -> dict:
    """Exploration aid: if alpha_t were a/b, then b t^N (alpha - partial)
    would equal a t^N - b * (t^N partial_sum), an integer that must fall
    in the open window (0, b t^N tail_bound...] for the rational to
    survive.  Returns the integer and the window; no conclusion is drawn.
    """
    if b < 1:
        raise DomainError("b must be >= 1")
    t = _validate_t(t)
    ps = partial_sum(t, N)
    probe = a * t**N - b * (ps * t**N)
    if probe.denominator != 1:
        raise RuntimeError("t^N * partial_sum must be integral")
    window_hi = Fraction(b, 1) * tail_bound(t, N) * t**N
    return {
        "probe_integer": int(probe),
        "window_lo": Fraction(0),
        "window_hi": window_hi,
        "consistent": 0 < probe <= window_hi,
    }
