"""Empirical prime-tuple counts against singular-series predictions, and
the search for the least n making every (Q/k) n + 1 prime while the
omega values just past the prime block stay controlled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, ResourceError
from .linforms import LinearFormSystem, SingularSeriesValue, singular_series
from .sieve import factorize, is_prime, prime_mask

__all__ = [
    "HLComparison",
    "SearchSpec",
    "SearchWitness",
    "count_prime_tuples",
    "hl_compare",
    "search_n0",
    "verify_witness",
]

_BUDGET_ENV_DEFAULT = 2_000_000_000


def count_prime_tuples(
    system: LinearFormSystem, n_max: int, memory_budget: int | None = None
) -> int:
    """#{1 <= n <= n_max : a_k n + b_k is prime for every k}.

    One boolean primality table up to the largest form value serves every
    form; returns 0 for n_max <= 0 without building anything.
    """
    if n_max <= 0:
        return 0
    top = max(f(n_max) for f in system.forms)
    budget = memory_budget if memory_budget is not None else _BUDGET_ENV_DEFAULT
    if top + 1 + 9 * n_max > budget:
        raise ResourceError(
            f"primality table up to {top} plus index arrays exceeds the "
            f"memory budget {budget} bytes"
        )
    mask = prime_mask(top)
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    acc = np.ones(n_max, dtype=bool)
    for f in system.forms:
        acc &= mask[f.a * ns + f.b]
    return int(np.count_nonzero(acc))


@dataclass(frozen=True)
class HLComparison:
    """Empirical count next to two truncated-singular-series predictions.

    predicted_crude uses S * x / (log x)^K; predicted_integral replaces
    x/(log x)^K by the integral of dt/(log t)^K from 2 to x, which is the
    fairer finite-x yardstick and is our refinement, not part of the
    asymptotic statement itself.  Ratios are None (flagged undefined)
    for n_max < 3.
    """

    system: LinearFormSystem
    n_max: int
    empirical: int
    singular_series: SingularSeriesValue
    predicted_crude: float | None
    predicted_integral: float | None
    ratio_crude: float | None
    ratio_integral: float | None

    def to_dict(self) -> dict:
        return {
            "system": [{"a": f.a, "b": f.b} for f in self.system.forms],
            "n_max": self.n_max,
            "empirical": self.empirical,
            "singular_series": self.singular_series.to_dict(),
            "predicted_crude": self.predicted_crude,
            "predicted_integral": self.predicted_integral,
            "ratio_crude": self.ratio_crude,
            "ratio_integral": self.ratio_integral,
            "note": "integral prediction is a finite-x refinement of x/(log x)^K",
        }


def hl_compare(
    system: LinearFormSystem,
    n_max: int,
    truncation_prime: int = 100_000,
    memory_budget: int | None = None,
) -> HLComparison:
    """Count prime tuples up to n_max and compare with S * x/(log x)^K.

    The singular series S is truncated at truncation_prime with its usual
    certified tail bound; see HLComparison for the two prediction styles.
    """
    ss = singular_series(system, truncation_prime)
    empirical = count_prime_tuples(system, n_max, memory_budget=memory_budget)
    K = system.K
    if n_max < 3:
        return HLComparison(system, n_max, empirical, ss, None, None, None, None)
    crude = ss.value * n_max / math.log(n_max) ** K
    integral_val, _ = quad(lambda t: 1.0 / math.log(t) ** K, 2.0, float(n_max), limit=200)
    integral = ss.value * integral_val
    return HLComparison(
        system=system,
        n_max=n_max,
        empirical=empirical,
        singular_series=ss,
        predicted_crude=crude,
        predicted_integral=integral,
        ratio_crude=empirical / crude if crude else None,
        ratio_integral=empirical / integral if integral else None,
    )


# ---------------------------------------------------------------------------
# search for the anchor index n0


@dataclass(frozen=True)
class SearchSpec:
    """Search parameters: find the least n <= n_max such that

      (1) (Q/k) n + 1 is prime for every k <= K,
      (2) omega(n Q + k) <= theta2 for every K < k <= L,
      (3) omega(n Q + K + 1) > theta3.

    Requires k^2 | Q for k <= K (so the scaled forms are integral) and
    L > K.  theta2/theta3 are free thresholds: at desk scale the loglog
    quantities they model are tiny, so pinned small integers stand in.
    """

    K: int
    Q: int
    L: int
    theta2: float  # omega ceiling for the controlled block
    theta3: float  # omega floor just past the prime block
    n_max: int

    def __post_init__(self) -> None:
        if self.K < 1 or self.L <= self.K:
            raise DomainError(f"need 1 <= K < L, got K={self.K}, L={self.L}")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if self.theta3 < 0:
            raise DomainError("theta3 must be nonnegative")
        for k in range(1, self.K + 1):
            if self.Q % (k * k) != 0:
                raise DomainError(f"k^2 | Q fails at k={k} (Q={self.Q})")

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "Q": self.Q,
            "L": self.L,
            "theta2": self.theta2,
            "theta3": self.theta3,
            "n_max": self.n_max,
        }


@dataclass(frozen=True)
class SearchWitness:
    """Everything needed to re-check a hit without re-searching."""

    n0: int
    prime_certificates: tuple[int, ...]  # (Q/k) n0 + 1 for k = 1..K
    omega_table: dict[int, int] = field(hash=False)  # k -> omega(n0 Q + k), K < k <= L
    omega_after_block: int = 0  # omega(n0 Q + K + 1)

    def to_dict(self) -> dict:
        return {
            "n0": self.n0,
            "prime_certificates": list(self.prime_certificates),
            "omega_table": {str(k): v for k, v in sorted(self.omega_table.items())},
            "omega_after_block": self.omega_after_block,
        }


def _check_candidate(spec: SearchSpec, n: int) -> SearchWitness | None:
    certs = []
    for k in range(spec.K, 0, -1):  # larger k first: smaller values fail fastest
        c = (spec.Q // k) * n + 1
        if not is_prime(c):
            return None
        certs.append(c)
    certs.reverse()
    table = {}
    for k in range(spec.K + 1, spec.L + 1):
        w = factorize(n * spec.Q + k).omega
        if w > spec.theta2:
            return None
        table[k] = w
    if table[spec.K + 1] <= spec.theta3:
        return None
    return SearchWitness(
        n0=n,
        prime_certificates=tuple(certs),
        omega_table=table,
        omega_after_block=table[spec.K + 1],
    )


def search_n0(
    spec: SearchSpec, threads: int | None = None, block: int = 1024
) -> SearchWitness | None:
    """Least n in [1, n_max] meeting all three conditions, or None.

    The scan is blockwise; with threads > 1 the blocks run concurrently
    but are consumed in index order, so the returned witness is the same
    for every thread count.
    """

    def scan(a: int, b: int) -> SearchWitness | None:
        for n in range(a, b):
            w = _check_candidate(spec, n)
            if w is not None:
                return w
        return None

    blocks = [(a, min(a + block, spec.n_max + 1)) for a in range(1, spec.n_max + 1, block)]
    nthreads = max(1, threads or 1)
    if nthreads == 1 or len(blocks) == 1:
        for a, b in blocks:
            w = scan(a, b)
            if w is not None:
                return w
        return None
    with ThreadPoolExecutor(max_workers=nthreads) as ex:
        futs = [ex.submit(scan, a, b) for a, b in blocks]
        hit = None
        for f in futs:
            if hit is None:
                hit = f.result()
            else:
                f.cancel()
        return hit


def verify_witness(spec: SearchSpec, witness: SearchWitness) -> bool:
    """Independent re-validation of a witness from scalar primitives only.

    Recomputes each certificate as (Q/k) n0 + 1, re-tests primality,
    re-derives every omega via factorize, and re-checks both thresholds.
    """
    n0 = witness.n0
    if not 1 <= n0 <= spec.n_max:
        return False
    if len(witness.prime_certificates) != spec.K:
        return False
    for k in range(1, spec.K + 1):
        c = witness.prime_certificates[k - 1]
        if c != (spec.Q // k) * n0 + 1 or not is_prime(c):
            return False
    expected_ks = set(range(spec.K + 1, spec.L + 1))
    if set(witness.omega_table) != expected_ks:
        return False
    for k in sorted(expected_ks):
        w = factorize(n0 * spec.Q + k).omega
        if w != witness.omega_table[k] or w > spec.theta2:
            return False
    w1 = witness.omega_table[spec.K + 1]
    return witness.omega_after_block == w1 and w1 > spec.theta3
