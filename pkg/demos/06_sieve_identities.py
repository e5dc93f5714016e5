"""
Truncated inclusion-exclusion, product identities, and light means
==================================================================

Exercise the one-sided truncated Moebius sums, verify the exact
equality between a complete sieve's divisor sum and its Euler product,
bound the truncation error, and average lambda^omega(n).
"""

from fractions import Fraction

from omegalab import (
    PrimeInterval,
    brun_truncated_divisor_sum,
    complete_sieve_product,
    lambda_omega_mean,
    truncation_error_bound,
)

###############################################################################
# Truncating Moebius inclusion-exclusion at depth V gives an upper bound
# for even V and a lower bound for odd V.  For m = 30 (three prime
# factors) the depth-2 sum is 1 - 3 + 3 = 1 >= 0.

for V in range(4):
    s = brun_truncated_divisor_sum(30, V)
    side = "upper" if V % 2 == 0 else "lower"
    print(f"V={V}: truncated sum {s:3d}  ({side} bound for 0)")

###############################################################################
# A complete (untruncated) sieve over the primes in an interval satisfies
# an exact rational identity: the alternating divisor sum with weights
# K^omega(d)/phi-like denominators equals the Euler product.  Both sides
# are computed independently and compared exactly.

interval = PrimeInterval(lo=4, hi=30, excluded=frozenset({13}))
check = complete_sieve_product(K=2, interval=interval)
print("interval primes used:", check.n_primes)
print("Euler product :", check.product)
print("divisor sum   :", check.divisor_sum)
print("sides equal   :", check.sides_equal)

###############################################################################
# Truncating that sieve at depth V drops a single parity layer; the
# factorial-decay bound provably dominates the dropped mass.

tb = truncation_error_bound(K=2, interval=interval, V=2)
print(f"depth-2 truncation: bound {tb.bound} >= dropped {tb.dropped_mass}:",
      tb.dominates)

###############################################################################
# Averages of lambda^omega(n) run exactly when lambda is rational, with a
# float fallback that reports its own rounding budget.

exact = lambda_omega_mean(Fraction(1, 2), 10**4)
print("exact mean numerator at lambda=1/2, n<=1e4:", exact.value)
print("reference shape x (log x)^(lambda-1) ratio:", f"{exact.ratio:.4f}")
