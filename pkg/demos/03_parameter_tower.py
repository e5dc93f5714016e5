"""
Scale-derived parameters and the family constant's certified floor
==================================================================

Derive the full parameter set (K, L, Q, ...) from a scale x, watch it
grow through astronomically spaced scales, and certify the lower bound
for the singular series of the derived form family.
"""

from omegalab import derive_params, exponent_optimum, family_singular_series, form_family

###############################################################################
# All parameters flow from iterated logarithms of the scale.  Strings like
# "1e100" are accepted so scales far beyond floats stay exact.

for x in ("1e6", "1e20", "1e100", "1e300"):
    ps = derive_params(x)
    print(f"x={x:>6}  K={ps.K:2d} L={ps.L:2d} Q={ps.Q:>12d} "
          f"g={ps.g} Q'={ps.Q_prime:>11d} K'={ps.K_prime}")

###############################################################################
# Q is the least K-smooth-exponent square package: k^2 divides Q for every
# k <= K, which the derived form family {(Q/k) n + 1 : k <= K} needs.

ps = derive_params("1e100")
family = ps.forms()
print("family size:", family.K, " largest coefficient:", family.forms[-1].a)

###############################################################################
# The family's singular series admits a piecewise certified floor: the
# small-prime piece is >= 1, the middle piece >= K^-K, the large piece
# >= e^-K, giving at least K^(-2K) overall.

for K in (2, 4, 8):
    fam = family_singular_series(K, truncation_prime=10**6)
    print(f"K={K}  value={fam.value:.6f}  certified floor={fam.certified_lower_bound():.3e}"
          f"  K^-2K={K ** (-2 * K):.3e}")

###############################################################################
# The exponent cost lambda + w*log(1/lambda) is minimized at lambda = w;
# the saving 1 - cost at w = 0.1 is exactly (9 - ln 10)/10.

lam, c0 = exponent_optimum(weight=0.1)
print(f"optimal lambda = {lam:.8f}   constant c0 = {c0:.10f}")
