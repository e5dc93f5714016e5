"""
Admissible linear-form systems and their prime-tuple census
===========================================================

Check admissibility of a system of forms a*n + b, compute the local
correction constant (the singular series), count the n that make every
form prime, and compare the count against both prediction shapes.
"""

from omegalab import (
    LinearFormSystem,
    count_prime_tuples,
    hl_compare,
    is_admissible,
    singular_series,
)

###############################################################################
# The twin configuration {n, n+2} is admissible: no prime covers every
# residue class.  {n, n+1} is not, since one of two consecutive integers
# is always even.

twins = LinearFormSystem.from_pairs([(1, 0), (1, 2)])
consec = LinearFormSystem.from_pairs([(1, 0), (1, 1)])
print("twins admissible:", is_admissible(twins).admissible)
bad = is_admissible(consec)
print("consecutive admissible:", bad.admissible, " witness prime:", bad.witness)

###############################################################################
# The singular series corrects the naive density for local obstructions.
# For twins it converges to twice the twin-prime constant, about 1.3203.

ss = singular_series(twins, truncation_prime=10**6)
print(f"twin correction constant: {ss.value:.10f} +/- {ss.error_bound:.1e}")

###############################################################################
# Count n <= 1e6 with n and n+2 both prime, and compare against the
# crude x/(log x)^K shape and its finite-x integral refinement.

count = count_prime_tuples(twins, 10**6)
print("twin pairs with smaller member counted by n <= 1e6:", count)

cmp = hl_compare(twins, 10**6)
print(f"crude prediction    {cmp.predicted_crude:10.1f}  ratio {cmp.ratio_crude:.4f}")
print(f"integral prediction {cmp.predicted_integral:10.1f}  ratio {cmp.ratio_integral:.4f}")
