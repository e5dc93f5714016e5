"""
Searching for a fully certified special index
=============================================

Find the smallest n0 such that (Q/k) n0 + 1 is prime for every k <= K
while the next block of shifted values keeps its distinct-prime-factor
counts under explicit thresholds -- then re-verify the witness from
scratch with nothing but scalar factorization.
"""

from omegalab import SearchSpec, decompose_tail, search_n0, verify_witness

###############################################################################
# A small fully-checkable configuration.  theta2 caps omega(Q n0 + k) for
# k in (K, L]; theta3 forces the first of those values to be composite
# enough that the structure is non-trivial.

spec = SearchSpec(K=2, Q=4, L=4, theta2=2, theta3=1, n_max=100)
witness = search_n0(spec)
print("found n0 =", witness.n0)
print("prime certificates (Q/k) n0 + 1:", list(witness.prime_certificates))
print("omega table for the next block:", dict(witness.omega_table))

###############################################################################
# The witness is re-validated by an independent checker that knows nothing
# about how the search was run: it re-proves primality and re-factorizes
# every table entry.

print("independent revalidation:", verify_witness(spec, witness))

###############################################################################
# When every (Q/k) n0 + 1 is prime, the first block of the shifted tail
# series collapses to an exact closed form; the decomposition object
# checks that identity with exact rationals.

dec = decompose_tail(2, 1, witness.n0, spec.K, spec.Q, spec.L)
print("first block S1 =", dec.S1, " closed form =", dec.identity_rhs,
      " identity holds:", dec.identity_holds)
print("tail enclosure:", f"[{float(dec.total_lo):.12f}, {float(dec.total_hi):.12f}]")
