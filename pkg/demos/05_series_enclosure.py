"""
Exact rational enclosures for the distinct-factor power series
==============================================================

Evaluate partial sums of sum_n omega(n)/t^n in exact arithmetic, bound
the truncated tail rigorously, and run the integrality probe that turns
a hypothetical rational value into a contradiction window.
"""

from fractions import Fraction

from omegalab import alpha_enclosure, integrality_probe, partial_sum, tail_bound

###############################################################################
# Partial sums are exact rationals: at t = 2 the first ten terms already
# give 33/64.

for N in (6, 10, 20):
    print(f"partial_sum(2, {N:2d}) = {partial_sum(2, N)}")

###############################################################################
# The tail past N is bounded by a tangent-line majorant of omega(n), so
# each enclosure [partial, partial + tail] is rigorous, and enclosures
# nest as N grows.

prev = None
for N in (10, 20, 40, 80):
    enc = alpha_enclosure(2, N)
    nested = "" if prev is None else f"  nests in N={prev.N}: {enc.nested_in(prev)}"
    print(f"N={N:3d}  width {float(enc.width):.3e}{nested}")
    prev = enc

###############################################################################
# The integrality probe: if the full series at t summed to a/b, then
# b * t^N * (tail) would have to be the integer a t^N - b t^N partial --
# yet the tail bound squeezes it into an open interval.  When the probe
# integer falls outside that window, the hypothetical a/b is refuted.

probe = integrality_probe(1, 2, 2, 10)
print("claim alpha = 1/2:", probe)

# the true tail is positive, so a probe integer of zero or less is
# immediately inconsistent with the enclosure
print("probe window:", (0, float(probe["window_hi"])),
      " probe integer:", probe["probe_integer"],
      " consistent:", probe["consistent"])

###############################################################################
# Tail bounds shrink geometrically in N.

for N in (10, 50, 100):
    print(f"tail bound t=2 N={N:3d}: {float(tail_bound(2, N)):.3e}")
assert tail_bound(2, 10) == Fraction(23, 5632)
