"""Exact series enclosures and the S1/S2/S3 decomposition."""

import math
from fractions import Fraction

import pytest

import omegalab as ol
from omegalab.errors import DomainError


class TestPartialSum:
    def test_first_term_vanishes(self):
        assert ol.partial_sum(2, 1) == 0

    def test_hand_sums(self):
        assert ol.partial_sum(2, 6) == Fraction(1, 2)
        assert ol.partial_sum(2, 10) == Fraction(33, 64)

    def test_against_direct_fraction_loop(self):
        for t in (2, 3, 10):
            for N in (1, 5, 37, 200):
                direct = sum(Fraction(ol.omega(n), t**n) for n in range(1, N + 1))
                assert ol.partial_sum(t, N) == direct

    def test_lowest_terms(self):
        v = ol.partial_sum(2, 10)
        assert math.gcd(v.numerator, v.denominator) == 1
        assert v == Fraction(33, 64)

    def test_domain(self):
        with pytest.raises(DomainError):
            ol.partial_sum(1, 5)
        with pytest.raises(DomainError):
            ol.partial_sum(2, -1)


class TestTailBound:
    def test_positive_and_small(self):
        b = ol.tail_bound(2, 10)
        assert 0 < b < Fraction(1, 100)

    def test_majorises_sampled_tail_mass(self):
        # the bound at N must exceed the exact partial tail up to any M > N
        for t, N in ((2, 5), (2, 20), (3, 8)):
            bound = ol.tail_bound(t, N)
            M = N + 300
            true_piece = ol.partial_sum(t, M) - ol.partial_sum(t, N)
            assert true_piece < bound

    def test_decreasing_in_n(self):
        for t in (2, 3, 10):
            prev = None
            for N in range(2, 400):
                cur = ol.tail_bound(t, N)
                assert cur > 0
                if prev is not None:
                    assert cur < prev
                prev = cur

    def test_enclosure_example(self):
        enc = ol.alpha_enclosure(2, 10)
        assert enc.lo == Fraction(33, 64)
        assert Fraction(515, 1000) < enc.lo and enc.hi < Fraction(526, 1000)

    def test_nesting_consecutive(self):
        for t in (2, 3, 5):
            prev = ol.alpha_enclosure(t, 2)
            for N in range(3, 300):
                cur = ol.alpha_enclosure(t, N)
                assert cur.nested_in(prev)
                prev = cur

    def test_nesting_requires_n_at_least_two(self):
        with pytest.raises(DomainError):
            ol.tail_bound(2, 1)


class TestDecomposeTail:
    def test_reference_decomposition(self):
        dec = ol.decompose_tail(2, 1, 3, 2, 4, 4)
        assert dec.S1 == 1
        assert dec.S2 == Fraction(5, 16)
        assert dec.identity_applicable
        assert dec.identity_holds
        assert dec.identity_rhs == 1

    def test_identity_hand_value(self):
        # omega parts: 0/2 + 1/4 = 1/4; unit parts: 1/2 + 1/4 = 3/4
        assert Fraction(1, 4) + Fraction(3, 4) == 1

    def test_linearity_in_b(self):
        one = ol.decompose_tail(2, 1, 3, 2, 4, 4)
        two = ol.decompose_tail(2, 2, 3, 2, 4, 4)
        assert two.S1 == 2 * one.S1
        assert two.S2 == 2 * one.S2
        assert two.S3_truncated == 2 * one.S3_truncated
        assert two.S3_tail_hi == 2 * one.S3_tail_hi

    def test_components_match_direct_sum(self):
        for t, b, n0, K, Q, L, M in (
            (2, 1, 3, 2, 4, 4, 30),
            (3, 2, 1, 3, 36, 6, 40),
            (2, 1, 7, 1, 2, 5, 20),
        ):
            dec = ol.decompose_tail(t, b, n0, K, Q, L, M)
            N = n0 * Q
            direct = sum(Fraction(b * ol.omega(N + k), t**k) for k in range(1, M + 1))
            assert dec.S1 + dec.S2 + dec.S3_truncated == direct
            assert dec.S3_tail_hi > 0

    def test_tail_bound_covers_extension(self):
        dec = ol.decompose_tail(2, 1, 3, 2, 4, 4, M=20)
        ext = sum(
            Fraction(ol.omega(12 + k), 2**k) for k in range(21, 200)
        )
        assert ext < dec.S3_tail_hi

    def test_identity_on_search_witnesses(self):
        for spec in (
            ol.SearchSpec(K=2, Q=4, L=4, theta2=2, theta3=1, n_max=100),
            ol.SearchSpec(K=3, Q=36, L=6, theta2=4, theta3=0, n_max=200),
            ol.SearchSpec(K=1, Q=2, L=3, theta2=3, theta3=0, n_max=50),
        ):
            w = ol.search_n0(spec)
            dec = ol.decompose_tail(2, 1, w.n0, spec.K, spec.Q, spec.L)
            assert dec.identity_applicable
            assert dec.identity_holds

    def test_identity_not_applicable_without_primality(self):
        # n=2: 4*2+1 = 9 is composite, so the identity is not claimed
        dec = ol.decompose_tail(2, 1, 2, 2, 4, 4)
        assert not dec.identity_applicable
        assert dec.identity_holds is None

    def test_square_divisibility_enforced(self):
        with pytest.raises(DomainError):
            ol.decompose_tail(2, 1, 3, 2, 6, 4)

    def test_order_constraints(self):
        with pytest.raises(DomainError):
            ol.decompose_tail(2, 1, 3, 2, 4, 2)  # L <= K
        with pytest.raises(DomainError):
            ol.decompose_tail(2, 1, 3, 2, 4, 4, M=3)  # M < L


class TestIntegralityProbe:
    def test_probe_is_integer_valued(self):
        rep = ol.integrality_probe(1, 2, 2, 10)
        assert isinstance(rep["probe_integer"], int)
        # a t^N - b t^N partial = 2^10 - 2 * (33/64 * 2^10) = 1024 - 1056
        assert rep["probe_integer"] == 1024 - 2 * 528
        assert rep["window_hi"] > 0

    def test_consistency_flag(self):
        # alpha_2 is in (0.5156, 0.5198); a/b = 33/64 equals the partial sum
        # exactly, so the probe integer is 0, outside the open window
        rep = ol.integrality_probe(33, 64, 2, 10)
        assert rep["probe_integer"] == 0
        assert not rep["consistent"]

    def test_domain(self):
        with pytest.raises(DomainError):
            ol.integrality_probe(1, 0, 2, 10)
