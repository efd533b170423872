import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wignerlimits.exact_core import (
    ContractViolation,
    DomainError,
    FactorialCache,
    HalfInt,
    SignedRadical,
    factorial,
    half,
    phase,
    radical_to_float,
)


class TestHalfInt:
    @pytest.mark.parametrize(
        "text, twice",
        [("3/2", 3), ("-1/2", -1), ("2", 4), ("1.5", 3), ("-7", -14), ("0", 0)],
    )
    def test_parse(self, text, twice):
        assert half(text).twice == twice

    @pytest.mark.parametrize("bad", ["1.4", "1/3", "abc", 0.3, Fraction(2, 3)])
    def test_rejects_non_half_integers(self, bad):
        with pytest.raises(DomainError):
            half(bad)

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            half(float("inf"))

    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    def test_closed_under_add_sub(self, x, y):
        a, b = HalfInt(x), HalfInt(y)
        assert (a + b).twice == x + y
        assert (a - b).twice == x - y
        assert (a + b).is_integer() == ((x + y) % 2 == 0)

    def test_mixed_arithmetic_and_ordering(self):
        assert half("1/2") + 1 == half("3/2")
        assert 2 * half("3/2") == 3
        assert 1 - half("1/2") == half("1/2")
        assert half("-1/2") < 0 < half("1/2")
        assert abs(half("-5/2")) == half("5/2")
        assert str(half("-5/2")) == "-5/2" and str(half(4)) == "4"

    def test_to_int(self):
        assert half(3).to_int() == 3
        with pytest.raises(ContractViolation):
            half("3/2").to_int()

    def test_phase(self):
        assert phase(half(0)) == 1
        assert phase(half(3)) == -1
        assert phase(half(-4)) == 1
        with pytest.raises(ContractViolation):
            phase(half("1/2"))


class TestFactorial:
    def test_examples(self):
        assert factorial(0) == 1
        assert factorial(5) == 120
        oracle = 1
        for k in range(1, 21):
            oracle *= k
        assert factorial(20) == oracle == 2432902008176640000

    def test_negative(self):
        with pytest.raises(DomainError):
            factorial(-1)

    def test_ratio_property(self):
        for n in range(1, 400):
            assert factorial(n) // factorial(n - 1) == n
            assert factorial(n) % factorial(n - 1) == 0
            assert factorial(n) > factorial(n - 1) or n == 1

    def test_halfint_argument(self):
        assert factorial(half(4)) == 24

    def test_cache_grows_consistently_under_threads(self):
        cache = FactorialCache(size=4)
        results = {}

        def work(n):
            results[n] = cache(n)

        threads = [threading.Thread(target=work, args=(n,)) for n in range(50, 2000, 37)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for n, v in results.items():
            assert v == math.factorial(n)
        assert cache(0) == 1


class TestSignedRadical:
    def test_invariants(self):
        with pytest.raises(ValueError):
            SignedRadical(0, Fraction(1))
        with pytest.raises(ValueError):
            SignedRadical(1, Fraction(0))
        with pytest.raises(ValueError):
            SignedRadical(1, Fraction(-1))
        assert SignedRadical(-1, Fraction(2, 3)).square() == Fraction(2, 3)

    def test_from_parts(self):
        x = SignedRadical.from_parts(Fraction(-2, 3), Fraction(3))
        assert x == SignedRadical(-1, Fraction(4, 3))

    @given(
        st.integers(1, 10**9),
        st.integers(1, 10**9),
        st.fractions(min_value=-100, max_value=100).filter(lambda r: r != 0),
    )
    def test_scale_by_rational(self, p, q, r):
        x = SignedRadical(1, Fraction(p, q))
        y = x.scale(r)
        assert y.sign == (1 if r > 0 else -1)
        assert y.radicand == Fraction(p, q) * r * r
        assert math.isclose(radical_to_float(y), float(r) * math.sqrt(p / q), rel_tol=1e-12)


class TestRadicalToFloat:
    def test_examples(self):
        assert radical_to_float(SignedRadical(1, Fraction(1, 4))) == 0.5
        assert radical_to_float(SignedRadical.zero()) == 0.0
        # integer-sqrt oracle at 64 guard bits
        oracle = -math.isqrt(2 << 128) / 2**64
        got = radical_to_float(SignedRadical(-1, Fraction(2)))
        assert got == oracle == -1.4142135623730951

    def test_guard_bits_precondition(self):
        with pytest.raises(ValueError):
            radical_to_float(SignedRadical(1, Fraction(2)), guard_bits=16)

    @settings(max_examples=300)
    @given(st.integers(1, 2**64), st.integers(1, 2**64))
    def test_square_matches_radicand(self, p, q):
        v = radical_to_float(SignedRadical(1, Fraction(p, q)))
        exact = Fraction(p, q)
        assert abs(Fraction(v) ** 2 - exact) <= exact * Fraction(1, 2**50)

    def test_tiny_and_huge_radicands_keep_precision(self):
        for k in (200, 1000):
            small = SignedRadical(1, Fraction(2, 10**k))
            big = SignedRadical(1, Fraction(2 * 10**k))
            assert math.isclose(radical_to_float(small), math.sqrt(2) * 10 ** (-k / 2), rel_tol=1e-15)
            if k == 200:
                assert math.isclose(radical_to_float(big), math.sqrt(2) * 10**100, rel_tol=1e-15)
