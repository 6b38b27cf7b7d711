import cmath
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factmod import NonInvertibleMultiplier, Window, WindowOutOfRange, build_context
from factmod.fieldcore import primes_in_range
from factmod.refcheck import oracle_D, oracle_G
from factmod.repcount import (
    count_G,
    discrepancy_D,
    exp_sum_product,
    max_F1,
    table_csv_rows,
    table_F,
    table_G,
    value_set_V,
)


def test_table_F_example(c5):
    t = table_F(c5, Window(0, 4), 2)
    assert t.values == (0, 5, 4, 2, 5)
    assert t.total == 16


def test_value_set_examples(c5, c7):
    assert value_set_V(c7, Window(0, 6), 1) == 4
    assert value_set_V(c7, Window(0, 6), 2) == 6
    assert value_set_V(c5, Window(0, 4), 2) == 4


def test_max_F1_examples(c5, c7):
    assert max_F1(c7, Window(0, 6)) == (1, 2)
    assert max_F1(c5, Window(0, 4)) == (1, 2)


def test_count_G_examples(c5):
    # these instances have l*N >= p, outside the default range
    assert count_G(c5, 1, 4, 2, allow_large=True) == 2
    assert count_G(c5, 4, 4, 2, allow_large=True) == 1
    with pytest.raises(WindowOutOfRange):
        count_G(c5, 1, 4, 2)
    assert count_G(c5, 0, 4, 2, allow_large=True) == 0


@pytest.mark.parametrize("p", [7, 11, 13, 31])
def test_table_G_against_compositions(ctx_factory, p):
    ctx = ctx_factory(p)
    for ell in (1, 2, 3):
        for N in range(ell, -(-p // ell)):
            t = table_G(ctx, N, ell)
            # every part is below p, so no product vanishes
            assert t.total == math.comb(N - 1, ell - 1)
            for a in range(1, p):
                assert t[a] == oracle_G(ctx, a, N, ell)


def test_discrepancy_example(c5):
    r = discrepancy_D(c5, 1, Window(0, 4), 1)
    assert r.D == Fraction(11, 20)
    assert (r.alpha, r.beta) == (Fraction(1, 5), Fraction(2, 5))
    assert oracle_D(c5, 1, Window(0, 4), 1) == Fraction(11, 20)


def test_discrepancy_singleton(c5):
    # a closed interval around the single point has full mass and length 0
    assert discrepancy_D(c5, 1, Window(0, 1), 1).D == 1
    assert oracle_D(c5, 1, Window(0, 1), 1) == 1


def test_discrepancy_rejects_zero(c5):
    with pytest.raises(NonInvertibleMultiplier):
        discrepancy_D(c5, 5, Window(0, 4), 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(primes_in_range(3, 60)), st.data())
def test_discrepancy_matches_oracle(p, data):
    ctx = build_context(p)
    a = data.draw(st.integers(1, p - 1))
    H = data.draw(st.integers(0, p - 2))
    N = data.draw(st.integers(1, p - 1 - H))
    ell = data.draw(st.integers(1, 2))
    assert discrepancy_D(ctx, a, Window(H, N), ell).D == oracle_D(ctx, a, Window(H, N), ell)


def test_exp_sum_examples(c5):
    w = Window(0, 4)
    e = lambda x: cmath.exp(2j * math.pi * x / 5)
    expect = 2 * e(1) + e(2) + e(4)
    got = exp_sum_product(c5, 1, w, 1)
    assert abs(got - expect) < 1e-12
    assert abs(got - (0.118 + 1.539j)) < 1e-3
    F2 = (0, 5, 4, 2, 5)
    assert abs(exp_sum_product(c5, 1, w, 2) - sum(F2[c] * e(c) for c in range(5))) < 1e-12
    assert exp_sum_product(c5, 0, w, 2) == 16


@pytest.mark.parametrize("p", [7, 13])
def test_exp_sum_direct(ctx_factory, p):
    ctx = ctx_factory(p)
    fact = [math.factorial(n) % p for n in range(1, p)]
    for a in range(1, p):
        direct = sum(cmath.exp(2j * math.pi * a * x * y / p) for x, y in product(fact, repeat=2))
        assert abs(exp_sum_product(ctx, a, Window(0, p - 1), 2) - direct) < 1e-9


def test_csv_rows(c5):
    rows = list(table_csv_rows(table_F(c5, Window(0, 4), 2)))
    assert rows[0] == ["p", "a", "F_ell"]
    assert rows[1:] == [[5, 1, "5"], [5, 2, "4"], [5, 3, "2"], [5, 4, "5"]]
