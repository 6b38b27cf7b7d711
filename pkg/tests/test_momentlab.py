import pytest

from factmod import EllOutOfRange, Window
from factmod.momentlab import (
    Domain,
    cauchy_schwarz_floor_holds,
    count_I,
    count_J,
    histogram,
    moment_report,
    moment_S,
    moment_T,
)
from factmod.refcheck import oracle_I_full, oracle_J


def test_histograms(c5):
    add = histogram(c5, Window(0, 4), Domain.ADDITIVE)
    assert list(add.counts) == [0, 2, 1, 0, 1]
    mult = histogram(c5, Window(0, 4), "mult")
    assert list(mult.counts) == [2, 1, 1, 0]
    assert mult.total == add.total == 4


def test_count_examples(c3, c5):
    assert count_I(c5, Window(0, 4), 1) == 6
    assert count_I(c5, Window(0, 4), 2) == 70
    assert count_J(c3, Window(0, 2), 1) == 2
    assert count_J(c5, Window(0, 4), 1) == 6


def test_counts_against_literal_enumeration(c5, c7):
    # literal 2l-tuple loop, independent of the histogram path
    assert oracle_I_full(c5, Window(0, 4), 2) == 70
    assert count_I(c7, Window(0, 6), 2) == oracle_I_full(c7, Window(0, 6), 2)


def test_singleton_window(c7):
    for ell in (1, 2, 3):
        assert count_I(c7, Window(3, 1), ell) == 1
        assert count_J(c7, Window(3, 1), ell) == 1


def test_moment_examples(c3, c5):
    assert moment_T(c5, Window(0, 4), 1) == pytest.approx(24)
    assert moment_T(c5, Window(0, 4), 1) == pytest.approx(4 * count_I(c5, Window(0, 4), 1))
    # indices of residues [1, 2] are [0, 1]: spectrum [2, 0], so the moment is 4 = 2 * I_1
    assert moment_T(c3, Window(0, 2), 1) == pytest.approx(4)
    assert moment_T(c3, Window(0, 2), 1) == pytest.approx(2 * count_I(c3, Window(0, 2), 1))
    assert moment_S(c3, Window(0, 2), 1) == pytest.approx(6)
    assert moment_S(c5, Window(0, 4), 1) == pytest.approx(30)


@pytest.mark.parametrize("p", [11, 31, 101])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_parseval(ctx_factory, p, ell):
    ctx = ctx_factory(p)
    w = Window(2, p // 2)
    assert moment_T(ctx, w, ell) == pytest.approx((p - 1) * count_I(ctx, w, ell), rel=1e-9)
    assert moment_S(ctx, w, ell) == pytest.approx(p * count_J(ctx, w, ell), rel=1e-9)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_J_oracle(ctx_factory, p):
    ctx = ctx_factory(p)
    w = Window(0, p - 1)
    for ell in (1, 2):
        assert count_J(ctx, w, ell) == oracle_J(ctx, w, ell)


def test_ell_domain(c7):
    with pytest.raises(EllOutOfRange):
        count_I(c7, Window(0, 6), 0)
    with pytest.raises(EllOutOfRange):
        count_J(c7, Window(0, 6), 9)


def test_cauchy_schwarz(ctx_factory):
    for p in (7, 31, 101):
        ctx = ctx_factory(p)
        w = Window(0, p - 1)
        for ell in (1, 2, 3):
            assert cauchy_schwarz_floor_holds(count_I(ctx, w, ell), p, w.N, ell)
    assert not cauchy_schwarz_floor_holds(1, 5, 4, 1)


def test_moment_report(c5):
    rep = moment_report(c5, Window(0, 4), 2, "I")
    assert rep["count"] == "70"
    assert rep["ratio"] == pytest.approx(70 / 4 ** 3.25)
    assert moment_report(c5, Window(0, 4), 2, "T")["bound_rhs"] is None
