from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings, strategies as st

from metaracah.errors import DegenerateParameters, PreconditionViolated
from metaracah.hyper import (
    HypSeries,
    hyp_sum,
    hyp_sum_reference,
    is_nonpositive_int,
    pochhammer,
    terminating_hyp,
    whipple_check,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
).filter(lambda q: not is_nonpositive_int(q))


def naive_pochhammer(a, n):
    # in-test oracle, written independently of the library routine
    out = Q(1)
    for k in range(n):
        out = out * (Q(a) + k)
    return out


def test_pochhammer_base_cases():
    assert pochhammer(Q(7, 3), 0) == 1
    assert pochhammer(Q(7, 3), 1) == Q(7, 3)
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3) == 0
    with pytest.raises(PreconditionViolated):
        pochhammer(Q(1, 2), -1)


@given(a=st.fractions(min_value=-8, max_value=8, max_denominator=10),
       n=st.integers(min_value=0, max_value=12))
def test_pochhammer_matches_naive(a, n):
    assert pochhammer(a, n) == naive_pochhammer(a, n)


@given(a=st.fractions(min_value=-8, max_value=8, max_denominator=10),
       m=st.integers(min_value=0, max_value=6),
       n=st.integers(min_value=0, max_value=6))
def test_pochhammer_splits(a, m, n):
    # (a)_{m+n} = (a)_m (a+m)_n
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(Q(a) + m, n)


def test_series_requires_termination():
    with pytest.raises(PreconditionViolated):
        HypSeries(upper=(Q(1, 2), Q(3, 2)), lower=(Q(5, 2),))


def test_series_rejects_lower_zero_in_range():
    # lower parameter -2 vanishes at k = 3 <= termination index 4
    with pytest.raises(DegenerateParameters):
        HypSeries(upper=(-4, Q(1, 2)), lower=(-2,))
    # but -6 is safely past the truncation at k = 4
    s = HypSeries(upper=(-4, Q(1, 2)), lower=(-6,))
    assert s.termination_index == 4


def test_termination_uses_smallest_cap():
    s = HypSeries(upper=(-7, -2, Q(1, 3)), lower=(Q(4, 5),))
    assert s.termination_index == 2


def two_loop_oracle(upper, lower, z):
    # completely separate evaluation: explicit factorials, no shared helpers
    total = Q(0)
    k = 0
    while True:
        if any(Q(u) + j == 0 for u in upper for j in range(k)):
            break
        term = Q(z) ** k
        for u in upper:
            for j in range(k):
                term *= Q(u) + j
        for l in lower:
            for j in range(k):
                term /= Q(l) + j
        for j in range(1, k + 1):
            term /= j
        total += term
        k += 1
        if k > 50:
            raise AssertionError("runaway series in oracle")
    return total


@given(
    n=st.integers(min_value=0, max_value=7),
    a=rationals, b=rationals, c=rationals,
)
@settings(max_examples=60, deadline=None)
def test_hyp_sum_against_naive_reference(n, a, b, c):
    s = HypSeries(upper=(-n, a, b), lower=(c, Q(17, 2)))
    assert hyp_sum(s) == hyp_sum_reference(s)


def test_hyp_sum_against_two_loop_oracle():
    for n in range(6):
        got = terminating_hyp((-n, Q(1, 3), Q(2, 5)), (Q(3, 7), Q(9, 2)))
        assert got == two_loop_oracle((-n, Q(1, 3), Q(2, 5)), (Q(3, 7), Q(9, 2)), 1)


@given(n=st.integers(min_value=0, max_value=10), b=rationals)
@settings(max_examples=60, deadline=None)
def test_chu_vandermonde(n, b):
    # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
    c = Q(19, 2)
    lhs = terminating_hyp((-n, b), (c,))
    assert lhs == pochhammer(c - b, n) / pochhammer(c, n)


def balanced_f(n, a, b, c, d, e):
    return 1 - n + a + b + c - d - e


def test_whipple_balanced_examples():
    a, b, c, d, e = Q(1, 2), Q(1, 3), Q(1, 5), Q(2, 3), Q(3, 4)
    for n in (0, 3):
        assert whipple_check(n, a, b, c, d, e, balanced_f(n, a, b, c, d, e))


def test_whipple_rejects_unbalanced():
    with pytest.raises(PreconditionViolated):
        whipple_check(2, Q(1, 2), Q(1, 3), Q(1, 5), Q(2, 3), Q(3, 4), Q(4, 5))


@given(
    n=st.integers(min_value=0, max_value=8),
    data=st.data(),
)
@settings(max_examples=80, deadline=None)
def test_whipple_random_balanced(n, data):
    a, b, c, d, e = (data.draw(rationals, label=s) for s in "abcde")
    f = balanced_f(n, a, b, c, d, e)
    try:
        ok = whipple_check(n, a, b, c, d, e, f)
    except DegenerateParameters:
        assume(False)
    assert ok


def test_argument_other_than_one():
    # 1F0(-n; ; z) = (1 - z)^n
    for n in range(6):
        assert terminating_hyp((-n,), (), Q(1, 2)) == (1 - Q(1, 2)) ** n
