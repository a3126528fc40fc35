"""Exact Pochhammer symbols and terminating hypergeometric sums.

Everything here is computed in exact rational arithmetic with
``fractions.Fraction``.  A terminating series

    pFq(u_1,...,u_p; l_1,...,l_q; z) = sum_{k=0}^K
        [prod_i (u_i)_k / prod_j (l_j)_k] * z^k / k!

requires at least one upper parameter to be a nonpositive integer; the
truncation order K is the smallest absolute value among those.  Lower
parameters must not kill a denominator inside the summation range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateParameters, PreconditionViolated

Q = Fraction


def is_nonpositive_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise PreconditionViolated(f"pochhammer index must be >= 0, got {n}")
    a = Q(a)
    out = Q(1)
    for k in range(n):
        out *= a + k
    return out


def multi_pochhammer(params: Iterable, n: int) -> Fraction:
    """Product of (a)_n over all a in params."""
    out = Q(1)
    for a in params:
        out *= pochhammer(a, n)
    return out


@dataclass(frozen=True)
class HypSeries:
    """A terminating hypergeometric sum with unit-normalized data.

    ``termination_index`` is derived on construction: the smallest |u| over
    nonpositive-integer upper parameters u.  Construction fails with
    DegenerateParameters if some lower parameter is a nonpositive integer
    >= -termination_index + 1, because then a denominator Pochhammer
    vanishes inside the summation range.
    """

    upper: tuple
    lower: tuple
    argument: Fraction = Q(1)
    termination_index: int = field(init=False)

    def __post_init__(self):
        upper = tuple(Q(u) for u in self.upper)
        lower = tuple(Q(l) for l in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "argument", Q(self.argument))
        caps = [-int(u) for u in upper if is_nonpositive_int(u)]
        if not caps:
            raise PreconditionViolated(
                "series does not terminate: no nonpositive-integer upper parameter"
            )
        k = min(caps)
        object.__setattr__(self, "termination_index", k)
        bad = [l for l in lower if is_nonpositive_int(l) and l >= -k + 1]
        if bad:
            raise DegenerateParameters(
                [f"lower parameter {l} vanishes within summation range 0..{k}" for l in bad]
            )


def hyp_sum(series: HypSeries) -> Fraction:
    """Evaluate a terminating sum by running-ratio updates.

    term_{k+1} = term_k * prod(u_i + k) / prod(l_j + k) * z / (k + 1).
    """
    total = Q(1)
    term = Q(1)
    for k in range(series.termination_index):
        num = Q(1)
        for u in series.upper:
            num *= u + k
        den = Q(k + 1)
        for l in series.lower:
            den *= l + k
        if den == 0:
            raise DegenerateParameters([f"lower Pochhammer vanishes at k={k + 1}"])
        term *= series.argument * num / den
        total += term
    return total


def hyp_sum_reference(series: HypSeries) -> Fraction:
    """Naive evaluation with full Pochhammer products per term.

    Slower than hyp_sum; kept as the independent oracle for it.
    """
    total = Q(0)
    for k in range(series.termination_index + 1):
        den = multi_pochhammer(series.lower, k) * pochhammer(1, k)
        if den == 0:
            raise DegenerateParameters([f"lower Pochhammer vanishes at k={k}"])
        total += multi_pochhammer(series.upper, k) * series.argument**k / den
    return total


def terminating_hyp(upper: Sequence, lower: Sequence, argument=1) -> Fraction:
    """Shorthand: build the HypSeries and evaluate it."""
    return hyp_sum(HypSeries(tuple(upper), tuple(lower), Q(argument)))


def whipple_check(n: int, a, b, c, d, e, f) -> bool:
    """Check the two-term transformation of a balanced terminating 4F3(1).

    Balance means 1 - n + a + b + c = d + e + f.  The transformation:

        4F3(-n, a, b, c; d, e, f; 1)
          = [(e-a)_n (f-a)_n / ((e)_n (f)_n)]
            * 4F3(-n, a, d-b, d-c; d, a+1-n-e, a+1-n-f; 1)

    Returns whether both sides agree exactly.
    """
    a, b, c, d, e, f = (Q(v) for v in (a, b, c, d, e, f))
    if 1 - n + a + b + c != d + e + f:
        raise PreconditionViolated(
            "balance 1 - n + a + b + c = d + e + f fails: "
            f"{1 - n + a + b + c} != {d + e + f}"
        )
    den = pochhammer(e, n) * pochhammer(f, n)
    if den == 0:
        raise DegenerateParameters([f"(e)_{n} (f)_{n} = 0 with e={e}, f={f}"])
    lhs = terminating_hyp((-n, a, b, c), (d, e, f))
    pref = pochhammer(e - a, n) * pochhammer(f - a, n) / den
    rhs = pref * terminating_hyp(
        (-n, a, d - b, d - c), (d, a + 1 - n - e, a + 1 - n - f)
    )
    return lhs == rhs
