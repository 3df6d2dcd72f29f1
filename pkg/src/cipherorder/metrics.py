"""Real-valued security metrics with Schur-monotonicity contracts.

Guesswork, marginal guesswork, alpha-guesswork and variation distance to
uniformity are exact rationals; Shannon and Renyi entropy are floats (base-2)
with an absolute tolerance of 1e-12 for comparisons.  Near ties, callers can
fall back to the exact Renyi power sum (integer orders) or the mpmath
evaluation at configurable precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

import mpmath

_ZERO = Fraction(0)

ENTROPY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class MetricValue:
    """A named metric evaluation; exact Fraction where the formula is rational."""

    kind: str
    value: Union[Fraction, float]

    def __str__(self) -> str:
        if isinstance(self.value, Fraction):
            return f"{self.kind}\t{self.value}"
        return f"{self.kind}\t{self.value:.12g}"


def _coerce_prob(
    xs: Sequence, *, allow_unnormalized: bool = False
) -> list[Fraction]:
    out = []
    for v in xs:
        if isinstance(v, Fraction):
            f = v
        elif isinstance(v, (int, str, Rational)):
            f = Fraction(v)
        else:
            raise TypeError(f"expected exact rational entries, got {type(v).__name__}")
        if f < 0:
            raise ValueError(f"probabilities must be nonnegative, got {f}")
        out.append(f)
    total = sum(out, _ZERO)
    if allow_unnormalized:
        if not 0 < total <= 1:
            raise ValueError(f"sub-distribution mass must lie in (0, 1], got {total}")
    elif total != 1:
        raise ValueError(f"probability vector must sum to 1, got {total}")
    return out


def _desc(xs: list[Fraction]) -> list[Fraction]:
    return sorted(xs, reverse=True)


def _log2_int(n: int) -> float:
    if n.bit_length() <= 53:
        return math.log2(n)
    shift = n.bit_length() - 53
    return math.log2(n >> shift) + shift


def _log2_fraction(f: Fraction) -> float:
    return _log2_int(f.numerator) - _log2_int(f.denominator)


def shannon_entropy(x: Sequence) -> float:
    """Shannon entropy in bits, with 0*log(0) = 0."""
    xs = _coerce_prob(x)
    return -sum(float(f) * _log2_fraction(f) for f in xs if f > 0)


def renyi_entropy(x: Sequence, order) -> float:
    """Renyi entropy of the given order in bits (order > 0, order != 1)."""
    if order <= 0:
        raise ValueError(f"Renyi order must be positive, got {order}")
    if order == 1:
        raise ValueError("order 1 is Shannon entropy; call shannon_entropy")
    xs = _coerce_prob(x)
    if isinstance(order, Rational) and Fraction(order).denominator == 1:
        power = renyi_power_sum(x, int(order))
        return _log2_fraction(power) / (1 - int(order))
    total = sum(float(f) ** float(order) for f in xs if f > 0)
    return math.log2(total) / (1 - float(order))


def renyi_power_sum(x: Sequence, order: int) -> Fraction:
    """Exact sum of x_i^order for integer order; the Renyi entropy argument.

    Schur-convex for order > 1, so it decides entropy orderings near float
    ties without any tolerance.
    """
    if order < 1:
        raise ValueError("exact power sum needs integer order >= 1")
    xs = _coerce_prob(x)
    return sum((f ** order for f in xs if f > 0), _ZERO)


def shannon_entropy_mp(x: Sequence, dps: int = 60) -> mpmath.mpf:
    """Shannon entropy in bits at ``dps`` decimal digits, for tie-breaking."""
    xs = _coerce_prob(x)
    with mpmath.workdps(dps):
        ln2 = mpmath.log(2)
        total = mpmath.mpf(0)
        for f in xs:
            if f > 0:
                v = mpmath.mpf(f.numerator) / mpmath.mpf(f.denominator)
                total -= v * mpmath.log(v) / ln2
        return total


def guesswork(x: Sequence, *, allow_unnormalized: bool = False) -> Fraction:
    """Expected guesses under the optimal (decreasing-probability) order."""
    xs = _desc(_coerce_prob(x, allow_unnormalized=allow_unnormalized))
    return sum((Fraction(i) * f for i, f in enumerate(xs, start=1)), _ZERO)


def _check_alpha(alpha) -> Fraction:
    a = alpha if isinstance(alpha, Fraction) else Fraction(alpha)
    if not 0 < a <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {a}")
    return a


def marginal_guesswork(x: Sequence, alpha) -> int:
    """Fewest guesses whose cumulative success probability reaches alpha.

    The boundary is inclusive: a cumulative mass exactly equal to alpha
    counts (exact comparison, no tolerance).
    """
    a = _check_alpha(alpha)
    cum = _ZERO
    for i, f in enumerate(_desc(_coerce_prob(x)), start=1):
        cum += f
        if cum >= a:
            return i
    raise AssertionError("unreachable: probability vector sums to 1 >= alpha")


def alpha_guesswork(x: Sequence, alpha) -> Fraction:
    """Hybrid guessing cost w_a - w_a * sum_{i<=w_a} x_[i] + sum_{i<=w_a} i*x_[i]."""
    a = _check_alpha(alpha)
    xs = _desc(_coerce_prob(x))
    w = marginal_guesswork(xs, a)
    head = xs[:w]
    covered = sum(head, _ZERO)
    partial = sum((Fraction(i) * f for i, f in enumerate(head, start=1)), _ZERO)
    return Fraction(w) - w * covered + partial


def variation_to_uniform(x: Sequence) -> Fraction:
    """Variation distance to the uniform distribution on the same n points.

    Evaluated by the decreasing-rearrangement closed form with cutoff
    k = #{i : x_[i] >= 1/n} and cross-checked against the increasing-
    rearrangement form; the two always agree exactly.
    """
    xs = _coerce_prob(x)
    n = len(xs)
    share = Fraction(1, n)
    desc = _desc(xs)
    k = sum(1 for f in desc if f >= share)
    from_top = sum(desc[:k], _ZERO) - k * share
    asc = desc[::-1]
    q = sum(1 for f in asc if f <= share)
    from_bottom = q * share - sum(asc[:q], _ZERO)
    assert from_top == from_bottom
    return from_top
