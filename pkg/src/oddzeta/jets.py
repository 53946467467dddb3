"""Truncated Taylor series (jets) for exact repeated differentiation.

The heat-kernel scalar components apply (-d/d cosh r)^n to products of
elementary functions of r.  Jets around the evaluation point deliver those
derivatives to rounding accuracy with no finite-difference step-size
tuning.  Coefficient lists are in powers of the local offset; all
arithmetic is plain float.
"""

from __future__ import annotations

import math
from typing import List, Sequence

Jet = List[float]


def j_const(value: float, order: int) -> Jet:
    out = [0.0] * (order + 1)
    out[0] = value
    return out


def j_var(point: float, order: int) -> Jet:
    out = [0.0] * (order + 1)
    out[0] = point
    if order >= 1:
        out[1] = 1.0
    return out


def j_mul(a: Sequence[float], b: Sequence[float]) -> Jet:
    order = min(len(a), len(b)) - 1
    out = [0.0] * (order + 1)
    for i in range(order + 1):
        ai = a[i]
        if ai == 0.0:
            continue
        for k in range(order + 1 - i):
            out[i + k] += ai * b[k]
    return out


def j_div(num: Sequence[float], den: Sequence[float]) -> Jet:
    """Series quotient; den[0] must be nonzero."""
    order = min(len(num), len(den)) - 1
    if den[0] == 0.0:
        raise ZeroDivisionError("jet division by zero constant term")
    out = [0.0] * (order + 1)
    for k in range(order + 1):
        acc = num[k]
        for i in range(1, k + 1):
            acc -= den[i] * out[k - i]
        out[k] = acc / den[0]
    return out


def j_deriv(a: Sequence[float]) -> Jet:
    """d/dr; shortens the jet by one order."""
    return [k * a[k] for k in range(1, len(a))]


def j_exp(a: Sequence[float]) -> Jet:
    order = len(a) - 1
    out = [0.0] * (order + 1)
    out[0] = math.exp(a[0])
    for k in range(1, order + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += i * a[i] * out[k - i]
        out[k] = acc / k
    return out


def j_sinh(a: Sequence[float]) -> Jet:
    plus = j_exp(a)
    minus = j_exp([-c for c in a])
    return [0.5 * (p - m) for p, m in zip(plus, minus)]


# --- plain power series in one variable (constant term at index 0) ----------

def series_mul(a: Sequence[float], b: Sequence[float], order: int) -> List[float]:
    out = [0.0] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0.0:
            continue
        for k in range(min(len(b), order + 1 - i)):
            out[i + k] += ai * b[k]
    return out


def series_inv(a: Sequence[float], order: int) -> List[float]:
    if a[0] == 0.0:
        raise ZeroDivisionError("series reciprocal needs nonzero constant term")
    out = [0.0] * (order + 1)
    out[0] = 1.0 / a[0]
    for k in range(1, order + 1):
        acc = 0.0
        for i in range(1, min(k, len(a) - 1) + 1):
            acc += a[i] * out[k - i]
        out[k] = -acc / a[0]
    return out


def series_compose(outer: Sequence[float], inner: Sequence[float],
                   order: int) -> List[float]:
    """outer(inner(v)) for inner with zero constant term."""
    if inner[0] != 0.0:
        raise ValueError("inner series must have zero constant term")
    result = [0.0] * (order + 1)
    power = [0.0] * (order + 1)
    power[0] = 1.0
    for k, coef in enumerate(outer[: order + 1]):
        if k > 0:
            power = series_mul(power, inner, order)
        if coef != 0.0:
            for i in range(order + 1):
                result[i] += coef * power[i]
    return result


def series_revert(a: Sequence[float], order: int) -> List[float]:
    """Compositional inverse of a series with a[0] = 0, a[1] != 0."""
    if a[0] != 0.0 or a[1] == 0.0:
        raise ValueError("reversion needs a[0] = 0 and a[1] != 0")
    b = [0.0] * (order + 1)
    if order >= 1:
        b[1] = 1.0 / a[1]
    for m in range(2, order + 1):
        comp = series_compose(a, b, m)
        b[m] = -comp[m] / a[1]
    return b


def series_derivative_at(coeffs: Sequence[float], n: int, v0: float) -> float:
    """n-th derivative at v0 of the series sum_k coeffs[k] v^k."""
    total = 0.0
    for k in range(n, len(coeffs)):
        factor = 1.0
        for i in range(k - n + 1, k + 1):
            factor *= i
        total += coeffs[k] * factor * v0 ** (k - n)
    return total
