"""Closed-form evaluators for the incidence and rich-transformation bounds.

Constants of proportionality are dropped, logarithms are base 2, and each log
argument is clamped below at 2 so every evaluator is total and positive.
Arithmetic runs in a 50-digit decimal context; the result is rounded towards
+infinity to 30 significant digits, so the returned value never undershoots
the exact formula by more than the 50-digit working error.
"""

from __future__ import annotations

from decimal import ROUND_CEILING, Context, Decimal, localcontext
from fractions import Fraction

WORK_PREC = 50
RESULT_DIGITS = 30

_Number = int | Fraction | Decimal | str


def _dec(x: _Number) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    return Decimal(x)


def _pow(x: Decimal, e: _Number) -> Decimal:
    if x == 1 or _dec(e) == 0:
        return Decimal(1)
    return (x.ln() * _dec(e)).exp()


def _log2(x: Decimal) -> Decimal:
    return x.ln() / Decimal(2).ln()


def _finish(value: Decimal) -> Decimal:
    return Context(prec=RESULT_DIGITS, rounding=ROUND_CEILING).plus(value)


def _check_mn(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")


def eval_bound_general(m: int, n: int, beta: _Number = Fraction(2, 11)) -> Decimal:
    """``m^(2/3) n^(2/3) + m^(6/11) n^(9/11) log^beta(m^3/n) + m + n``."""
    _check_mn(m, n)
    with localcontext(Context(prec=WORK_PREC)):
        M, N = Decimal(m), Decimal(n)
        arg = max(Decimal(2), M**3 / N)
        value = (
            _pow(M * N, Fraction(2, 3))
            + _pow(M, Fraction(6, 11)) * _pow(N, Fraction(9, 11)) * _pow(_log2(arg), beta)
            + M
            + N
        )
        return _finish(value)


def eval_bound_quadric(m: int, n: int) -> Decimal:
    """The general bound with the quadric exponent 2/11 on the logarithm."""
    return eval_bound_general(m, n, Fraction(2, 11))


def eval_bound_weak(m: int, n: int, kappa: _Number = 1) -> Decimal:
    """``m^(2/3) n^(2/3) + m + n^(3/2) log^kappa(n)``."""
    _check_mn(m, n)
    if _dec(kappa) < 0:
        raise ValueError("kappa must be nonnegative")
    with localcontext(Context(prec=WORK_PREC)):
        M, N = Decimal(m), Decimal(n)
        arg = max(Decimal(2), N)
        value = _pow(M * N, Fraction(2, 3)) + M + _pow(N, Fraction(3, 2)) * _pow(_log2(arg), kappa)
        return _finish(value)


def eval_bound_small_m(n: int, sum_pl_hl: int) -> Decimal:
    """``n + sum_l |P_l| |H_l|``, the regime of very few points."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _finish(Decimal(n) + Decimal(sum_pl_hl))


def eval_ngek_bound(n: int, k: int) -> Decimal:
    """``n^4/k^3 + n^6 log(k) / k^(11/2) + n^2/k`` for k-rich transformations of an n-set."""
    if n < 1 or k < 3:
        raise ValueError("need n >= 1 and k >= 3")
    with localcontext(Context(prec=WORK_PREC)):
        N, K = Decimal(n), Decimal(k)
        value = N**4 / K**3 + N**6 * _log2(K) / _pow(K, Fraction(11, 2)) + N**2 / K
        return _finish(value)
