# Copyright (c) 2025 topotype developers

# This library is free software: you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation version 3.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library.  If not, see <http://www.gnu.org/licenses/>.

"""Exact integer and rational arithmetic.

Everything here works on Python ints and :class:`fractions.Fraction`;
no floating point is used anywhere in the package.
"""

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import sympy

Rational = Union[int, Fraction]


class InvariantError(ArithmeticError):
    """A division that must be exact was not."""


class InterpolationError(ValueError):
    pass


def exact_div(a: int, b: int, what: str = "") -> int:
    q, r = divmod(a, b)
    if r:
        raise InvariantError(f"{what or 'division'}: {a} is not divisible by {b}")
    return q


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def multichoose(N: int, M: int) -> int:
    """Number of N-element multisets drawn from an M-element set."""
    return binomial(N + M - 1, N)


def euler_phi(d: int) -> int:
    return int(sympy.totient(d))


def divisors_greater_than_one(d: int) -> List[int]:
    return [int(x) for x in sympy.divisors(d) if x > 1]


# --------------------------------------------------------------------------
# Polynomials

def _strip(coeffs: Iterable[Rational]) -> Tuple[Fraction, ...]:
    result = [Fraction(c) for c in coeffs]
    while result and result[-1] == 0:
        result.pop()
    return tuple(result)


@dataclass(frozen=True)
class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``p**i``. The tuple never ends in a
    zero, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def variable(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Rational) -> "RationalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Rational) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (numbers.Integral, Fraction)):
            return RationalPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return RationalPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        result = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                result[i + j] += a * b
        return RationalPolynomial(tuple(result))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (numbers.Integral, Fraction)) or other == 0:
            return NotImplemented
        return RationalPolynomial(tuple(c / other for c in self.coeffs))

    def __pow__(self, exponent: int):
        if exponent < 0:
            return NotImplemented
        result = RationalPolynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "p" if i == 1 else f"p^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def interpolate(points: Sequence[Tuple[int, Rational]]) -> RationalPolynomial:
    """Lagrange interpolation through ``points`` with exact rationals.

    Returns the unique polynomial of degree less than ``len(points)``.
    """
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        dup = sorted({x for x in xs if xs.count(x) > 1})
        raise InterpolationError(f"duplicate abscissae: {dup}")

    p = RationalPolynomial.variable()
    result = RationalPolynomial()
    for i, (xi, yi) in enumerate(points):
        basis = RationalPolynomial.constant(1)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * (p - xj)
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)

    return result


# --------------------------------------------------------------------------
# Gaussian binomials

@lru_cache(maxsize=None)
def _qbinom_coeffs(m: int, n: int) -> Tuple[int, ...]:
    # [m+n, m]_q = [m+n-1, m-1]_q + q^m [m+n-1, m]_q
    if m == 0 or n == 0:
        return (1,)
    left = _qbinom_coeffs(m - 1, n)
    right = _qbinom_coeffs(m, n - 1)
    result = [0] * (m * n + 1)
    for l, c in enumerate(left):
        result[l] += c
    for l, c in enumerate(right):
        result[l + m] += c
    return tuple(result)


@dataclass(frozen=True)
class GaussianBinomial:
    """The Gaussian number [m+n, m]_q in polynomial form.

    ``coeffs[l]`` is the number of partitions of ``l`` into at most ``m``
    parts of size at most ``n``.
    """

    m: int
    n: int
    coeffs: Tuple[int, ...]

    def __call__(self, q: Rational) -> Rational:
        result = 0
        for c in reversed(self.coeffs):
            result = result * q + c
        return result

    def to_polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self.coeffs)


def gaussian_binomial(m: int, n: int) -> GaussianBinomial:
    if m < 0 or n < 0:
        raise ValueError(f"gaussian_binomial needs nonnegative arguments, got ({m}, {n})")
    return GaussianBinomial(m, n, _qbinom_coeffs(m, n))
