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

"""Counts as exact polynomials in p, one per residue class of p."""

import math
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence

import sympy

from topotype import records
from topotype.consts import DEFAULT_FIT_PRIMES, FORMAT_PLAIN, FORMAT_JSON, FORMAT_CSV
from topotype.arith import RationalPolynomial, interpolate
from topotype.partitions import PartitionType, admissible_partitions
from topotype.counting import count_types_rank2

_logger = logging.getLogger(__name__)


class FitError(ValueError):
    pass


class InsufficientPrimesError(FitError):

    def __init__(self, message: str, residue_class: int, modulus: int):
        super().__init__(message)
        self.residue_class = residue_class
        self.modulus = modulus


class NotPolynomialError(FitError):
    pass


def default_modulus(partition: PartitionType) -> int:
    return reduce(math.gcd, partition.parts)


def default_degree(partition: PartitionType) -> int:
    return (partition.R - 3) + max(partition.n - 3, 0)


def usable_primes(partition: PartitionType, primes: Sequence[int]) -> List[int]:
    """Primes at which the count lies on the polynomial branch."""
    floor = max(3, partition.parts[0])
    result = sorted({p for p in primes if p > floor and partition.n <= p + 1})
    dropped = sorted(set(primes) - set(result))
    if dropped:
        _logger.debug(f"{partition}: primes {dropped} not used for fitting")
    return result


def factored(poly: RationalPolynomial) -> str:
    p = sympy.Symbol("p")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * p ** i
               for i, c in enumerate(poly.coeffs))
    return str(sympy.factor(expr)).replace("**", "^")


@dataclass(frozen=True)
class StratifiedPolynomial:
    """One polynomial per residue class of p modulo ``modulus``."""

    partition: PartitionType
    modulus: int
    branches: Dict[int, RationalPolynomial] = field(default_factory=dict)
    values: Dict[int, int] = field(default_factory=dict)

    def branch_for(self, p: int) -> RationalPolynomial:
        return self.branches[p % self.modulus]

    def __call__(self, p: int):
        return self.branch_for(p)(p)

    def is_uniform(self) -> bool:
        return len(set(self.branches.values())) == 1


def fit_partition_polynomial(partition: PartitionType,
                             degree_bound: Optional[int] = None,
                             modulus: Optional[int] = None,
                             primes: Optional[Sequence[int]] = None) -> StratifiedPolynomial:
    """Interpolate the rank-2 count of ``partition`` on each residue class.

    Each class is fitted on its first ``degree_bound + 1`` usable primes and
    checked at the remaining ones.
    """
    degree_bound = default_degree(partition) if degree_bound is None else degree_bound
    modulus = default_modulus(partition) if modulus is None else modulus
    if modulus < 1 or degree_bound < 0:
        raise ValueError(f"need modulus >= 1 and degree >= 0, got {modulus}, {degree_bound}")

    ps = usable_primes(partition, DEFAULT_FIT_PRIMES if primes is None else primes)
    values = {p: count_types_rank2(partition, p).T for p in ps}

    branches = {}
    for cls in range(modulus):
        if math.gcd(cls, modulus) != 1:
            continue
        in_class = [p for p in ps if p % modulus == cls]
        if len(in_class) < degree_bound + 2:
            raise InsufficientPrimesError(
                f"{partition}: class p = {cls} mod {modulus} has {len(in_class)} usable "
                f"primes, degree {degree_bound} needs {degree_bound + 2}", cls, modulus)

        fit, held_out = in_class[:degree_bound + 1], in_class[degree_bound + 1:]
        poly = interpolate([(p, values[p]) for p in fit])
        for p in held_out:
            if poly(p) != values[p]:
                raise NotPolynomialError(
                    f"{partition}: class p = {cls} mod {modulus} is not a polynomial of "
                    f"degree <= {degree_bound}; fit predicts {poly(p)} at p={p}, count is {values[p]}")
        branches[cls] = poly
        _logger.info(f"{partition}: p = {cls} mod {modulus}: {poly}")

    return StratifiedPolynomial(partition, modulus, branches, values)


@dataclass(frozen=True)
class TableRow:
    partition: PartitionType
    modulus: int
    residue_class: Optional[int]
    polynomial: Optional[RationalPolynomial]
    values: Dict[int, int]
    error: str = ""


def table_rows(R: int, primes: Optional[Sequence[int]] = None) -> List[TableRow]:
    """One row per admissible partition and residue branch.

    Partitions are those admissible for the largest sampled prime. A failed
    fit yields a single row holding the raw counts and the reason.
    """
    primes = sorted(DEFAULT_FIT_PRIMES if primes is None else primes)
    if not primes:
        raise ValueError("no primes to sample")
    if R < 3:
        raise ValueError(f"need R >= 3, got {R}")

    rows = []
    for partition in admissible_partitions(primes[-1], 2, R):
        try:
            fitted = fit_partition_polynomial(partition, primes=primes)
        except FitError as e:
            _logger.warning(str(e))
            values = {p: count_types_rank2(partition, p).T
                      for p in usable_primes(partition, primes)}
            rows.append(TableRow(partition, default_modulus(partition), None, None,
                                 values, str(e)))
            continue

        if fitted.is_uniform():
            poly = next(iter(fitted.branches.values()))
            rows.append(TableRow(partition, 1, 0, poly, fitted.values))
        else:
            for cls, poly in fitted.branches.items():
                values = {p: v for p, v in fitted.values.items() if p % fitted.modulus == cls}
                rows.append(TableRow(partition, fitted.modulus, cls, poly, values))
    return rows


def render_table(R: int, primes: Optional[Sequence[int]] = None,
                 fmt: str = FORMAT_PLAIN) -> str:
    rows = table_rows(R, primes)
    if fmt == FORMAT_JSON:
        return records.dumps_json([records.table_record(row) for row in rows])

    sampled = sorted({p for row in rows for p in row.values})
    header = ["partition", "modulus", "class", "polynomial"] + [f"p={p}" for p in sampled]
    body = []
    for row in rows:
        if row.polynomial is None:
            text = f"n/a ({row.error})" if fmt == FORMAT_PLAIN else ""
        else:
            text = factored(row.polynomial) if fmt == FORMAT_PLAIN else str(row.polynomial)
        body.append(
            [str(row.partition), row.modulus,
             "" if row.residue_class is None else row.residue_class, text]
            + [row.values.get(p, "") for p in sampled])

    if fmt == FORMAT_CSV:
        return records.format_csv(header, body)
    if fmt == FORMAT_PLAIN:
        return records.format_plain(header, body)
    raise ValueError(f"unknown format '{fmt}'")
