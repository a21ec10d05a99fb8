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

"""Residue distributions of weighted row sums.

A row of a part of size ``P`` is a multiset of ``P`` column indices drawn
from ``0..p-1`` (or from ``1..p-1`` when the first column is forced to zero).
The weighted sum of a row is ``w * (sum of indices) mod p``. The functions
here give the exact number of rows, and of stacked rows, in each residue
class.
"""

import logging
import operator
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Tuple

from topotype.arith import binomial, exact_div, gaussian_binomial

_logger = logging.getLogger(__name__)


def _check_odd_prime(p: int):
    if p < 3 or p % 2 == 0:
        raise ValueError(f"residue distributions need an odd prime, got p={p}")


@dataclass(frozen=True)
class RowCounts:
    """Number of rows with a fixed sum ``P``.

    ``e`` counts rows over all ``p`` columns, ``b`` rows with a zero first
    column. For several parts the fields hold the products over the parts.
    """

    e: int
    b: int

    @classmethod
    def of_part(cls, P: int, p: int) -> "RowCounts":
        return cls(e=binomial(P + p - 1, P), b=binomial(P + p - 2, P))

    @classmethod
    def of_parts(cls, parts: Sequence[int], p: int) -> "RowCounts":
        rows = [cls.of_part(P, p) for P in parts]
        return cls(
            e=reduce(operator.mul, (r.e for r in rows), 1),
            b=reduce(operator.mul, (r.b for r in rows), 1),
        )


@dataclass(frozen=True)
class PartWZ:
    """``W`` rows (or stacked rows) with weighted sum 0, ``Z`` in each
    nonzero residue class."""

    W: int
    Z: int

    def total(self, p: int) -> int:
        return self.W + (p - 1) * self.Z


@dataclass(frozen=True)
class Distribution:
    counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @property
    def p(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_uniform_off_zero(self) -> bool:
        return len(set(self.counts[1:])) <= 1

    def as_wz(self) -> PartWZ:
        assert self.is_uniform_off_zero(), self.counts
        return PartWZ(W=self.counts[0], Z=self.counts[1] if self.p > 1 else 0)


def part_wz(P: int, p: int) -> PartWZ:
    """Zero-first-column rows of a single part, split by residue."""
    _check_odd_prime(p)
    if P < 0:
        raise ValueError(f"part size must be nonnegative, got {P}")
    if P == 0:
        return PartWZ(1, 0)

    b = RowCounts.of_part(P, p).b
    what = f"part_wz(P={P}, p={p})"
    if P % p == 0:
        Z = exact_div(b - 1, p, what)
        result = PartWZ(Z + 1, Z)
    elif P % p == 1:
        Z = exact_div(b + 1, p, what)
        result = PartWZ(Z - 1, Z)
    else:
        Z = exact_div(b, p, what)
        result = PartWZ(Z, Z)

    assert result.total(p) == b
    return result


def block_wz(parts: Sequence[int], p: int) -> PartWZ:
    """Stacked zero-first-column rows of several parts, split by the
    residue of the total weighted sum."""
    _check_odd_prime(p)
    if not parts:
        raise ValueError("block_wz needs at least one part")

    B = RowCounts.of_parts(parts, p).b
    what = f"block_wz(parts={tuple(parts)}, p={p})"
    if any(P % p not in (0, 1) for P in parts):
        Z = exact_div(B, p, what)
        return PartWZ(Z, Z)

    t = sum(1 for P in parts if P % p == 1)
    sign = -1 if t % 2 else 1
    Z = exact_div(B - sign, p, what)
    return PartWZ(Z + sign, Z)


def _row_profile(P: int, weight: int, p: int, zero_first_column: bool) -> list:
    # Rows of sum P counted by residue of weight * (sum of column indices).
    if zero_first_column:
        gauss = gaussian_binomial(P, p - 2)
        shift = P
    else:
        gauss = gaussian_binomial(P, p - 1)
        shift = 0

    profile = [0] * p
    for l, c in enumerate(gauss.coeffs):
        profile[(weight * (l + shift)) % p] += c
    return profile


def _convolve(a: list, b: list, p: int) -> list:
    result = [0] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[(i + j) % p] += x * y
    return result


def full_distribution(parts: Sequence[int], weights: Sequence[int], p: int,
                      zero_first_column: bool = False) -> Distribution:
    """Exact residue distribution of the weighted sum over all matrices
    whose i-th row has sum ``parts[i]``."""
    _check_odd_prime(p)
    if len(weights) != len(parts):
        raise ValueError(
            f"{len(parts)} parts but {len(weights)} weights")
    for w in weights:
        if not 1 <= w <= p - 1:
            raise ValueError(f"weights must lie in 1..{p - 1}, got {w}")

    counts = [1] + [0] * (p - 1)
    for P, w in zip(parts, weights):
        counts = _convolve(counts, _row_profile(P, w, p, zero_first_column), p)

    result = Distribution(tuple(counts))
    rows = RowCounts.of_parts(parts, p)
    assert result.total == (rows.b if zero_first_column else rows.e)
    assert result.is_uniform_off_zero(), result.counts
    _logger.debug(f"full_distribution({tuple(parts)}, {tuple(weights)}, p={p}): {result.counts}")
    return result
