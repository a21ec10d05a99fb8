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

"""Counting topological types of fully ramified Z_p^k actions.

Rank 2 counts go through |A|, the number of block matrices of nonzero
multiples with zero row sums for one normalized marking, then a Burnside
count over the central scalar subgroup, then the marking multiplier.
"""

import math
import logging
import operator
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from topotype.consts import P3_CAVEAT
from topotype.arith import (
    exact_div,
    multichoose,
    euler_phi,
    divisors_greater_than_one,
)
from topotype.partitions import (
    PartitionType,
    ActionParams,
    GenusError,
    AdmissibilityError,
    genus_of,
    check_admissible,
    admissible_partitions,
    marking_count,
    integer_partitions,
)
from topotype.residues import RowCounts, part_wz, block_wz

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CountReport:
    partition: PartitionType
    p: int
    k: int
    card_A: int
    burnside_terms: Tuple[Tuple[int, int], ...]
    marking_multiplier: int
    T: int
    genus: Optional[int] = None
    caveat: str = ""

    def __post_init__(self):
        assert self.T >= 0
        total = self.card_A + sum(c for _, c in self.burnside_terms)
        assert self.T == self.marking_multiplier * total // (self.p - 1)


@dataclass(frozen=True)
class RecursionState:
    u: int
    r: int
    s01: int
    s11: int

    def __post_init__(self):
        assert self.s01 >= 0 and self.s11 >= 0, self


@dataclass(frozen=True)
class TotalReport:
    p: int
    k: int
    R: int
    rows: Tuple[CountReport, ...] = field(default_factory=tuple)
    genus: Optional[int] = None

    @property
    def total(self) -> int:
        return sum(row.T for row in self.rows)


def _genus_or_none(p: int, k: int, R: int) -> Optional[int]:
    try:
        return genus_of(ActionParams(p, k, R))
    except (GenusError, ValueError) as e:
        _logger.debug(f"no genus for p={p}, k={k}, R={R}: {e}")
        return None


# --------------------------------------------------------------------------
# |A|

def card_A_base2(P1: int, P2: int, p: int) -> int:
    return part_wz(P1, p).W * part_wz(P2, p).W


def card_A_base3(P1: int, P2: int, P3: int, p: int) -> int:
    a, b, c = part_wz(P1, p), part_wz(P2, p), part_wz(P3, p)
    return a.W * b.W * c.W + (p - 1) * a.Z * b.Z * c.Z


def card_A_shortcut(parts: Sequence[int], p: int) -> Optional[int]:
    """|A| when at least two parts are not 0 or 1 mod p, else None."""
    if sum(1 for P in parts if P % p not in (0, 1)) < 2:
        return None
    B = RowCounts.of_parts(parts, p).b
    return exact_div(B, p * p, f"card_A shortcut for {tuple(parts)}, p={p}")


def card_A_trace(parts: Sequence[int], p: int) -> Tuple[int, List[RecursionState]]:
    """|A| by the pairwise recursion, taking ``parts`` in the given order.

    The last two (even count) or three (odd count) parts form the base;
    each step prepends the next pair of parts. Returns the result and the
    state entering each step.
    """
    parts = list(parts)
    n = len(parts)
    if n < 2:
        raise ValueError(f"|A| needs at least two parts, got {parts}")

    if n % 2 == 0:
        r = card_A_base2(parts[-2], parts[-1], p)
        tail = 2
    else:
        r = card_A_base3(parts[-3], parts[-2], parts[-1], p)
        tail = 3

    states = []
    u = 0
    while tail < n:
        block = block_wz(parts[n - tail:], p)
        state = RecursionState(
            u=u, r=r,
            s01=block.W - r,
            s11=(p - 1) * block.Z - block.W + r,
        )
        states.append(state)
        a = part_wz(parts[n - tail - 2], p)
        b = part_wz(parts[n - tail - 1], p)
        r = (a.W * b.W * r
             + (a.W * b.Z + a.Z * b.W) * state.s01
             + a.Z * b.Z * state.s11)
        _logger.debug(f"recursion step {state} -> r={r}")
        tail += 2
        u += 1

    return r, states


def card_A_recursive(parts: Sequence[int], p: int) -> int:
    return card_A_trace(parts, p)[0]


def card_A(partition: PartitionType, p: int) -> int:
    parts = partition.parts
    if partition.n < 2:
        raise ValueError(f"|A| needs at least two parts, got {partition}")
    if partition.n > p + 1:
        raise AdmissibilityError(
            f"{partition.n} parts but Z_{p}^2 has only {p + 1} subgroups of order {p}", 1)

    if partition.n == 2:
        return card_A_base2(*parts, p)
    if partition.n == 3:
        return card_A_base3(*parts, p)
    shortcut = card_A_shortcut(parts, p)
    if shortcut is not None:
        return shortcut
    return card_A_recursive(parts, p)


def card_A_unitary(n: int, p: int) -> int:
    """|A| for the all-ones partition with ``n`` parts."""
    if not 2 <= n <= p + 1:
        raise ValueError(f"need 2 <= n <= p+1, got n={n}, p={p}")

    if n % 2 == 0:
        value = 0
        for u in range(1, n // 2):
            Z = exact_div((p - 1) ** (2 * u) - 1, p)
            value = (p - 2) * Z - 1 + value
    else:
        value = p - 1
        for u in range(1, (n - 1) // 2):
            Z = exact_div((p - 1) ** (1 + 2 * u) + 1, p)
            value = (p - 2) * Z + 1 + value
    return value


# --------------------------------------------------------------------------
# Burnside

def burnside_terms(parts: Sequence[int], p: int) -> Tuple[Tuple[int, int], ...]:
    """Fixed-point contributions of the non-identity central elements,
    grouped by order d' > 1 dividing gcd(parts, p-1)."""
    d = reduce(math.gcd, parts, p - 1)
    terms = []
    for dd in divisors_greater_than_one(d):
        fixed = reduce(operator.mul,
                       (multichoose(P // dd, (p - 1) // dd) for P in parts), 1)
        terms.append((dd, euler_phi(dd) * fixed))
    return tuple(terms)


def _orbit_total(card: int, terms, p: int, multiplier: int, what: str) -> int:
    total = card + sum(c for _, c in terms)
    return multiplier * exact_div(total, p - 1, what)


def count_types_rank2(partition: PartitionType, p: int) -> CountReport:
    """Number of topological types of Z_p^2 actions of the given type."""
    if p < 3:
        raise ValueError("rank-2 counts at p=2 go through count_types_klein")
    check_admissible(partition, p, 2)

    multiplier = marking_count(p, partition.n)
    card = card_A(partition, p)
    terms = burnside_terms(partition.parts, p)
    T = _orbit_total(card, terms, p, multiplier,
                     f"Burnside average for {partition}, p={p}")

    caveat = ""
    if p == 3:
        caveat = P3_CAVEAT
        _logger.warning(f"count for {partition} at p=3 is {P3_CAVEAT}")

    report = CountReport(
        partition=partition, p=p, k=2, card_A=card, burnside_terms=terms,
        marking_multiplier=multiplier, T=T,
        genus=_genus_or_none(p, 2, partition.R), caveat=caveat)
    _logger.debug(f"count_types_rank2: {report}")
    return report


def count_types_rank1(R: int, p: int) -> CountReport:
    partition = PartitionType((R,))
    if R < 3:
        raise ValueError(f"need R >= 3, got {R}")

    if p == 2:
        card = 1 if R % 2 == 0 else 0
        return CountReport(
            partition=partition, p=p, k=1, card_A=card, burnside_terms=(),
            marking_multiplier=1, T=card, genus=_genus_or_none(p, 1, R))

    card = part_wz(R, p).W
    terms = burnside_terms((R,), p)
    T = _orbit_total(card, terms, p, 1, f"rank-1 Burnside average, R={R}, p={p}")
    return CountReport(
        partition=partition, p=p, k=1, card_A=card, burnside_terms=terms,
        marking_multiplier=1, T=T, genus=_genus_or_none(p, 1, R))


# --------------------------------------------------------------------------
# Klein four-group

def count_types_klein(R: int) -> int:
    """Partitions of R into three parts of equal parity or two even parts."""
    if R < 3:
        raise ValueError(f"need R >= 3, got {R}")
    count = 0
    for parts in integer_partitions(R):
        if len(parts) == 3 and len({x % 2 for x in parts}) == 1:
            count += 1
        elif len(parts) == 2 and parts[0] % 2 == 0 and parts[1] % 2 == 0:
            count += 1
    return count


def count_klein_partition(partition: PartitionType) -> CountReport:
    check_admissible(partition, 2, 2)
    # (W, Z) is (1, 0) for an even part and (0, 1) for an odd one
    parts = list(partition.parts) + [0] * (3 - partition.n)
    W = reduce(operator.mul, (1 - P % 2 for P in parts), 1)
    Z = reduce(operator.mul, (P % 2 for P in parts), 1)
    T = W + Z
    return CountReport(
        partition=partition, p=2, k=2, card_A=T, burnside_terms=(),
        marking_multiplier=1, T=T, genus=_genus_or_none(2, 2, partition.R))


# --------------------------------------------------------------------------
# Dispatch

def count_types(partition: PartitionType, p: int, k: int) -> CountReport:
    if k == 1:
        check_admissible(partition, p, 1)
        return count_types_rank1(partition.R, p)
    if k != 2:
        raise ValueError(f"counts exist for rank 1 and 2 only, got k={k}")
    if p == 2:
        return count_klein_partition(partition)
    return count_types_rank2(partition, p)


def total_types(p: int, k: int, R: int) -> TotalReport:
    ActionParams(p, k, R)
    rows = tuple(count_types(x, p, k) for x in admissible_partitions(p, k, R))
    report = TotalReport(p=p, k=k, R=R, rows=rows, genus=_genus_or_none(p, k, R))
    if p == 2 and k == 2:
        assert report.total == count_types_klein(R)
    _logger.info(f"total_types(p={p}, k={k}, R={R}) = {report.total} over {len(rows)} partitions")
    return report
