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

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Tuple

import sympy

from topotype.arith import binomial


class GenusError(ValueError):
    pass


class AdmissibilityError(ValueError):
    """A partition type violates one of the admissibility restrictions.

    ``restriction`` is 1 (number of parts), 2 (exactly k parts, one of
    size 1) or 3 (largest part too big); 0 flags bad parameters.
    """

    def __init__(self, message: str, restriction: int = 0):
        super().__init__(message)
        self.restriction = restriction


@dataclass(frozen=True)
class PartitionType:
    """Multiset of positive parts kept in descending order."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts:
            raise ValueError("a partition type needs at least one part")
        if parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def R(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def multiplicity(self, size: int) -> int:
        return self.parts.count(size)

    @cached_property
    def multiplicities(self) -> dict:
        """{part size: m_i}, largest size first."""
        return dict(sorted(Counter(self.parts).items(), reverse=True))

    def __str__(self):
        items = []
        for size, m in self.multiplicities.items():
            items.append(str(size) if m == 1 else f"{size}^{m}")
        return ",".join(items)

    def as_list(self) -> str:
        return ",".join(str(x) for x in self.parts)

    @classmethod
    def parse(cls, text: str) -> "PartitionType":
        """Parse "2,2,1", "1^4", "2,1^3", "{2,1,1}" or "1^[4]"."""
        body = text.strip().strip("{}").replace(" ", "")
        if not body:
            raise ValueError("empty partition")
        parts = []
        for item in body.split(","):
            m = re.fullmatch(r"(\d+)(?:\^\[?(\d+)\]?)?", item)
            if not m:
                raise ValueError(f"cannot parse partition item '{item}' in '{text}'")
            size = int(m.group(1))
            count = int(m.group(2)) if m.group(2) else 1
            if size < 1 or count < 1:
                raise ValueError(f"parts and exponents must be positive in '{text}'")
            parts.extend([size] * count)
        return cls(tuple(parts))


@dataclass(frozen=True)
class ActionParams:
    p: int
    k: int
    R: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.k not in (1, 2):
            raise ValueError(f"rank k must be 1 or 2, got {self.k}")
        if self.R < 3:
            raise ValueError(f"a fully ramified action needs R >= 3, got {self.R}")


def genus_of(params: ActionParams) -> int:
    """Genus from the Riemann-Hurwitz relation for a fully ramified action."""
    p, k, R = params.p, params.k, params.R
    g = 1 + Fraction(R * p ** (k - 1) * (p - 1), 2) - p ** k
    if g.denominator != 1:
        raise GenusError(f"no Z_{p}^{k} action with R={R}: genus {g} is not an integer")
    g = int(g)
    if g <= 1:
        raise GenusError(f"no hyperbolic action for p={p}, k={k}, R={R}: genus {g}")
    if p > 2:
        assert (g - 1) % p ** (k - 1) == 0
    return g


def integer_partitions(R: int, max_part: int = None) -> Iterator[Tuple[int, ...]]:
    """All partitions of R as descending tuples, lexicographically descending."""
    if max_part is None:
        max_part = R
    if R == 0:
        yield ()
        return
    for first in range(min(R, max_part), 0, -1):
        for rest in integer_partitions(R - first, first):
            yield (first,) + rest


def subgroup_count(p: int, k: int) -> int:
    """Number of cyclic subgroups of order p in Z_p^k."""
    return (p ** k - 1) // (p - 1)


def check_admissible(partition: PartitionType, p: int, k: int) -> None:
    """Raise AdmissibilityError naming the first violated restriction."""
    n, R = partition.n, partition.R
    if k == 1:
        if n != 1:
            raise AdmissibilityError(
                f"restriction 1: a rank-1 action has the single part {{{R}}}, got {partition}", 1)
        return

    upper = subgroup_count(p, k)
    if not k <= n <= upper:
        raise AdmissibilityError(
            f"restriction 1: number of parts must be between {k} and {upper} "
            f"(the number of Z_{p} subgroups), got {n} in {partition}", 1)
    if n == k and partition.parts[-1] < 2:
        raise AdmissibilityError(
            f"restriction 2: with exactly {k} parts every part must have size >= 2, "
            f"got {partition}", 2)
    if partition.parts[0] > R - k:
        raise AdmissibilityError(
            f"restriction 3: the largest part may be at most R-k={R - k}, got {partition}", 3)


def is_admissible(partition: PartitionType, p: int, k: int) -> bool:
    try:
        check_admissible(partition, p, k)
    except AdmissibilityError:
        return False
    return True


def admissible_partitions(p: int, k: int, R: int) -> List[PartitionType]:
    """Admissible partition types, ordered by number of parts then parts."""
    if k == 1:
        return [PartitionType((R,))]

    result = [PartitionType(parts) for parts in integer_partitions(R)]
    result = [x for x in result if is_admissible(x, p, k)]
    result.sort(key=lambda x: (x.n, x.parts))
    return result


def marking_count(p: int, n: int) -> int:
    """Number of normalized markings of n parts by subgroups of Z_p^2."""
    if n > p + 1:
        raise AdmissibilityError(
            f"{n} parts but Z_{p}^2 has only {p + 1} subgroups of order {p}", 1)
    if n < 2:
        raise AdmissibilityError(f"a rank-2 partition type needs at least 2 parts, got {n}", 1)
    if n <= 3:
        return 1
    return binomial(p - 2, n - 3)
