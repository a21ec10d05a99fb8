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

"""Brute-force ground truth by exhaustive enumeration.

Generating column sets are handled as sorted tuples of column codes (see
:mod:`topotype._kernels`); the group GL_k(F_p) acts through a precomputed
image table ``img[g, code]``.
"""

import math
import logging
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, IO, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from topotype import _kernels
from topotype.arith import multichoose
from topotype.config import GuardSpec
from topotype.partitions import PartitionType, admissible_partitions
from topotype.residues import Distribution

_logger = logging.getLogger(__name__)


class GuardExceeded(RuntimeError):

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class FpVector:
    coordinates: Tuple[int, ...]
    p: int

    def __post_init__(self):
        coords = tuple(int(x) % self.p for x in self.coordinates)
        if not any(coords):
            raise ValueError("generating columns must be nonzero")
        object.__setattr__(self, "coordinates", coords)

    @property
    def code(self) -> int:
        return _kernels.encode(self.coordinates, self.p, len(self.coordinates))

    @classmethod
    def from_code(cls, code: int, p: int, k: int) -> "FpVector":
        return cls(_kernels.decode(code, p, k), p)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.coordinates) + ")"


@dataclass(frozen=True)
class GeneratingColumnSet:
    """A multiset of R nonzero columns, stored as sorted column codes."""

    p: int
    k: int
    codes: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(sorted(int(c) for c in self.codes)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], p: int,
                     validate: bool = True) -> "GeneratingColumnSet":
        k = len(columns[0])
        result = cls(p, k, tuple(FpVector(tuple(c), p).code for c in columns))
        if validate:
            result.validate()
        return result

    @property
    def R(self) -> int:
        return len(self.codes)

    @property
    def columns(self) -> Tuple[FpVector, ...]:
        return tuple(FpVector.from_code(c, self.p, self.k) for c in self.codes)

    def validate(self):
        if 0 in self.codes:
            raise ValueError("generating columns must be nonzero")
        if _kernels.completing_code(list(self.codes), self.p, self.k) != 0:
            raise ValueError(f"row sums of {self} are not all zero mod {self.p}")
        if _kernels.rank_mod_p(list(self.codes), self.p, self.k) != self.k:
            raise ValueError(f"{self} does not have rank {self.k}")

    def __str__(self):
        return " ".join(str(c) for c in self.columns)


@dataclass(frozen=True)
class OrbitTable:
    p: int
    k: int
    R: int
    counts: Dict[PartitionType, int] = field(default_factory=dict)
    solutions: Dict[PartitionType, int] = field(default_factory=dict)
    representatives: Tuple[GeneratingColumnSet, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.counts.values())


# --------------------------------------------------------------------------
# Feasibility guard

def estimate_multisets(p: int, k: int, R: int) -> int:
    return multichoose(R, p ** k - 1)


def group_order(p: int, k: int) -> int:
    return math.prod(p ** k - p ** i for i in range(k))


def check_guard(p: int, k: int, R: int, guard: Optional[GuardSpec] = None) -> None:
    guard = guard or GuardSpec()
    estimate = estimate_multisets(p, k, R)
    if estimate > guard.max_multisets:
        raise GuardExceeded(
            f"p={p}, k={k}, R={R}: about {estimate} multisets exceeds "
            f"max_multisets={guard.max_multisets}", estimate)
    steps = group_order(p, k) * estimate // p ** k
    if steps > guard.max_steps:
        raise GuardExceeded(
            f"p={p}, k={k}, R={R}: about {steps} steps exceeds "
            f"max_steps={guard.max_steps}", steps)


# --------------------------------------------------------------------------
# Group

@lru_cache(maxsize=None)
def gl_group(p: int, k: int) -> np.ndarray:
    """All invertible k x k matrices over F_p, shape (|G|, k, k)."""
    mats = []
    for entries in itertools.product(range(p), repeat=k * k):
        cols = [_kernels.encode(entries[j::k], p, k) for j in range(k)]
        if _kernels.rank_mod_p(cols, p, k) == k:
            mats.append(entries)
    result = np.array(mats, dtype=np.int64).reshape(-1, k, k)
    assert len(result) == group_order(p, k)
    return result


@lru_cache(maxsize=None)
def image_table(p: int, k: int) -> np.ndarray:
    """``img[g, code]`` is the code of ``G[g] @ column(code)``."""
    vectors = np.array([_kernels.decode(c, p, k) for c in range(p ** k)], dtype=np.int64)
    images = np.einsum("gij,cj->gci", gl_group(p, k), vectors) % p
    powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return images @ powers


def _sorted_images(m: GeneratingColumnSet) -> np.ndarray:
    return np.sort(image_table(m.p, m.k)[:, list(m.codes)], axis=1)


def canonical_form(m: GeneratingColumnSet) -> GeneratingColumnSet:
    """Lexicographically least sorted image of ``m`` over GL_k(F_p)."""
    images = _sorted_images(m)
    order = np.lexsort(images.T[::-1])
    return GeneratingColumnSet(m.p, m.k, tuple(images[order[0]].tolist()))


def find_witness(a: GeneratingColumnSet, b: GeneratingColumnSet) -> Optional[np.ndarray]:
    """A group element mapping ``a`` onto ``b``, or None."""
    if (a.p, a.k, a.R) != (b.p, b.k, b.R):
        return None
    target = np.array(b.codes)
    images = _sorted_images(a)
    hits = np.nonzero((images == target).all(axis=1))[0]
    if len(hits) == 0:
        return None
    return gl_group(a.p, a.k)[hits[0]]


# --------------------------------------------------------------------------
# Enumeration

def _generating_sets_from(p: int, k: int, R: int, first: int) -> Iterator[GeneratingColumnSet]:
    """Generating multisets whose least column code is ``first``, in lexicographic order."""
    for rest in itertools.combinations_with_replacement(range(first, p ** k), R - 2):
        head = (first,) + rest
        last = _kernels.completing_code(head, p, k)
        if last == 0 or last < head[-1]:
            continue
        codes = head + (last,)
        if _kernels.rank_mod_p(codes, p, k) < k:
            continue
        yield GeneratingColumnSet(p, k, codes)


def enumerate_generating_sets(p: int, k: int, R: int,
                              guard: Optional[GuardSpec] = None) -> Iterator[GeneratingColumnSet]:
    """Every generating column multiset exactly once, in lexicographic order."""
    check_guard(p, k, R, guard)
    for first in range(1, p ** k):
        yield from _generating_sets_from(p, k, R, first)


def classify_partition(m: GeneratingColumnSet) -> PartitionType:
    """Sizes of the groups of columns generating the same cyclic subgroup."""
    classes = Counter(_kernels.projective_code(c, m.p, m.k) for c in m.codes)
    return PartitionType(tuple(classes.values()))


def _canonical_chunk(p: int, k: int, R: int, first: int):
    """Orbit representatives among the multisets whose least column is ``first``."""
    counts = Counter()
    solutions = Counter()
    representatives = []
    for m in _generating_sets_from(p, k, R, first):
        ptype = classify_partition(m)
        solutions[ptype] += 1
        if canonical_form(m).codes == m.codes:
            counts[ptype] += 1
            representatives.append(m)
    return counts, solutions, representatives


def count_orbits(p: int, k: int, R: int, guard: Optional[GuardSpec] = None,
                 workers: int = 1) -> OrbitTable:
    """GL_k(F_p)-orbits of generating column multisets by partition type.

    With ``workers > 1`` the multisets are split by their least column and
    each range keeps the members that are least in their orbit; ranges are
    merged in order, so the table is the same for any worker count.
    """
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    seen = set()
    counts = Counter()
    solutions = Counter()
    representatives = []
    enumerated = 0
    _logger.debug(f"count_orbits(p={p}, k={k}, R={R}): compiled kernels={_kernels.COMPILED}")
    if workers > 1:
        check_guard(p, k, R, guard)
        # fill the shared lru caches before the threads read them
        image_table(p, k)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            chunks = executor.map(lambda first: _canonical_chunk(p, k, R, first),
                                  range(1, p ** k))
            for chunk_counts, chunk_solutions, chunk_reps in chunks:
                counts.update(chunk_counts)
                solutions.update(chunk_solutions)
                representatives.extend(chunk_reps)
        enumerated = sum(solutions.values())
    else:
        for m in enumerate_generating_sets(p, k, R, guard):
            enumerated += 1
            ptype = classify_partition(m)
            solutions[ptype] += 1
            if m.codes in seen:
                continue
            orbit = set(map(tuple, _sorted_images(m).tolist()))
            seen |= orbit
            # enumeration is lexicographic, so the first unseen member is least
            assert min(orbit) == m.codes
            counts[ptype] += 1
            representatives.append(m)

    _logger.info(f"count_orbits(p={p}, k={k}, R={R}, workers={workers}): "
                 f"{enumerated} multisets, {sum(counts.values())} orbits")
    return OrbitTable(p, k, R, dict(sorted(counts.items(), key=_partition_key)),
                      dict(sorted(solutions.items(), key=_partition_key)),
                      tuple(representatives))


def _partition_key(item):
    return item[0].n, item[0].parts


def rank1_orbit_count(p: int, R: int, guard: Optional[GuardSpec] = None) -> int:
    return count_orbits(p, 1, R, guard).total


# --------------------------------------------------------------------------
# Marked model

def marking_points(p: int, n: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Normalized markings of n parts by points of the projective line.

    The first three parts go to (1,0), (0,1), (1,1); the rest to (1,i) for
    an increasing choice of i in 2..p-1.
    """
    fixed = ((1, 0), (0, 1), (1, 1))[:n]
    for rest in itertools.combinations(range(2, p), max(n - 3, 0)):
        yield fixed + tuple((1, i) for i in rest)


def _blocks_by_sum(P: int, p: int) -> Dict[int, List[Tuple[int, ...]]]:
    result = {}
    for block in itertools.combinations_with_replacement(range(1, p), P):
        result.setdefault(sum(block) % p, []).append(block)
    return result


def _scaled(blocks, x: int, p: int):
    return tuple(tuple(sorted(x * c % p for c in b)) for b in blocks)


def _count_marked(parts: Sequence[int], points, p: int) -> Tuple[int, int]:
    by_sum = [_blocks_by_sum(P, p) for P in parts]
    seen = set()
    solutions = 0
    orbits = 0
    for sums in itertools.product(*(sorted(d) for d in by_sum)):
        row0 = sum(s * pt[0] for s, pt in zip(sums, points)) % p
        row1 = sum(s * pt[1] for s, pt in zip(sums, points)) % p
        if row0 or row1:
            continue
        for blocks in itertools.product(*(d[s] for d, s in zip(by_sum, sums))):
            solutions += 1
            if blocks in seen:
                continue
            orbits += 1
            seen.update(_scaled(blocks, x, p) for x in range(1, p))
    return solutions, orbits


def count_marked_orbits(p: int, R: int, guard: Optional[GuardSpec] = None) -> OrbitTable:
    """Orbits of the central scalars on block matrices, summed over the
    normalized markings of every admissible partition of R."""
    if p < 3:
        raise ValueError("the marked model needs an odd prime")
    check_guard(p, 2, R, guard)

    counts = {}
    solutions = {}
    for ptype in admissible_partitions(p, 2, R):
        counts[ptype] = 0
        solutions[ptype] = 0
        for points in marking_points(p, ptype.n):
            sols, orbs = _count_marked(ptype.parts, points, p)
            solutions[ptype] += sols
            counts[ptype] += orbs
        _logger.debug(f"marked {ptype} at p={p}: {solutions[ptype]} matrices, "
                      f"{counts[ptype]} orbits")

    return OrbitTable(p, 2, R, counts, solutions)


# --------------------------------------------------------------------------
# Weighted-sum distributions by brute force

def distribution_bruteforce(parts: Sequence[int], weights: Sequence[int], p: int,
                            zero_first_column: bool = False,
                            guard: Optional[GuardSpec] = None) -> Distribution:
    """Residue distribution by listing every matrix with the given row sums."""
    guard = guard or GuardSpec()
    start = 1 if zero_first_column else 0
    size = math.prod(multichoose(P, p - start) for P in parts)
    if size > guard.max_multisets:
        raise GuardExceeded(
            f"{size} matrices exceeds max_multisets={guard.max_multisets}", size)

    acc = np.zeros(1, dtype=np.int64)
    for P, w in zip(parts, weights):
        rows = np.array([w * sum(r) % p for r in
                         itertools.combinations_with_replacement(range(start, p), P)],
                        dtype=np.int64)
        acc = ((acc[:, None] + rows[None, :]) % p).ravel()
    return Distribution(tuple(np.bincount(acc, minlength=p).tolist()))


# --------------------------------------------------------------------------
# Export

def format_representative(m: GeneratingColumnSet) -> str:
    return str(m)


def export_representatives(table: OrbitTable, stream: IO[str]) -> int:
    """Write one orbit representative per line; returns the line count."""
    for m in table.representatives:
        stream.write(format_representative(m) + "\n")
    return len(table.representatives)
