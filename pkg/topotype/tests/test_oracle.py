import io
import itertools

import numpy as np
import pytest

from topotype import _kernels
from topotype.config import GuardSpec
from topotype.partitions import PartitionType, is_admissible
from topotype.counting import (
    count_types_rank1,
    count_types_rank2,
    count_types_klein,
    count_klein_partition,
)
from topotype.oracle import (
    GuardExceeded,
    FpVector,
    GeneratingColumnSet,
    check_guard,
    gl_group,
    group_order,
    enumerate_generating_sets,
    classify_partition,
    canonical_form,
    find_witness,
    count_orbits,
    count_marked_orbits,
    distribution_bruteforce,
    rank1_orbit_count,
    export_representatives,
)


def P(*parts):
    return PartitionType(parts)


def columns(*cols, p):
    return GeneratingColumnSet.from_columns(cols, p, validate=False)


class TestKernels:

    def test_codes(self):
        assert _kernels.encode((1, 2), 5, 2) == 7
        assert _kernels.decode(7, 5, 2) == (1, 2)
        assert _kernels.completing_code((7, 5), 5, 2) == _kernels.encode((3, 3), 5, 2)

    def test_projective(self):
        assert _kernels.projective_code(_kernels.encode((3, 1), 5, 2), 5, 2) == _kernels.encode((1, 2), 5, 2)
        assert _kernels.projective_code(_kernels.encode((0, 4), 5, 2), 5, 2) == _kernels.encode((0, 1), 5, 2)
        with pytest.raises(ValueError):
            _kernels.projective_code(0, 5, 2)

    def test_rank(self):
        e = lambda *v: _kernels.encode(v, 5, 2)
        assert _kernels.rank_mod_p([e(1, 2), e(2, 4), e(1, 0)], 5, 2) == 2
        assert _kernels.rank_mod_p([e(1, 2), e(2, 4), e(3, 1)], 5, 2) == 1
        assert _kernels.rank_mod_p([e(1, 2), e(2, 4)], 5, 2) == 1
        assert _kernels.inverse_mod(3, 7) == 5

    def test_compiled_flag(self):
        assert _kernels.COMPILED in (True, False)


class TestGroup:

    @pytest.mark.parametrize("p, k", [[2, 1], [2, 2], [3, 2], [5, 2], [5, 1]])
    def test_order(self, p, k):
        assert len(gl_group(p, k)) == group_order(p, k)

    def test_gl2_f7(self):
        assert group_order(7, 2) == 2016


class TestEnumerate:

    def test_rank1(self):
        sets = list(enumerate_generating_sets(3, 1, 4))
        assert [m.codes for m in sets] == [(1, 1, 2, 2)]

    def test_klein(self):
        sets = list(enumerate_generating_sets(2, 2, 3))
        assert len(sets) == 1
        assert {str(c) for c in sets[0].columns} == {"(1,0)", "(0,1)", "(1,1)"}

    def test_p3_unitary(self):
        sets = list(enumerate_generating_sets(3, 2, 3))
        assert len(sets) == 8
        assert {classify_partition(m) for m in sets} == {P(1, 1, 1)}

    def test_sorted_and_unique(self):
        sets = [m.codes for m in enumerate_generating_sets(3, 2, 5)]
        assert sets == sorted(set(sets))
        for m in enumerate_generating_sets(3, 2, 4):
            m.validate()

    @pytest.mark.parametrize("p, R", [[2, 6], [3, 3], [3, 4], [3, 5], [3, 6], [5, 4], [5, 5]])
    def test_all_admissible(self, p, R):
        for m in enumerate_generating_sets(p, 2, R):
            assert is_admissible(classify_partition(m), p, 2)


@pytest.mark.parametrize(
    "cols, expected",
    [
        [((1, 0), (0, 1), (1, 1)), (1, 1, 1)],
        [((1, 0), (2, 0), (0, 1), (0, 2)), (2, 2)],
        [((1, 1), (2, 2), (1, 2), (1, 0), (1, 0)), (2, 2, 1)],
    ],
)
def test_classify(cols, expected):
    assert classify_partition(columns(*cols, p=3)) == P(*expected)


def test_column_validation():
    with pytest.raises(ValueError, match="row sums"):
        GeneratingColumnSet.from_columns([(1, 0), (1, 0)], 3)
    with pytest.raises(ValueError, match="rank"):
        GeneratingColumnSet.from_columns([(1, 0), (2, 0)], 3)
    with pytest.raises(ValueError, match="nonzero"):
        FpVector((0, 3), 3)


class TestCanonical:

    def test_idempotent_with_witness(self):
        for m in itertools.islice(enumerate_generating_sets(5, 2, 4), 0, None, 37):
            c = canonical_form(m)
            assert canonical_form(c) == c
            assert c.codes <= m.codes
            g = find_witness(m, c)
            assert g is not None
            image = sorted(_kernels.encode(tuple(g @ np.array(v.coordinates) % 5), 5, 2)
                           for v in m.columns)
            assert tuple(image) == c.codes

    def test_no_witness_between_orbits(self):
        a = columns((1, 0), (4, 0), (0, 1), (0, 4), p=5)
        b = columns((2, 0), (4, 0), (0, 1), (4, 4), p=5)
        assert find_witness(a, b) is None


class TestCountOrbits:

    def test_klein(self):
        for R in range(3, 11):
            assert count_orbits(2, 2, R).total == count_types_klein(R)

    def test_klein_breakdown(self):
        table = count_orbits(2, 2, 8)
        for partition, count in table.counts.items():
            assert count == count_klein_partition(partition).T

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_rank1(self, p):
        for R in range(3, 11):
            assert rank1_orbit_count(p, R) == count_types_rank1(R, p).T

    def test_p5_R4_full_group(self):
        table = count_orbits(5, 2, 4)
        assert table.counts[P(2, 2)] == 1
        assert table.counts[P(2, 1, 1)] == 2
        assert table.solutions[P(2, 2)] == 60
        assert table.total == sum(table.counts.values())

    @pytest.mark.parametrize("p, R", [[3, 4], [3, 5], [3, 6], [5, 4], [5, 5], [5, 6]])
    def test_full_group_merges_only(self, p, R):
        full = count_orbits(p, 2, R)
        marked = count_marked_orbits(p, R)
        for partition, count in full.counts.items():
            assert count <= marked.counts[partition]

    @pytest.mark.parametrize("p, k, R", [[2, 2, 8], [3, 2, 5], [5, 2, 4], [7, 1, 6]])
    @pytest.mark.parametrize("workers", [2, 4])
    def test_workers_give_same_table(self, p, k, R, workers):
        single = count_orbits(p, k, R)
        threaded = count_orbits(p, k, R, workers=workers)
        assert threaded.counts == single.counts
        assert threaded.solutions == single.solutions
        assert threaded.representatives == single.representatives

    def test_workers_respect_guard(self):
        with pytest.raises(GuardExceeded):
            count_orbits(3, 2, 4, GuardSpec({"max_steps": 10}), workers=2)
        with pytest.raises(ValueError):
            count_orbits(3, 2, 4, workers=0)

    def test_export(self):
        table = count_orbits(2, 2, 6)
        buf = io.StringIO()
        assert export_representatives(table, buf) == 2
        lines = buf.getvalue().splitlines()
        assert len(lines) == 2
        for line in lines:
            cols = [tuple(int(x) for x in c.strip("()").split(",")) for c in line.split()]
            GeneratingColumnSet.from_columns(cols, 2)


class TestMarked:

    def test_p5_R4(self):
        table = count_marked_orbits(5, 4)
        assert table.counts == {P(2, 2): 2, P(2, 1, 1): 2, P(1, 1, 1, 1): 6}
        assert table.solutions == {P(2, 2): 4, P(2, 1, 1): 8, P(1, 1, 1, 1): 24}
        assert table.total == 10

    @pytest.mark.parametrize("p, R", [[3, 3], [3, 4], [3, 5], [3, 6],
                                      [5, 3], [5, 4], [5, 5], [5, 6],
                                      [7, 3], [7, 4], [7, 5]])
    def test_matches_formulas(self, p, R):
        table = count_marked_orbits(p, R)
        for partition, count in table.counts.items():
            assert count == count_types_rank2(partition, p).T, partition

    def test_even_prime(self):
        with pytest.raises(ValueError):
            count_marked_orbits(2, 4)


@pytest.mark.slow
def test_full_group_p7():
    full = count_orbits(7, 2, 5)
    marked = count_marked_orbits(7, 5)
    assert set(full.counts) <= set(marked.counts)
    for partition, count in full.counts.items():
        assert count <= marked.counts[partition]


class TestGuard:

    def test_p13(self):
        with pytest.raises(GuardExceeded) as e:
            check_guard(13, 2, 6)
        assert e.value.estimate > 10 ** 7

    def test_custom_guard(self):
        guard = GuardSpec({"max_multisets": 10})
        with pytest.raises(GuardExceeded, match="max_multisets=10"):
            list(enumerate_generating_sets(3, 2, 4, guard))
        guard = GuardSpec({"max_steps": 10})
        with pytest.raises(GuardExceeded, match="max_steps=10"):
            count_orbits(3, 2, 4, guard)


class TestDistribution:

    @pytest.mark.parametrize(
        "parts, weights, p, zero_first_column, expected",
        [
            [(3,), (1,), 3, False, (4, 3, 3)],
            [(1, 1), (1, 1), 5, True, (4, 3, 3, 3, 3)],
            [(2,), (1,), 5, True, (2, 2, 2, 2, 2)],
            [(2,), (3,), 5, True, (2, 2, 2, 2, 2)],
        ],
    )
    def test_examples(self, parts, weights, p, zero_first_column, expected):
        assert distribution_bruteforce(parts, weights, p, zero_first_column).counts == expected

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            distribution_bruteforce((1, 1, 1), (1, 1, 1), 5, guard=GuardSpec({"max_multisets": 100}))
