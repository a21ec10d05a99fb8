import itertools
import logging

import pytest

from topotype.consts import P3_CAVEAT
from topotype.partitions import PartitionType, AdmissibilityError, admissible_partitions
from topotype.counting import (
    card_A_base2,
    card_A_base3,
    card_A,
    card_A_shortcut,
    card_A_recursive,
    card_A_trace,
    card_A_unitary,
    count_types_rank2,
    count_types_rank1,
    count_types_klein,
    count_klein_partition,
    count_types,
    total_types,
)


def P(*parts):
    return PartitionType(parts)


PRIMES = [5, 7, 11, 13]


@pytest.mark.parametrize("P1, P2, p, expected", [[2, 2, 5, 4], [1, 1, 5, 0], [3, 2, 5, 8]])
def test_base2(P1, P2, p, expected):
    assert card_A_base2(P1, P2, p) == expected


@pytest.mark.parametrize(
    "P1, P2, P3, p, expected",
    [[1, 1, 1, 5, 4], [2, 1, 1, 5, 8], [2, 2, 2, 3, 3], [1, 1, 1, 3, 2]],
)
def test_base3(P1, P2, P3, p, expected):
    assert card_A_base3(P1, P2, P3, p) == expected


class TestCardA:

    @pytest.mark.parametrize("p", PRIMES)
    def test_worked_example(self, p):
        assert card_A(P(1, 1, 2, 2), p) * 4 == (p - 1) ** 4
        assert card_A_recursive((2, 2, 1, 1), p) * 4 == (p - 1) ** 4

    @pytest.mark.parametrize("p", PRIMES)
    def test_unitary_values(self, p):
        assert card_A(P(1, 1, 1, 1), p) == (p - 1) * (p - 3)
        assert card_A(P(1, 1, 1, 1, 1), p) == (p - 1) * (p ** 2 - 4 * p + 6)
        assert card_A(P(1, 1, 1, 1, 1, 1), p) == (p - 1) * (p ** 3 - 5 * p ** 2 + 10 * p - 10)

    @pytest.mark.parametrize("n, expected", [[2, 0], [3, 4], [4, 8], [5, 44], [6, 160]])
    def test_unitary_at_5(self, n, expected):
        assert card_A_unitary(n, 5) == expected

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_unitary_consistency(self, p):
        for n in range(2, min(p + 1, 9) + 1):
            assert card_A_unitary(n, p) == card_A(P(*[1] * n), p)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_order_independence(self, p):
        for R in range(3, 9):
            for partition in admissible_partitions(p, 2, R):
                values = {card_A_recursive(x, p)
                          for x in set(itertools.permutations(partition.parts))}
                assert values == {card_A(partition, p)}, partition

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_shortcut_consistency(self, p):
        checked = 0
        for R in range(3, 11):
            for partition in admissible_partitions(p, 2, R):
                shortcut = card_A_shortcut(partition.parts, p)
                if shortcut is None:
                    continue
                assert card_A_recursive(partition.parts, p) == shortcut
                checked += 1
        assert checked > 0

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_base_consistency(self, p):
        for R in range(3, 9):
            for partition in admissible_partitions(p, 2, R):
                if partition.n == 2:
                    assert card_A_recursive(partition.parts, p) == card_A_base2(*partition.parts, p)
                elif partition.n == 3:
                    assert card_A_recursive(partition.parts, p) == card_A_base3(*partition.parts, p)

    def test_trace(self):
        value, states = card_A_trace((2, 1, 1, 1, 1), 5)
        assert value == 104
        assert len(states) == 1
        assert (states[0].r, states[0].s01, states[0].s11) == (4, 8, 44)

    def test_too_few_parts(self):
        with pytest.raises(ValueError):
            card_A(P(4), 5)


class TestRank2:

    def test_audit_trail(self):
        report = count_types_rank2(P(2, 2), 5)
        assert report.card_A == 4
        assert report.burnside_terms == ((2, 4),)
        assert report.marking_multiplier == 1
        assert report.T == 2
        assert report.genus == 16
        assert report.caveat == ""

    @pytest.mark.parametrize(
        "parts, p, expected",
        [
            [(2, 2), 5, 2],
            [(3, 2), 7, 4],
            [(3, 3), 7, 12],
            [(3, 3), 5, 4],
            [(4, 2), 5, 5],
            [(4, 1, 1), 5, 7],
            [(2, 2, 2), 5, 12],
            [(4, 1, 1, 1, 1), 5, 273],
        ],
    )
    def test_values(self, parts, p, expected):
        assert count_types_rank2(P(*parts), p).T == expected

    @pytest.mark.parametrize("p", PRIMES)
    def test_worked_example(self, p):
        report = count_types_rank2(P(1, 1, 2, 2), p)
        assert report.T * 4 == (p - 2) * (p - 1) ** 3

    def test_inadmissible(self):
        with pytest.raises(AdmissibilityError) as e:
            count_types_rank2(P(4, 1), 5)
        assert e.value.restriction == 2

    def test_p3_caveat(self, caplog):
        with caplog.at_level(logging.WARNING):
            report = count_types_rank2(P(1, 1, 1), 3)
        assert report.T == 1
        assert report.caveat == P3_CAVEAT
        assert P3_CAVEAT in caplog.text

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_integral_and_nonnegative(self, p):
        for R in range(3, 10):
            for partition in admissible_partitions(p, 2, R):
                assert count_types_rank2(partition, p).T >= 0


class TestRank1:

    @pytest.mark.parametrize(
        "R, p, expected",
        [[4, 3, 1], [7, 2, 0], [6, 2, 1], [3, 7, 2], [3, 3, 1], [4, 5, 3]],
    )
    def test_values(self, R, p, expected):
        assert count_types_rank1(R, p).T == expected

    @pytest.mark.parametrize("R", range(3, 12))
    def test_p2(self, R):
        assert count_types_rank1(R, 2).T == (1 if R % 2 == 0 else 0)


class TestKlein:

    @pytest.mark.parametrize(
        "R, expected",
        [[3, 1], [4, 1], [5, 1], [6, 2], [7, 2], [8, 3], [9, 3], [10, 4]],
    )
    def test_values(self, R, expected):
        assert count_types_klein(R) == expected

    def test_breakdown(self):
        assert count_klein_partition(P(2, 2, 2)).T == 1
        assert count_klein_partition(P(3, 1, 1)).T == 1
        assert count_klein_partition(P(4, 2)).T == 1
        assert count_klein_partition(P(3, 2)).T == 0
        assert count_klein_partition(P(2, 1, 1)).T == 0

    @pytest.mark.parametrize("R", range(3, 11))
    def test_total(self, R):
        assert total_types(2, 2, R).total == count_types_klein(R)


class TestTotal:

    def test_p5_R4(self):
        report = total_types(5, 2, 4)
        assert [row.T for row in report.rows] == [2, 2, 6]
        assert report.total == 10
        assert report.genus == 16

    def test_klein(self):
        report = total_types(2, 2, 5)
        assert report.total == 1
        assert report.genus == 2

    def test_rank1(self):
        assert total_types(3, 1, 4).total == 1
        assert total_types(7, 1, 3).total == 2

    def test_dispatch(self):
        assert count_types(P(6), 2, 1).T == 1
        assert count_types(P(2, 2), 5, 2).T == 2
        assert count_types(P(4, 2), 2, 2).T == 1
        with pytest.raises(ValueError):
            count_types(P(2, 2, 2), 5, 3)
