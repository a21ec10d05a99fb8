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

"""Plain, CSV and JSON renderings of reports.

JSON records hold every number as a decimal string and every rational as
``"a/b"`` in lowest terms. :func:`dumps_json` is deterministic, so parsing
its output and dumping again reproduces the same text.
"""

import io
import csv
import json
from fractions import Fraction
from typing import Any, List, Sequence


def num(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return str(int(x))


def count_record(report) -> dict:
    return {
        "partition": report.partition.as_list(),
        "p": num(report.p),
        "k": num(report.k),
        "card_A": num(report.card_A),
        "burnside_terms": [[num(d), num(c)] for d, c in report.burnside_terms],
        "marking_multiplier": num(report.marking_multiplier),
        "T": num(report.T),
        "genus": None if report.genus is None else num(report.genus),
        "caveat": report.caveat,
    }


def total_record(report) -> dict:
    return {
        "p": num(report.p),
        "k": num(report.k),
        "R": num(report.R),
        "genus": None if report.genus is None else num(report.genus),
        "rows": [count_record(row) for row in report.rows],
        "total": num(report.total),
    }


def table_record(row) -> dict:
    return {
        "partition": row.partition.as_list(),
        "modulus": num(row.modulus),
        "class": None if row.residue_class is None else num(row.residue_class),
        "coefficients": None if row.polynomial is None else [num(c) for c in row.polynomial.coeffs],
        "values": {num(p): num(v) for p, v in sorted(row.values.items())},
        "error": row.error,
    }


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def format_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def format_plain(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Left-aligned columns separated by two spaces."""
    cells: List[List[str]] = [[str(x) for x in header]] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"
