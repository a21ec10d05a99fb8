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

ENV_GUARD_STEPS = "TOPOTYPE_GUARD_STEPS"

DEFAULT_MAX_MULTISETS = 10 ** 7
DEFAULT_MAX_STEPS = 10 ** 10

# Sampling primes for the polynomial fits; all exceed 3.
DEFAULT_FIT_PRIMES = (
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)

P3_CAVEAT = "validated-by-oracle-only"

FORMAT_PLAIN = "plain"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_PLAIN, FORMAT_JSON, FORMAT_CSV)

