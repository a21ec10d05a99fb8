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

"""Per-multiset arithmetic over F_p^k for the oracle.

Written in Cython's pure Python mode: it runs as ordinary Python, and
``cythonize -i topotype/_kernels.py`` (or ``setup.py`` with
``TOPOTYPE_COMPILE=1``) builds it in place.

A column vector ``(v_0, ..., v_{k-1})`` is encoded as the integer
``v_0 * p**(k-1) + ... + v_{k-1}``; code 0 is the zero vector.
"""

import cython

COMPILED = cython.compiled


@cython.ccall
@cython.locals(code=cython.longlong, p=cython.longlong, k=cython.int, i=cython.int,
               j=cython.int)
def coordinate(code, p, k, i):
    for j in range(k - 1 - i):
        code //= p
    return code % p


@cython.ccall
@cython.locals(p=cython.longlong, k=cython.int, i=cython.int, code=cython.longlong)
def encode(coords, p, k):
    code = 0
    for i in range(k):
        code = code * p + (coords[i] % p)
    return code


def decode(code: int, p: int, k: int) -> tuple:
    return tuple(coordinate(code, p, k, i) for i in range(k))


@cython.ccall
@cython.locals(p=cython.longlong, k=cython.int, i=cython.int, code=cython.longlong,
               total=cython.longlong, result=cython.longlong)
def completing_code(codes, p, k):
    """Code of the column that makes every row sum zero."""
    result = 0
    for i in range(k):
        total = 0
        for code in codes:
            total += coordinate(code, p, k, i)
        result = result * p + (-total) % p
    return result


@cython.ccall
@cython.locals(a=cython.longlong, p=cython.longlong, t=cython.longlong,
               new_t=cython.longlong, r=cython.longlong, new_r=cython.longlong,
               q=cython.longlong)
def inverse_mod(a, p):
    t, new_t, r, new_r = 0, 1, p, a % p
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if r != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return t % p


@cython.ccall
@cython.locals(code=cython.longlong, p=cython.longlong, k=cython.int, i=cython.int,
               lead=cython.longlong, inv=cython.longlong, result=cython.longlong)
def projective_code(code, p, k):
    """Scale a nonzero column so its first nonzero coordinate is 1."""
    lead = 0
    for i in range(k):
        lead = coordinate(code, p, k, i)
        if lead:
            break
    if not lead:
        raise ValueError("the zero vector has no projective class")
    inv = inverse_mod(lead, p)
    result = 0
    for i in range(k):
        result = result * p + (coordinate(code, p, k, i) * inv) % p
    return result


@cython.ccall
@cython.locals(p=cython.longlong, k=cython.int, rank=cython.int, col=cython.int,
               row=cython.int, pivot=cython.int, inv=cython.longlong,
               factor=cython.longlong, i=cython.int)
def rank_mod_p(codes, p, k):
    """Rank over F_p of the k x len(codes) matrix with the given columns."""
    rows = [[coordinate(code, p, k, i) for code in codes] for i in range(k)]
    rank = 0
    for col in range(len(codes)):
        pivot = -1
        for row in range(rank, k):
            if rows[row][col] % p:
                pivot = row
                break
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = inverse_mod(rows[rank][col], p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for row in range(k):
            if row != rank and rows[row][col]:
                factor = rows[row][col]
                rows[row] = [(x - factor * y) % p for x, y in zip(rows[row], rows[rank])]
        rank += 1
        if rank == k:
            break
    return rank
