"""GF(2) linear algebra on int bitsets.

A vector is a Python int; bit ``i`` is coordinate ``i``.  Pivots are taken
at the lowest set bit, so elimination order is deterministic.
"""

from __future__ import annotations


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def rank(vectors) -> int:
    pivots: dict = {}
    r = 0
    for v in vectors:
        while v:
            lb = low_bit(v)
            p = pivots.get(lb)
            if p is None:
                pivots[lb] = v
                r += 1
                break
            v ^= p
    return r


def transpose(columns, n_rows: int) -> list:
    rows = [0] * n_rows
    for j, col in enumerate(columns):
        while col:
            i = low_bit(col)
            rows[i] |= 1 << j
            col &= col - 1
    return rows


class Span:
    """Echelon form of a list of generators, tracking how each pivot row was built.

    ``solve(v)`` returns a bitmask over the generator indices whose sum is
    ``v``, or None when ``v`` lies outside the span.
    """

    def __init__(self, generators=()):
        self._pivots: dict = {}
        self._n = 0
        for g in generators:
            self.add(g)

    def add(self, v: int) -> bool:
        combo = 1 << self._n
        self._n += 1
        while v:
            lb = low_bit(v)
            hit = self._pivots.get(lb)
            if hit is None:
                self._pivots[lb] = (v, combo)
                return True
            v ^= hit[0]
            combo ^= hit[1]
        return False

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, v: int):
        combo = 0
        while v:
            hit = self._pivots.get(low_bit(v))
            if hit is None:
                return None
            v ^= hit[0]
            combo ^= hit[1]
        return combo

    def __contains__(self, v: int) -> bool:
        return self.solve(v) is not None


def kernel_basis(columns, n_cols: int | None = None) -> list:
    """Basis of the null space of the matrix with the given columns, as column-index masks."""
    if n_cols is None:
        n_cols = len(columns)
    pivots: dict = {}
    basis = []
    for j in range(n_cols):
        v = columns[j]
        combo = 1 << j
        while v:
            lb = low_bit(v)
            hit = pivots.get(lb)
            if hit is None:
                pivots[lb] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        if not v:
            basis.append(combo)
    return basis


def bits(v: int):
    while v:
        lb = v & -v
        yield lb.bit_length() - 1
        v ^= lb
