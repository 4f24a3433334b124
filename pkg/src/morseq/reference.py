"""Reference and coreference maps of a Morse sequence, and the critical complex.

Both maps are computed by a single scan of the item list.  The reference map
is filled in from left to right, the coreference map from right to left, and
every lookup during a scan must hit an entry that is already assigned.
"""

from __future__ import annotations

import random
from collections.abc import Mapping

from .complex import Chain, Simplex, codim1_faces
from .exceptions import InvalidSequence
from .homology import PresentedChainComplex
from .sequence import Expand, Fill, MorseSequence


class Frame(Mapping):
    """Association simplex -> set of critical simplices of the same dimension.

    Indexing returns a :class:`Chain`; calling the frame on a chain applies
    it linearly.
    """

    def __init__(self, table: dict):
        self._table = {s: frozenset(v) for s, v in table.items()}

    def raw(self, s: Simplex) -> frozenset:
        return self._table[tuple(s)]

    def __getitem__(self, s) -> Chain:
        s = tuple(s)
        return Chain(self._table[s], len(s) - 1)

    def __iter__(self):
        return iter(sorted(self._table, key=lambda f: (len(f), f)))

    def __len__(self):
        return len(self._table)

    def apply_set(self, simplices) -> frozenset:
        out: set = set()
        for s in simplices:
            out.symmetric_difference_update(self._table[s])
        return frozenset(out)

    def __call__(self, c) -> Chain:
        if not isinstance(c, Chain):
            c = Chain(c)
        return Chain(self.apply_set(c.members), c.dim)

    def __eq__(self, other):
        if isinstance(other, Frame):
            return self._table == other._table
        return NotImplemented

    __hash__ = None

    def to_json(self) -> dict:
        """Keys are space-joined vertex lists; values are sorted vertex lists."""
        return {" ".join(map(str, s)): [list(k) for k in sorted(self._table[s])] for s in self}


def _lookup(table, keys, what):
    out: set = set()
    for k in keys:
        try:
            out.symmetric_difference_update(table[k])
        except KeyError:
            raise InvalidSequence(f"{what} scan reached unassigned simplex {list(k)}") from None
    return out


def reference_map(seq: MorseSequence) -> Frame:
    table: dict = {}
    for it in seq.items:
        if isinstance(it, Fill):
            table[it.simplex] = {it.simplex}
        else:
            s, t = it.sigma, it.tau
            table[s] = _lookup(table, [f for f in codim1_faces(t) if f != s], "reference")
            table[t] = set()
    return Frame(table)


def coreference_map(seq: MorseSequence) -> Frame:
    K = seq.target
    table: dict = {}
    for it in reversed(seq.items):
        if isinstance(it, Fill):
            table[it.simplex] = {it.simplex}
        else:
            s, t = it.sigma, it.tau
            table[t] = _lookup(table, [g for g in K.cofaces(s) if g != t], "coreference")
            table[s] = set()
    return Frame(table)


class CriticalComplex:
    """The chain complex spanned by the critical simplices.

    ``boundary[k]`` is the reference map applied to the boundary of ``k``;
    ``coboundary[k]`` is the coreference map applied to its coboundary.
    """

    def __init__(self, seq: MorseSequence, boundary: dict, coboundary: dict):
        self.sequence = seq
        self.boundary = boundary
        self.coboundary = coboundary
        top = seq.target.dim
        bases = {p: list(seq.critical_of_dim(p)) for p in range(top + 1)}
        self._index = {p: {k: i for i, k in enumerate(b)} for p, b in bases.items()}
        cols = {}
        for p in range(1, top + 1):
            idx = self._index[p - 1]
            cols[p] = [sum(1 << idx[x] for x in boundary[k]) for k in bases[p]]
        self.presented = PresentedChainComplex(bases, cols)

    def basis(self, p: int) -> list:
        return self.presented.basis(p)

    def d(self, c: Chain) -> Chain:
        out: set = set()
        for k in c.members:
            out.symmetric_difference_update(self.boundary[k])
        return Chain(out, c.dim - 1)

    def delta(self, c: Chain) -> Chain:
        out: set = set()
        for k in c.members:
            out.symmetric_difference_update(self.coboundary[k])
        return Chain(out, c.dim + 1)

    def betti_numbers(self) -> list:
        return self.presented.betti_numbers()

    def cobetti_numbers(self) -> list:
        return self.presented.cobetti_numbers()

    def is_zero(self) -> bool:
        return not any(self.boundary.values()) and not any(self.coboundary.values())

    def to_json(self) -> dict:
        """Basis per degree plus boundary columns as lists of basis indices."""
        out = {}
        for p in range(self.sequence.target.dim + 1):
            basis = self.basis(p)
            idx = self._index[p - 1] if p > 0 else {}
            out[str(p)] = {
                "basis": [list(k) for k in basis],
                "boundary": [sorted(idx[x] for x in self.boundary[k]) for k in basis],
            }
        return out


def critical_complex(seq: MorseSequence, ref: Frame | None = None,
                     coref: Frame | None = None) -> CriticalComplex:
    ref = ref if ref is not None else reference_map(seq)
    coref = coref if coref is not None else coreference_map(seq)
    K = seq.target
    bd = {k: ref.apply_set(codim1_faces(k)) for k in seq.critical}
    cobd = {k: coref.apply_set(K.cofaces(k)) for k in seq.critical}
    return CriticalComplex(seq, bd, cobd)


def random_chain(rng: random.Random, pool) -> frozenset:
    return frozenset(s for s in pool if rng.random() < 0.5)


def chain_map_defect(seq: MorseSequence, ref: Frame | None = None, *, dual: bool = False,
                     n_random: int = 10, seed: int = 0) -> int:
    """Number of chains on which the reference map fails to commute with boundaries.

    Compares the critical boundary of ``ref(c)`` with ``ref`` of the boundary of
    ``c`` on every simplex and on ``n_random`` random chains per degree.  With
    ``dual=True`` the coreference map and coboundaries are used instead.
    """
    K = seq.target
    if ref is None:
        ref = coreference_map(seq) if dual else reference_map(seq)
    cc = critical_complex(seq, *((None, ref) if dual else (ref, None)))
    rng = random.Random(seed)
    bad = 0
    for p in range(K.dim + 1):
        pool = K.faces(p)
        tests = [frozenset([s]) for s in pool]
        tests += [random_chain(rng, pool) for _ in range(n_random)]
        for c in tests:
            if dual:
                lhs: set = set()
                for k in ref.apply_set(c):
                    lhs.symmetric_difference_update(cc.coboundary[k])
                cob: set = set()
                for s in c:
                    cob.symmetric_difference_update(K.cofaces(s))
                rhs = ref.apply_set(cob)
            else:
                lhs = set()
                for k in ref.apply_set(c):
                    lhs.symmetric_difference_update(cc.boundary[k])
                bd: set = set()
                for s in c:
                    bd.symmetric_difference_update(codim1_faces(s))
                rhs = ref.apply_set(bd)
            if frozenset(lhs) != rhs:
                bad += 1
    return bad


def duality_check(seq: MorseSequence, cc: CriticalComplex | None = None) -> bool:
    """sigma is in the critical boundary of tau iff tau is in the critical coboundary of sigma."""
    cc = cc or critical_complex(seq)
    for t in seq.critical:
        for s in seq.critical_of_dim(len(t) - 2):
            if (s in cc.boundary[t]) != (t in cc.coboundary[s]):
                return False
    return True


def squares_to_zero(cc: CriticalComplex) -> bool:
    for k, b in cc.boundary.items():
        acc: set = set()
        for x in b:
            acc.symmetric_difference_update(cc.boundary[x])
        if acc:
            return False
        acc = set()
        for x in cc.coboundary[k]:
            acc.symmetric_difference_update(cc.coboundary[x])
        if acc:
            return False
    return True
