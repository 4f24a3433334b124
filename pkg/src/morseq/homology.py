"""Mod-2 homology and cohomology of finite chain complexes given by boundary matrices."""

from __future__ import annotations

from . import _gf2
from .complex import Chain, Complex, codim1_faces
from .exceptions import DegreeMismatch, NotAChainComplex


class PresentedChainComplex:
    """A chain complex over Z/2 given by an ordered basis and boundary matrix per degree.

    Parameters
    ----------
    bases : dict
        Degree -> list of hashable cell labels.  Degrees listed with an
        empty basis still count towards ``top``.
    boundaries : dict
        Degree ``p`` -> list of ints, one per basis element of degree ``p``;
        bit ``i`` of entry ``j`` is the coefficient of ``bases[p-1][i]`` in
        the boundary of ``bases[p][j]``.  Missing degrees are zero maps.
    """

    def __init__(self, bases: dict, boundaries: dict | None = None):
        self.bases = {p: list(b) for p, b in bases.items()}
        boundaries = boundaries or {}
        self.boundaries = {}
        for p, basis in self.bases.items():
            cols = list(boundaries.get(p, [0] * len(basis)))
            if len(cols) != len(basis):
                raise NotAChainComplex(f"degree {p}: {len(cols)} columns for {len(basis)} cells")
            width = len(self.bases.get(p - 1, ()))
            if any(c >> width for c in cols):
                raise NotAChainComplex(f"degree {p}: boundary refers to missing cells of degree {p - 1}")
            self.boundaries[p] = cols
        self._index = {p: {lab: i for i, lab in enumerate(b)} for p, b in self.bases.items()}
        self._ranks: dict = {}
        self._coranks: dict = {}
        self._checked = False

    @property
    def top(self) -> int:
        return max(self.bases) if self.bases else -1

    def basis(self, p: int) -> list:
        return self.bases.get(p, [])

    def columns(self, p: int) -> list:
        return self.boundaries.get(p, [])

    def check(self) -> None:
        """Raise NotAChainComplex unless every composite d_p d_{p+1} vanishes."""
        if self._checked:
            return
        for p, cols in self.boundaries.items():
            lower = self.columns(p - 1)
            for j, col in enumerate(cols):
                acc = 0
                for i in _gf2.bits(col):
                    acc ^= lower[i]
                if acc:
                    raise NotAChainComplex(
                        f"d_{p - 1} o d_{p} is nonzero on {self.bases[p][j]!r}")
        self._checked = True

    def rank(self, p: int) -> int:
        if p not in self._ranks:
            self._ranks[p] = _gf2.rank(self.columns(p))
        return self._ranks[p]

    def corank(self, p: int) -> int:
        """Rank of the coboundary d^{p-1}: C^{p-1} -> C^p, eliminated on the transposed matrix."""
        if p not in self._coranks:
            rows = _gf2.transpose(self.columns(p), len(self.basis(p - 1)))
            self._coranks[p] = _gf2.rank(rows)
        return self._coranks[p]

    def to_vector(self, c, p: int) -> int:
        idx = self._index.get(p, {})
        v = 0
        for lab in c:
            try:
                v ^= 1 << idx[lab]
            except KeyError:
                raise DegreeMismatch(f"{lab!r} is not a cell of degree {p}") from None
        return v

    def to_labels(self, v: int, p: int) -> list:
        basis = self.basis(p)
        return [basis[i] for i in _gf2.bits(v)]

    def differential(self, v: int, p: int) -> int:
        cols = self.columns(p)
        out = 0
        for i in _gf2.bits(v):
            out ^= cols[i]
        return out

    def betti_numbers(self) -> list:
        return [betti(self, p) for p in range(max(self.top, 0) + 1)]

    def cobetti_numbers(self) -> list:
        return [cobetti(self, p) for p in range(max(self.top, 0) + 1)]

    def __repr__(self):
        sizes = {p: len(b) for p, b in sorted(self.bases.items())}
        return f"PresentedChainComplex({sizes})"


def betti(cc: PresentedChainComplex, p: int) -> int:
    """dim ker d_p - rank d_{p+1}."""
    cc.check()
    n = len(cc.basis(p))
    return n - cc.rank(p) - cc.rank(p + 1)


def cobetti(cc: PresentedChainComplex, p: int) -> int:
    """dim ker d^p - rank d^{p-1}, both computed from transposed matrices."""
    cc.check()
    n = len(cc.basis(p))
    return n - cc.corank(p + 1) - cc.corank(p)


def _degree_vector(c, cc, p):
    if isinstance(c, Chain):
        if p is not None and p != c.dim:
            raise DegreeMismatch(f"chain has degree {c.dim}, expected {p}")
        p = c.dim
        labels = c.members
    else:
        if p is None:
            raise DegreeMismatch("a degree is required for a bare label set")
        labels = c
    return cc.to_vector(labels, p), p


def is_cycle(c, cc: PresentedChainComplex, p: int | None = None) -> bool:
    v, p = _degree_vector(c, cc, p)
    return cc.differential(v, p) == 0


def is_boundary(c, cc: PresentedChainComplex, p: int | None = None) -> bool:
    v, p = _degree_vector(c, cc, p)
    return v in _gf2.Span(cc.columns(p + 1))


def homologous(c, c2, cc: PresentedChainComplex, p: int | None = None) -> bool:
    v, p = _degree_vector(c, cc, p)
    w, q = _degree_vector(c2, cc, p)
    if p != q:
        raise DegreeMismatch(f"degrees {p} and {q} differ")
    return (v ^ w) in _gf2.Span(cc.columns(p + 1))


def complex_to_presented(K: Complex) -> PresentedChainComplex:
    bases = {p: list(K.faces(p)) for p in range(K.dim + 1)}
    boundaries = {}
    for p in range(1, K.dim + 1):
        idx = {f: i for i, f in enumerate(bases[p - 1])}
        cols = []
        for s in bases[p]:
            v = 0
            for f in codim1_faces(s):
                v |= 1 << idx[f]
            cols.append(v)
        boundaries[p] = cols
    return PresentedChainComplex(bases, boundaries)


def betti_numbers(K: Complex) -> list:
    return complex_to_presented(K).betti_numbers()


def cycle_space(cc: PresentedChainComplex, p: int) -> list:
    """A basis of Z_p as bitmasks over ``cc.basis(p)``."""
    return _gf2.kernel_basis(cc.columns(p))
