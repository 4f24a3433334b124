"""Finite simplicial complexes, Z/2 chains and the four elementary moves.

A simplex is a sorted tuple of nonnegative integers.  Tuples compare
lexicographically, which gives the basis order used everywhere else.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .exceptions import (
    HeterogeneousChain,
    IllegalMove,
    InvalidComplex,
    InvalidFacet,
    NotAFace,
    ParseError,
)

Simplex = tuple


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids into a simplex."""
    vs = tuple(sorted(set(vertices)))
    if not vs:
        raise InvalidFacet("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidFacet(f"vertex {v!r} is not a nonnegative integer")
    return vs


def sdim(s: Simplex) -> int:
    return len(s) - 1


def codim1_faces(s: Simplex) -> tuple:
    if len(s) == 1:
        return ()
    return tuple(s[:i] + s[i + 1:] for i in range(len(s)))


def simplex_key(s: Simplex):
    """Sort key: dimension first, then lexicographic."""
    return (len(s), s)


class Chain:
    """A mod-2 chain: a finite set of simplices of one dimension.

    Addition is symmetric difference.  The empty chain remembers its degree.
    """

    __slots__ = ("members", "dim")

    def __init__(self, members: Iterable = (), dim: int | None = None):
        members = frozenset(tuple(m) for m in members)
        dims = {len(m) - 1 for m in members}
        if len(dims) > 1:
            raise HeterogeneousChain(f"chain mixes dimensions {sorted(dims)}")
        if dims:
            (d,) = dims
            if dim is not None and dim != d:
                raise HeterogeneousChain(f"members have dimension {d}, chain declared {dim}")
            dim = d
        elif dim is None:
            raise HeterogeneousChain("an empty chain needs an explicit dimension")
        self.members = members
        self.dim = dim

    @classmethod
    def zero(cls, dim: int) -> "Chain":
        return cls((), dim)

    def __add__(self, other: "Chain") -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        if other.dim != self.dim:
            raise HeterogeneousChain(f"cannot add a {self.dim}-chain and a {other.dim}-chain")
        return Chain(self.members ^ other.members, self.dim)

    __sub__ = __add__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.dim == other.dim and self.members == other.members

    def __hash__(self):
        return hash((self.dim, self.members))

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, s):
        return tuple(s) in self.members

    def __bool__(self):
        return bool(self.members)

    def __repr__(self):
        if not self.members:
            return f"Chain.zero({self.dim})"
        return "Chain(" + " + ".join(str(list(s)) for s in self) + ")"


class Complex:
    """An immutable finite simplicial complex.

    Faces are indexed per dimension, and each face knows its codimension-one
    cofaces so that free-pair tests are constant time.
    """

    __slots__ = ("_faces", "_by_dim", "_cofaces")

    def __init__(self, faces: Iterable = ()):
        fs = frozenset(simplex(f) for f in faces)
        cofaces: dict = {f: [] for f in fs}
        for f in fs:
            for g in codim1_faces(f):
                if g not in cofaces:
                    raise InvalidComplex(f"face {list(g)} of {list(f)} is missing")
                cofaces[g].append(f)
        by_dim: dict = {}
        for f in fs:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._faces = fs
        self._by_dim = {p: tuple(sorted(v)) for p, v in sorted(by_dim.items())}
        self._cofaces = {f: tuple(sorted(c)) for f, c in cofaces.items()}

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def faces(self, p: int | None = None) -> tuple:
        """Faces of dimension ``p`` in lexicographic order, or all faces by (dim, lex)."""
        if p is None:
            return tuple(f for q in self._by_dim for f in self._by_dim[q])
        return self._by_dim.get(p, ())

    def f_vector(self) -> list:
        return [len(self.faces(p)) for p in range(self.dim + 1)]

    @property
    def vertices(self) -> tuple:
        return tuple(f[0] for f in self.faces(0))

    def cofaces(self, s: Simplex) -> tuple:
        try:
            return self._cofaces[tuple(s)]
        except KeyError:
            raise NotAFace(f"{list(s)} is not a face of the complex") from None

    def is_facet(self, s: Simplex) -> bool:
        return not self.cofaces(s)

    def facets(self) -> tuple:
        return tuple(f for f in self.faces() if not self._cofaces[f])

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        return tuple(s) in self._faces

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.faces())

    def __len__(self) -> int:
        return len(self._faces)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self):
        return hash(self._faces)

    def __repr__(self):
        return f"Complex(dim={self.dim}, f_vector={self.f_vector()})"

    @property
    def face_set(self) -> frozenset:
        return self._faces


def closure(facets: Iterable[Iterable[int]]) -> Complex:
    """The smallest complex containing every given vertex set."""
    faces = set()
    for facet in facets:
        s = simplex(facet)
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    return Complex(faces)


def _require_face(s, K: Complex) -> Simplex:
    s = tuple(s)
    if s not in K:
        raise NotAFace(f"{list(s)} is not a face of the complex")
    return s


def boundary(s: Simplex, K: Complex) -> Chain:
    s = _require_face(s, K)
    return Chain(codim1_faces(s), len(s) - 2)


def coboundary(s: Simplex, K: Complex) -> Chain:
    s = _require_face(s, K)
    return Chain(K.cofaces(s), len(s))


def boundary_op(c: Chain, K: Complex) -> Chain:
    out = set()
    for s in c.members:
        _require_face(s, K)
        out.symmetric_difference_update(codim1_faces(s))
    return Chain(out, c.dim - 1)


def coboundary_op(c: Chain, K: Complex) -> Chain:
    out = set()
    for s in c.members:
        out.symmetric_difference_update(K.cofaces(s))
    return Chain(out, c.dim + 1)


def free_pairs(K: Complex) -> list:
    """All free pairs (sigma, tau), sorted by (dim tau, tau, sigma)."""
    pairs = []
    for s in K.faces():
        cof = K.cofaces(s)
        if len(cof) == 1 and not K.cofaces(cof[0]):
            pairs.append((s, cof[0]))
    pairs.sort(key=lambda st: (len(st[1]), st[1], st[0]))
    return pairs


def is_free_pair(K: Complex, sigma, tau) -> bool:
    sigma, tau = tuple(sigma), tuple(tau)
    return sigma in K and K.cofaces(sigma) == (tau,) and not K.cofaces(tau)


def _check_pair_shape(sigma, tau):
    if len(tau) != len(sigma) + 1 or not set(sigma) < set(tau):
        raise IllegalMove("sigma must be a codimension-one face of tau")


def collapse(K: Complex, sigma, tau) -> Complex:
    sigma, tau = simplex(sigma), simplex(tau)
    _check_pair_shape(sigma, tau)
    if sigma not in K or tau not in K:
        raise IllegalMove("collapse requires sigma and tau in K")
    if not is_free_pair(K, sigma, tau):
        raise IllegalMove("collapse requires (sigma, tau) to be a free pair")
    return Complex(K.face_set - {sigma, tau})


def expand(K: Complex, sigma, tau) -> Complex:
    sigma, tau = simplex(sigma), simplex(tau)
    _check_pair_shape(sigma, tau)
    if sigma in K or tau in K:
        raise IllegalMove("expansion requires sigma and tau outside K")
    missing = [f for f in codim1_faces(tau) if f != sigma and f not in K]
    missing += [f for f in codim1_faces(sigma) if f not in K]
    if missing:
        raise IllegalMove("expansion result must be downward closed",
                          f"faces {[list(f) for f in missing]} are missing")
    return Complex(K.face_set | {sigma, tau})


def perforate(K: Complex, nu) -> Complex:
    nu = simplex(nu)
    if nu not in K:
        raise IllegalMove("perforation requires nu in K")
    if K.cofaces(nu):
        raise IllegalMove("perforation requires nu to be a facet", f"{list(nu)} is not a facet")
    return Complex(K.face_set - {nu})


def fill(K: Complex, nu) -> Complex:
    nu = simplex(nu)
    if nu in K:
        raise IllegalMove("filling requires nu outside K")
    if any(f not in K for f in codim1_faces(nu)):
        raise IllegalMove("filling requires all proper faces present")
    return Complex(K.face_set | {nu})


def parse_cplx(text: str) -> Complex:
    """Parse the facet-list format: one facet of integers per line, ``#`` comments."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            facet = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"not an integer list: {line!r}", lineno) from None
        try:
            facets.append(simplex(facet))
        except InvalidFacet as exc:
            raise ParseError(str(exc), lineno) from None
    return closure(facets)


def read_cplx(path) -> Complex:
    return parse_cplx(Path(path).read_text(encoding="utf-8"))


def format_cplx(K: Complex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in sorted(K.facets(), key=simplex_key))


def write_cplx(K: Complex, path) -> None:
    Path(path).write_text(format_cplx(K), encoding="utf-8")
