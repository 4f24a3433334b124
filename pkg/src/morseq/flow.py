"""Gradient and cogradient paths, extension maps, and the gradient flow.

Path counts are exact integers computed over the acyclic gradient field,
either by memoized recursion or by explicit enumeration; the reference maps
are recovered from their parities.
"""

from __future__ import annotations

import random
from functools import lru_cache

from . import _gf2
from .complex import Chain, Simplex, codim1_faces
from .exceptions import IterationCap, NotAChainComplex
from .homology import PresentedChainComplex
from .reference import CriticalComplex, Frame, coreference_map, critical_complex, reference_map
from .sequence import MorseSequence


class GradientPath(tuple):
    """Alternating simplex tuple; ``kind`` is "gradient" or "cogradient"."""

    def __new__(cls, simplices, kind="gradient"):
        obj = super().__new__(cls, simplices)
        obj.kind = kind
        return obj

    @property
    def start(self):
        return self[0]

    @property
    def end(self):
        return self[-1]

    @property
    def main(self) -> tuple:
        """The simplices of the path's own dimension (every other entry)."""
        return self[0::2]


def _gradient_steps(seq: MorseSequence, s: Simplex):
    """(tau, s') for every one-step extension of a gradient path at s."""
    t = seq.partner.get(s)
    if t is None or s not in seq.lower:
        return []
    return [(t, f) for f in codim1_faces(t) if f != s]


def _cogradient_back(seq: MorseSequence, t: Simplex):
    """(sigma, t') with t' preceding t in a cogradient path ending at t."""
    s = seq.partner.get(t)
    if s is None or t not in seq.upper:
        return []
    return [(s, g) for g in seq.target.cofaces(s) if g != t]


def _cogradient_forward(seq: MorseSequence, t: Simplex):
    """(sigma, t') with t' following t in a cogradient path starting at t."""
    out = []
    for s in codim1_faces(t):
        t2 = seq.partner.get(s)
        if t2 is not None and s in seq.lower and t2 != t:
            out.append((s, t2))
    return out


def gradient_paths(seq: MorseSequence, nu: Simplex, kappa: Simplex | None = None):
    """Enumerate the gradient paths from ``nu`` that end at a critical face
    (or at ``kappa`` only, if given)."""
    crit = seq.critical_set

    def rec(path):
        s = path[-1]
        if s in crit and (kappa is None or s == kappa):
            yield GradientPath(path)
        for t, s2 in _gradient_steps(seq, s):
            yield from rec(path + (t, s2))

    yield from rec((tuple(nu),))


def cogradient_paths(seq: MorseSequence, nu: Simplex, kappa: Simplex | None = None):
    """Enumerate the cogradient paths ending at ``nu`` that start at a
    critical face (or at ``kappa`` only, if given)."""
    crit = seq.critical_set

    def rec(path):
        t = path[0]
        if t in crit and (kappa is None or t == kappa):
            yield GradientPath(path, "cogradient")
        for s, t2 in _cogradient_back(seq, t):
            yield from rec((t2, s) + path)

    yield from rec((tuple(nu),))


class PathCounter:
    """Memoized exact counts N(nu, kappa) of gradient paths and N*(kappa, nu)
    of cogradient paths, for every critical kappa at once."""

    def __init__(self, seq: MorseSequence):
        self.seq = seq
        self._down = lru_cache(maxsize=None)(self._down_counts)
        self._up = lru_cache(maxsize=None)(self._up_counts)

    def _down_counts(self, s) -> dict:
        if s in self.seq.critical_set:
            return {s: 1}
        out: dict = {}
        for _, s2 in _gradient_steps(self.seq, s):
            for k, n in self._down(s2).items():
                out[k] = out.get(k, 0) + n
        return out

    def _up_counts(self, t) -> dict:
        if t in self.seq.critical_set:
            return {t: 1}
        out: dict = {}
        for _, t2 in _cogradient_back(self.seq, t):
            for k, n in self._up(t2).items():
                out[k] = out.get(k, 0) + n
        return out

    def gradient(self, nu, kappa) -> int:
        return self._down(tuple(nu)).get(tuple(kappa), 0)

    def cogradient(self, kappa, nu) -> int:
        return self._up(tuple(nu)).get(tuple(kappa), 0)

    def gradient_targets(self, nu) -> dict:
        return dict(self._down(tuple(nu)))

    def cogradient_sources(self, nu) -> dict:
        return dict(self._up(tuple(nu)))


def count_gradient_paths(seq: MorseSequence, nu, kappa) -> int:
    return PathCounter(seq).gradient(nu, kappa)


def count_cogradient_paths(seq: MorseSequence, kappa, nu) -> int:
    return PathCounter(seq).cogradient(kappa, nu)


def parity_theorem_check(seq: MorseSequence, ref: Frame | None = None,
                         coref: Frame | None = None, enumerate_paths: bool = True) -> bool:
    """kappa in ref(nu) iff the number of gradient paths nu -> kappa is odd,
    and kappa in coref(nu) iff the number of cogradient paths kappa -> nu is odd.

    Counts come from explicit enumeration, cross-checked against the memoized
    counter, unless ``enumerate_paths`` is False.
    """
    ref = ref or reference_map(seq)
    coref = coref or coreference_map(seq)
    counter = PathCounter(seq)
    for nu in seq.target:
        down = counter.gradient_targets(nu)
        up = counter.cogradient_sources(nu)
        if enumerate_paths:
            d2: dict = {}
            for path in gradient_paths(seq, nu):
                d2[path.end] = d2.get(path.end, 0) + 1
            u2: dict = {}
            for path in cogradient_paths(seq, nu):
                u2[path.start] = u2.get(path.start, 0) + 1
            if d2 != down or u2 != up:
                return False
        if frozenset(k for k, n in down.items() if n % 2) != ref.raw(nu):
            return False
        if frozenset(k for k, n in up.items() if n % 2) != coref.raw(nu):
            return False
    return True


def restricted_path(seq: MorseSequence, nu, kappa, kind: str = "wedge",
                    ref: Frame | None = None, coref: Frame | None = None):
    """A restricted path between ``nu`` and the critical ``kappa``, or None.

    kind "wedge": a gradient path nu -> kappa in which every p-face sigma_i
    has kappa in ref(sigma_i).  kind "vee": a cogradient path kappa -> nu in
    which every p-face tau_i has kappa in coref(tau_i).
    """
    nu, kappa = tuple(nu), tuple(kappa)
    if kind == "wedge":
        ref = ref or reference_map(seq)
        seen: set = set()

        def dfs(s):
            if kappa not in ref.raw(s) or s in seen:
                return None
            seen.add(s)
            if s == kappa:
                return (s,)
            for t, s2 in _gradient_steps(seq, s):
                rest = dfs(s2)
                if rest is not None:
                    return (s, t) + rest
            return None

        found = dfs(nu)
        return GradientPath(found) if found else None
    if kind == "vee":
        coref = coref or coreference_map(seq)
        seen = set()

        def dfs_back(t):
            if kappa not in coref.raw(t) or t in seen:
                return None
            seen.add(t)
            if t == kappa:
                return (t,)
            for s, t2 in _cogradient_back(seq, t):
                rest = dfs_back(t2)
                if rest is not None:
                    return rest + (s, t)
            return None

        found = dfs_back(nu)
        return GradientPath(found, "cogradient") if found else None
    raise ValueError(f"kind must be 'wedge' or 'vee', got {kind!r}")


def restricted_path_exists(seq: MorseSequence, nu, kappa, kind: str = "wedge",
                           ref: Frame | None = None, coref: Frame | None = None) -> bool:
    return restricted_path(seq, nu, kappa, kind, ref, coref) is not None


def _invert(frame: Frame, seq: MorseSequence) -> Frame:
    table: dict = {k: set() for k in seq.critical}
    for nu in frame:
        for k in frame.raw(nu):
            table[k].add(nu)
    return Frame(table)


def extension_map(seq: MorseSequence, coref: Frame | None = None) -> Frame:
    """kappa -> the set of faces nu with kappa in coref(nu)."""
    return _invert(coref or coreference_map(seq), seq)


def coextension_map(seq: MorseSequence, ref: Frame | None = None) -> Frame:
    """kappa -> the set of faces nu with kappa in ref(nu)."""
    return _invert(ref or reference_map(seq), seq)


class Maps:
    """Everything derived from one sequence, computed once."""

    def __init__(self, seq: MorseSequence):
        self.seq = seq
        self.ref = reference_map(seq)
        self.coref = coreference_map(seq)
        self.ext = extension_map(seq, self.coref)
        self.coext = coextension_map(seq, self.ref)
        self.cc: CriticalComplex = critical_complex(seq, self.ref, self.coref)


def _xor_all(sets) -> frozenset:
    out: set = set()
    for s in sets:
        out.symmetric_difference_update(s)
    return frozenset(out)


def _bd(c) -> frozenset:
    return _xor_all(codim1_faces(s) for s in c)


def _cobd(K, c) -> frozenset:
    return _xor_all(K.cofaces(s) for s in c)


def _random_critical_chains(seq, rng, n):
    out = []
    for p in range(seq.target.dim + 1):
        pool = seq.critical_of_dim(p)
        out += [frozenset(k for k in pool if rng.random() < 0.5) for _ in range(n)]
    return out


def retraction_check(seq: MorseSequence, maps: Maps | None = None, n_random: int = 5,
                     seed: int = 0) -> bool:
    """ref o ext = Id and coref o coext = Id on critical chains."""
    m = maps or Maps(seq)
    tests = [frozenset([k]) for k in seq.critical]
    tests += _random_critical_chains(seq, random.Random(seed), n_random)
    for c in tests:
        if m.ref.apply_set(m.ext.apply_set(c)) != c:
            return False
        if m.coref.apply_set(m.coext.apply_set(c)) != c:
            return False
    return True


def extension_chain_map_check(seq: MorseSequence, maps: Maps | None = None) -> bool:
    """The boundary of ext(kappa) is ext of its critical boundary; dually for coext."""
    m = maps or Maps(seq)
    K = seq.target
    for k in seq.critical:
        if _bd(m.ext.raw(k)) != m.ext.apply_set(m.cc.boundary[k]):
            return False
        if _cobd(K, m.coext.raw(k)) != m.coext.apply_set(m.cc.coboundary[k]):
            return False
    return True


class FlowOperator:
    """The flow (``co=False``) or coflow (``co=True``) of a Morse sequence.

    ``V`` sends a lower regular face to its partner and ``Vstar`` sends an
    upper regular face to its partner; both vanish elsewhere.
    """

    def __init__(self, seq: MorseSequence, co: bool = False):
        self.seq = seq
        self.co = co
        self._up = {s: t for s, t in seq.pairs}
        self._down = {t: s for s, t in seq.pairs}

    def V(self, c) -> frozenset:
        return frozenset(self._up[s] for s in c if s in self._up)

    def Vstar(self, c) -> frozenset:
        return frozenset(self._down[t] for t in c if t in self._down)

    def step(self, c) -> frozenset:
        c = frozenset(c)
        if self.co:
            K = self.seq.target
            return c ^ _cobd(K, self.Vstar(c)) ^ self.Vstar(_cobd(K, c))
        return c ^ _bd(self.V(c)) ^ self.V(_bd(c))

    def stabilize(self, c) -> frozenset:
        cur = frozenset(c)
        for _ in range(len(self.seq.target) + 1):
            nxt = self.step(cur)
            if nxt == cur:
                return cur
            cur = nxt
        raise IterationCap(f"flow did not stabilize within {len(self.seq.target)} iterations")


def flow(seq: MorseSequence, co: bool = False) -> FlowOperator:
    return FlowOperator(seq, co)


def flow_apply(op: FlowOperator, c: Chain) -> Chain:
    return Chain(op.step(c.members), c.dim)


def flow_stabilize(op: FlowOperator, c: Chain) -> Chain:
    return Chain(op.stabilize(c.members), c.dim)


def flow_decomposition_check(seq: MorseSequence, maps: Maps | None = None, n_random: int = 5,
                             seed: int = 0) -> bool:
    """The stabilized flow equals ext o ref, and the stabilized coflow equals coext o coref."""
    m = maps or Maps(seq)
    K = seq.target
    fl, cofl = FlowOperator(seq), FlowOperator(seq, co=True)
    rng = random.Random(seed)
    tests = [frozenset([s]) for s in K]
    for p in range(K.dim + 1):
        tests += [frozenset(s for s in K.faces(p) if rng.random() < 0.5) for _ in range(n_random)]
    for c in tests:
        if fl.stabilize(c) != m.ext.apply_set(m.ref.apply_set(c)):
            return False
        if cofl.stabilize(c) != m.coext.apply_set(m.coref.apply_set(c)):
            return False
    return True


def composite_paths(seq: MorseSequence, nu, mu=None):
    """Enumerate composite paths from ``nu`` (to ``mu`` if given) that contain a critical face.

    A composite path is a walk of same-dimension faces in which each step
    is a gradient step or a cogradient step.  Walks are pruned once they sit
    on an upper regular face without having met a critical face, since no
    step leaves the upper regular faces again.  Each path is yielded as the
    tuple of its faces together with the tuple of step kinds ("g" or "c").
    """
    crit = seq.critical_set
    cap = 2 * len(seq.target) + 2

    def steps(x):
        for _, y in _gradient_steps(seq, x):
            yield "g", y
        for _, y in _cogradient_forward(seq, x):
            yield "c", y

    def rec(walk, kinds, met):
        if len(walk) > cap:
            raise IterationCap("composite path longer than any acyclic walk allows")
        x = walk[-1]
        met = met or x in crit
        if met and (mu is None or x == tuple(mu)):
            yield walk, kinds
        if not met and x in seq.upper:
            return
        for kind, y in steps(x):
            yield from rec(walk + (y,), kinds + (kind,), met)

    yield from rec((tuple(nu),), (), False)


def split_composite(seq: MorseSequence, walk, kinds):
    """(gradient part, kappa, cogradient part) if the walk is a gradient path
    into a single critical face followed by a cogradient path out of it, else None."""
    crit_pos = [i for i, x in enumerate(walk) if x in seq.critical_set]
    if len(crit_pos) != 1:
        return None
    i = crit_pos[0]
    if any(k != "g" for k in kinds[:i]) or any(k != "c" for k in kinds[i:]):
        return None
    return walk[: i + 1], walk[i], walk[i:]


def composite_path_check(seq: MorseSequence, maps: Maps | None = None) -> bool:
    """Every composite path through a critical face splits at that face, and
    mu is in the stabilized flow of nu iff the number of such paths is odd."""
    m = maps or Maps(seq)
    fl = FlowOperator(seq)
    for nu in seq.target:
        counts: dict = {}
        for walk, kinds in composite_paths(seq, nu):
            if split_composite(seq, walk, kinds) is None:
                return False
            counts[walk[-1]] = counts.get(walk[-1], 0) + 1
        odd = frozenset(x for x, n in counts.items() if n % 2)
        if odd != fl.stabilize([nu]):
            return False
    return True


class ExtensionComplex:
    """The span of the extended critical faces, with the ambient boundary.

    Boundary coordinates are found by solving in the basis of the degree
    below, so closure under the boundary is checked rather than assumed.
    """

    def __init__(self, seq: MorseSequence, ext: Frame):
        self.seq = seq
        K = seq.target
        self.ext = ext
        self._face_index = {p: {f: i for i, f in enumerate(K.faces(p))} for p in range(K.dim + 1)}
        bases = {p: list(seq.critical_of_dim(p)) for p in range(K.dim + 1)}
        self.vectors = {p: [self._vec(ext.raw(k), p) for k in bases[p]] for p in bases}
        self.spans = {p: _gf2.Span(v) for p, v in self.vectors.items()}
        cols = {}
        for p in range(1, K.dim + 1):
            col = []
            for k in bases[p]:
                coords = self.spans[p - 1].solve(self._vec(_bd(ext.raw(k)), p - 1))
                if coords is None:
                    raise NotAChainComplex(f"boundary of the extension of {list(k)} leaves the span")
                col.append(coords)
            cols[p] = col
        self.presented = PresentedChainComplex(bases, cols)

    def _vec(self, faces, p) -> int:
        idx = self._face_index[p]
        v = 0
        for f in faces:
            v ^= 1 << idx[f]
        return v

    def to_vector(self, c, p: int) -> int:
        return self._vec(c, p)

    def basis(self, p: int) -> list:
        return [self.ext.raw(k) for k in self.presented.basis(p)]

    def dim(self, p: int) -> int:
        return self.spans[p].rank if p in self.spans else 0

    def __contains__(self, c: Chain) -> bool:
        if c.dim not in self.spans:
            return not c.members
        return self._vec(c.members, c.dim) in self.spans[c.dim]

    def elements(self, p: int) -> list:
        """Every chain of degree p in the span (exponential in the basis size)."""
        gens = self.basis(p)
        out = []
        for mask in range(1 << len(gens)):
            out.append(Chain(_xor_all(g for i, g in enumerate(gens) if mask >> i & 1), p))
        return out

    def betti_numbers(self) -> list:
        return self.presented.betti_numbers()


def extension_complex(seq: MorseSequence, ext: Frame | None = None) -> ExtensionComplex:
    return ExtensionComplex(seq, ext or extension_map(seq))


def flow_fixed_point_check(seq: MorseSequence, max_exhaustive: int = 1 << 20,
                           n_samples: int = 200, seed: int = 0) -> bool:
    """A chain lies in the extension complex iff the stabilized flow fixes it.

    Degrees with at most ``max_exhaustive`` chains are enumerated in Gray
    code order, using linearity of the stabilized flow.  Larger degrees are
    sampled: random chains, their images, and random span elements.
    """
    K = seq.target
    ec = extension_complex(seq)
    fl = FlowOperator(seq)
    rng = random.Random(seed)
    for p in range(K.dim + 1):
        faces = K.faces(p)
        n = len(faces)
        images = [ec.to_vector(fl.stabilize([s]), p) for s in faces]
        span = ec.spans.get(p, _gf2.Span())
        if (1 << n) <= max_exhaustive:
            c = img = 0
            for i in range(1 << n):
                if i:
                    bit = _gf2.low_bit(i)
                    c ^= 1 << bit
                    img ^= images[bit]
                if (img == c) != (c in span):
                    return False
        else:
            gens = ec.vectors.get(p, [])
            for _ in range(n_samples):
                c = rng.getrandbits(n)
                img = 0
                for i in _gf2.bits(c):
                    img ^= images[i]
                if (img == c) != (c in span):
                    return False
                if img not in span:
                    return False
                member = 0
                for g in gens:
                    if rng.random() < 0.5:
                        member ^= g
                fixed = 0
                for i in _gf2.bits(member):
                    fixed ^= images[i]
                if fixed != member:
                    return False
    return True


def _label(s) -> str:
    return "_".join(map(str, s))


def gradient_dot(seq: MorseSequence) -> str:
    """Graphviz digraph: an arrow from each lower regular face to its partner,
    critical faces filled red."""
    lines = ["digraph gradient {", "  node [shape=box, fontname=monospace];"]
    for f in seq.target:
        attrs = f'label="{list(f)}"'
        if f in seq.critical_set:
            attrs += ", style=filled, fillcolor=red"
        lines.append(f'  "{_label(f)}" [{attrs}];')
    for s, t in sorted(seq.pairs, key=lambda st: (len(st[1]), st[1])):
        lines.append(f'  "{_label(s)}" -> "{_label(t)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
