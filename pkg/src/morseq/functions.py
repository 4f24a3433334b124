"""Acyclic vector fields and discrete Morse functions, and their translation
to and from Morse sequences."""

from __future__ import annotations

import json
from collections.abc import Mapping
from graphlib import CycleError, TopologicalSorter
from itertools import groupby
from pathlib import Path

from .complex import Complex, codim1_faces, simplex, simplex_key
from .exceptions import CyclicField, NotAFace, NotAMorseFunction, NotBasic, ParseError
from .sequence import Expand, Fill, MorseSequence, VectorField


def _check_field(V: VectorField, K: Complex) -> None:
    for s, t in V:
        for f in (s, t):
            if f not in K:
                raise NotAFace(f"{list(f)} is not a face of the complex")


def is_acyclic(V: VectorField, K: Complex) -> bool:
    """No closed gradient path: per dimension, sigma -> sigma' whenever
    (sigma, tau) is in V and sigma' is another facet of tau."""
    _check_field(V, K)
    for p in range(K.dim):
        graph = {}
        for s, t in V:
            if len(s) == p + 1:
                graph[s] = [f for f in codim1_faces(t) if f != s]
        try:
            # predecessors are the successors here; cycles are detected either way
            tuple(TopologicalSorter(graph).static_order())
        except CycleError:
            return False
    return True


def vf_to_morse_sequence(V: VectorField, K: Complex) -> MorseSequence:
    """A Morse sequence on K whose gradient vector field is exactly V.

    Works top-down: at the current top dimension, perforate the smallest
    unpaired face, otherwise collapse the smallest pair of V whose lower face
    is free; the items are then reversed.  Raises CyclicField when neither
    move exists, which happens exactly when V has a closed path.
    """
    _check_field(V, K)
    up = V.up
    down = V.down
    alive = set(K.face_set)
    live_cofaces = {f: len(K.cofaces(f)) for f in K}
    rev = []

    def remove(x):
        alive.discard(x)
        for g in codim1_faces(x):
            live_cofaces[g] -= 1

    while alive:
        d = max(len(f) for f in alive) - 1
        top = sorted(f for f in alive if len(f) == d + 1)
        crit = [f for f in top if f not in up and f not in down]
        if crit:
            remove(crit[0])
            rev.append(Fill(crit[0]))
            continue
        frees = [(down[t], t) for t in top if t in down and live_cofaces[down[t]] == 1]
        if not frees:
            raise CyclicField(f"no critical facet and no free pair of V in dimension {d}")
        s, t = frees[0]
        remove(t)
        remove(s)
        rev.append(Expand(s, t))
    rev.reverse()
    return MorseSequence(rev, K)


class DiscreteMorseFunction(Mapping):
    """Integer values on the faces of a complex."""

    def __init__(self, values: dict, complex: Complex | None = None):
        self._values = {tuple(s): int(v) for s, v in values.items()}
        self.complex = complex if complex is not None else Complex(self._values)
        missing = [f for f in self.complex if f not in self._values]
        if missing:
            raise NotAFace(f"no value for {list(missing[0])}")

    def __getitem__(self, s):
        return self._values[tuple(s)]

    def __iter__(self):
        return iter(sorted(self._values, key=simplex_key))

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f"DiscreteMorseFunction({len(self)} faces)"


def is_morse_function_on_sequence(f, seq: MorseSequence) -> bool:
    for it in seq.items:
        if isinstance(it, Fill):
            k = it.simplex
            if any(f[k] <= f[nu] for nu in codim1_faces(k)):
                return False
        elif f[it.sigma] < f[it.tau]:
            return False
    return True


def canonical_morse_function(seq: MorseSequence) -> DiscreteMorseFunction:
    values = {}
    for i, it in enumerate(seq.items, 1):
        for face in it.faces:
            values[face] = i
    return DiscreteMorseFunction(values, seq.target)


def _pairs_of(f, K: Complex) -> list:
    return [(s, t) for t in K for s in codim1_faces(t) if f[s] >= f[t]]


def gradient_field_of_function(f, K: Complex) -> VectorField:
    pairs = _pairs_of(f, K)
    try:
        return VectorField(pairs)
    except ValueError as exc:
        raise NotAMorseFunction(str(exc)) from None


def is_morse_function(f, K: Complex) -> bool:
    try:
        gradient_field_of_function(f, K)
    except NotAMorseFunction:
        return False
    return True


def is_flat(f, K: Complex) -> bool:
    return all(f[s] == f[t] for s, t in gradient_field_of_function(f, K))


def is_excellent(f, K: Complex) -> bool:
    V = gradient_field_of_function(f, K)
    paired = {x for st in V for x in st}
    vals = [f[x] for x in K if x not in paired]
    return len(vals) == len(set(vals))


def basic_violation(f, K: Complex):
    """Name of the first basic-function property that fails, or None."""
    for t in K:
        if any(f[s] > f[t] for s in codim1_faces(t)):
            return "monotonicity"
    levels = {}
    for x in K:
        levels.setdefault(f[x], []).append(x)
    if any(len(v) > 2 for v in levels.values()):
        return "semi-injectivity"
    for v in levels.values():
        if len(v) == 2:
            a, b = v
            if not (set(a) <= set(b) or set(b) <= set(a)):
                return "genericity"
    return None


def is_basic_morse_function(f, K: Complex) -> bool:
    return basic_violation(f, K) is None


def basic_function_to_sequence(f, K: Complex) -> MorseSequence:
    """Pick faces by increasing value: single faces are filled, nested
    pairs sharing a value are expanded."""
    bad = basic_violation(f, K)
    if bad:
        raise NotBasic(bad, f"function is not basic: {bad} fails")
    items = []
    faces = sorted(K, key=lambda x: (f[x], len(x)))
    for _, group in groupby(faces, key=lambda x: f[x]):
        group = list(group)
        if len(group) == 1:
            items.append(Fill(group[0]))
        else:
            items.append(Expand(group[0], group[1]))
    return MorseSequence(items, K)


def strongly_equivalent(f, g, K: Complex) -> bool:
    faces = list(K)
    return all((f[a] <= f[b]) == (g[a] <= g[b]) for a in faces for b in faces)


def parse_function(text: str) -> DiscreteMorseFunction:
    """Lines ``<value> <vertices...>``; ``#`` starts a comment.  The faces
    listed must form a complex."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"not an integer list: {line!r}", lineno) from None
        if len(toks) < 2:
            raise ParseError("expected a value followed by vertices", lineno)
        try:
            s = simplex(toks[1:])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if s in values:
            raise ParseError(f"duplicate face {list(s)}", lineno)
        values[s] = toks[0]
    try:
        return DiscreteMorseFunction(values)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_function(f) -> str:
    return "".join(f"{f[s]} " + " ".join(map(str, s)) + "\n" for s in f)


def read_function(path) -> DiscreteMorseFunction:
    return parse_function(Path(path).read_text(encoding="utf-8"))


def field_to_json(V: VectorField) -> str:
    return json.dumps([{"sigma": list(s), "tau": list(t)} for s, t in V.sorted()])


def field_from_json(text: str) -> VectorField:
    try:
        data = json.loads(text)
        pairs = [(simplex(d["sigma"]), simplex(d["tau"])) for d in data]
        return VectorField(pairs)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad vector field: {exc}") from None


def read_field(path) -> VectorField:
    return field_from_json(Path(path).read_text(encoding="utf-8"))
