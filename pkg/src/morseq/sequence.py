"""Morse sequences: representation, replay validation, construction schemes,
gradient vector fields, arranged reordering and skeletons."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .complex import Complex, Simplex, closure, codim1_faces, simplex
from .exceptions import IllegalMove, InvalidSequence, ParseError, TargetMismatch


@dataclass(frozen=True)
class Fill:
    simplex: Simplex

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1

    @property
    def faces(self) -> tuple:
        return (self.simplex,)

    def to_dict(self) -> dict:
        return {"op": "fill", "simplex": list(self.simplex)}


@dataclass(frozen=True)
class Expand:
    sigma: Simplex
    tau: Simplex

    def __post_init__(self):
        if len(self.tau) != len(self.sigma) + 1 or not set(self.sigma) < set(self.tau):
            raise IllegalMove("sigma must be a codimension-one face of tau",
                              f"{list(self.sigma)} is not a facet of {list(self.tau)}")

    @property
    def dim(self) -> int:
        return len(self.tau) - 1

    @property
    def faces(self) -> tuple:
        return (self.sigma, self.tau)

    def to_dict(self) -> dict:
        return {"op": "expand", "sigma": list(self.sigma), "tau": list(self.tau)}


def item_from_dict(d: dict):
    op = d.get("op")
    if op == "fill":
        return Fill(simplex(d["simplex"]))
    if op == "expand":
        return Expand(simplex(d["sigma"]), simplex(d["tau"]))
    raise ValueError(f"unknown op {op!r}")


class VectorField(frozenset):
    """A set of pairs (sigma, tau), sigma a codimension-one face of tau,
    with every simplex in at most one pair."""

    def __new__(cls, pairs: Iterable = ()):
        pairs = [(tuple(s), tuple(t)) for s, t in pairs]
        seen = set()
        for s, t in pairs:
            if len(t) != len(s) + 1 or not set(s) < set(t):
                raise ValueError(f"{list(s)} is not a codimension-one face of {list(t)}")
            for f in (s, t):
                if f in seen:
                    raise ValueError(f"{list(f)} occurs in two pairs")
                seen.add(f)
        return super().__new__(cls, pairs)

    @cached_property
    def up(self) -> dict:
        """sigma -> tau."""
        return {s: t for s, t in self}

    @cached_property
    def down(self) -> dict:
        """tau -> sigma."""
        return {t: s for s, t in self}

    def sorted(self) -> list:
        return sorted(self, key=lambda st: (len(st[1]), st[1], st[0]))

    def __repr__(self):
        return f"VectorField({self.sorted()})"


class MorseSequence:
    """The simplex-wise form of a Morse sequence: an ordered list of Fill/Expand items.

    ``target`` defaults to the set of all faces mentioned by the items.  The
    constructor does not replay the items; use :func:`validate`.
    """

    def __init__(self, items: Iterable, target: Complex | None = None):
        self.items = tuple(items)
        if target is None:
            target = closure(f for it in self.items for f in it.faces)
        self.target = target

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other):
        if not isinstance(other, MorseSequence):
            return NotImplemented
        return self.items == other.items and self.target == other.target

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        c = self.critical_counts()
        return f"MorseSequence({len(self.items)} items, critical={c})"

    @cached_property
    def critical(self) -> tuple:
        """Critical faces in sequence order."""
        return tuple(it.simplex for it in self.items if isinstance(it, Fill))

    @cached_property
    def critical_set(self) -> frozenset:
        return frozenset(self.critical)

    @cached_property
    def pairs(self) -> tuple:
        return tuple((it.sigma, it.tau) for it in self.items if isinstance(it, Expand))

    @cached_property
    def lower(self) -> frozenset:
        return frozenset(s for s, _ in self.pairs)

    @cached_property
    def upper(self) -> frozenset:
        return frozenset(t for _, t in self.pairs)

    @cached_property
    def partner(self) -> dict:
        d = {}
        for s, t in self.pairs:
            d[s] = t
            d[t] = s
        return d

    @cached_property
    def position(self) -> dict:
        """Face -> index of the item that adds it."""
        return {f: i for i, it in enumerate(self.items) for f in it.faces}

    def critical_of_dim(self, p: int) -> tuple:
        return tuple(sorted(c for c in self.critical if len(c) == p + 1))

    def critical_counts(self) -> list:
        d = max(self.target.dim, 0)
        counts = [0] * (d + 1)
        for c in self.critical:
            counts[len(c) - 1] += 1
        return counts


@dataclass
class Diagnostics:
    ok: bool
    index: int | None = None
    clause: str | None = None
    message: str = ""
    critical: frozenset = field(default_factory=frozenset)
    lower: frozenset = field(default_factory=frozenset)
    upper: frozenset = field(default_factory=frozenset)

    def __bool__(self):
        return self.ok


def validate(seq: MorseSequence) -> Diagnostics:
    """Replay ``seq`` from the void complex and report the first violated clause."""
    K = seq.target
    built: set = set()

    def fail(i, clause, msg):
        return Diagnostics(False, i, clause, f"item {i}: {msg}")

    for i, it in enumerate(seq.items):
        if isinstance(it, Fill):
            nu = it.simplex
            if nu not in K:
                return fail(i, "face outside target", f"{list(nu)} is not in the target complex")
            if nu in built:
                return fail(i, "face added twice", f"{list(nu)} was already added")
            missing = [f for f in codim1_faces(nu) if f not in built]
            if missing:
                return fail(i, "filling requires all proper faces present",
                            f"filling {list(nu)} before {[list(f) for f in missing]}")
            built.add(nu)
        elif isinstance(it, Expand):
            s, t = it.sigma, it.tau
            for f in (s, t):
                if f not in K:
                    return fail(i, "face outside target", f"{list(f)} is not in the target complex")
                if f in built:
                    return fail(i, "face added twice", f"{list(f)} was already added")
            missing = [f for f in codim1_faces(t) if f != s and f not in built]
            missing += [f for f in codim1_faces(s) if f not in built]
            if missing:
                return fail(i, "expansion result must be downward closed",
                            f"expanding ({list(s)}, {list(t)}) before {[list(f) for f in missing]}")
            built.add(s)
            built.add(t)
        else:
            return fail(i, "unknown item", repr(it))
    if built != K.face_set:
        left = sorted(K.face_set - built)
        return Diagnostics(False, len(seq.items), "final complex equals target",
                           f"faces never added: {[list(f) for f in left[:5]]}")
    return Diagnostics(True, critical=seq.critical_set, lower=seq.lower, upper=seq.upper)


def require_valid(seq: MorseSequence) -> MorseSequence:
    diag = validate(seq)
    if not diag:
        raise InvalidSequence(diag.message)
    return seq


class TieBreak:
    """Deterministic choice: the candidate with the smallest (or largest) key."""

    name = "lex"

    def pick(self, candidates, key, largest=False):
        return max(candidates, key=key) if largest else min(candidates, key=key)


class SeededTieBreak(TieBreak):
    """Uniform choice among candidates, reproducible for a given seed."""

    name = "seeded"

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def pick(self, candidates, key, largest=False):
        return self._rng.choice(sorted(candidates, key=key))


def make_policy(policy=None) -> TieBreak:
    if policy is None or policy == "lex":
        return TieBreak()
    if isinstance(policy, TieBreak):
        return policy
    if isinstance(policy, int) and not isinstance(policy, bool):
        return SeededTieBreak(policy)
    raise ValueError(f"unknown tie-break policy {policy!r}")


def _pair_key(st):
    s, t = st
    return (len(t), t, s)


def _face_key(f):
    return (len(f), f)


def increasing_scheme(K: Complex, policy=None) -> MorseSequence:
    """Maximal increasing scheme: fill only when no expansion is available."""
    policy = make_policy(policy)
    missing = {f: len(codim1_faces(f)) for f in K}
    built: set = set()
    fillable = {f for f, m in missing.items() if m == 0}
    one_missing = {f for f, m in missing.items() if m == 1}
    items = []

    def add(x):
        built.add(x)
        fillable.discard(x)
        one_missing.discard(x)
        for c in K.cofaces(x):
            missing[c] -= 1
            if missing[c] == 0:
                one_missing.discard(c)
                fillable.add(c)
            elif missing[c] == 1:
                one_missing.add(c)

    while len(built) < len(K):
        expansions = []
        for t in one_missing:
            s = next(f for f in codim1_faces(t) if f not in built)
            if s in fillable:
                expansions.append((s, t))
        if expansions:
            s, t = policy.pick(expansions, _pair_key)
            add(s)
            add(t)
            items.append(Expand(s, t))
        else:
            nu = policy.pick(fillable, _face_key)
            add(nu)
            items.append(Fill(nu))
    return MorseSequence(items, K)


def decreasing_scheme(K: Complex, policy=None) -> MorseSequence:
    """Maximal decreasing scheme: perforate only when no collapse is available.

    The deterministic policy mirrors the increasing one: it collapses the
    pair with the largest (dim tau, tau, sigma) and perforates the largest
    facet, since items are produced from the right end of the sequence.
    """
    policy = make_policy(policy)
    alive = set(K.face_set)
    count = {f: len(K.cofaces(f)) for f in K}
    single = {f for f, c in count.items() if c == 1}
    facets = {f for f, c in count.items() if c == 0}
    rev = []

    def remove(x):
        alive.discard(x)
        single.discard(x)
        facets.discard(x)
        for g in codim1_faces(x):
            count[g] -= 1
            if count[g] == 1:
                single.add(g)
            elif count[g] == 0:
                single.discard(g)
                facets.add(g)

    while alive:
        if single:
            frees = [(s, next(t for t in K.cofaces(s) if t in alive)) for s in single]
            s, t = policy.pick(frees, _pair_key, largest=True)
            remove(t)
            remove(s)
            rev.append(Expand(s, t))
        else:
            nu = policy.pick(facets, _face_key, largest=True)
            remove(nu)
            rev.append(Fill(nu))
    rev.reverse()
    return MorseSequence(rev, K)


SCHEMES = {"inc-max": increasing_scheme, "dec-max": decreasing_scheme}


def gradient_vector_field(seq: MorseSequence) -> VectorField:
    return VectorField(seq.pairs)


def equivalent(seq1: MorseSequence, seq2: MorseSequence) -> bool:
    if seq1.target != seq2.target:
        raise TargetMismatch("sequences are built on different complexes")
    return frozenset(seq1.pairs) == frozenset(seq2.pairs)


def _must_swap(a, b) -> bool:
    return a.dim > b.dim or (a.dim == b.dim and isinstance(a, Fill) and isinstance(b, Expand))


def is_arranged(seq: MorseSequence) -> bool:
    return not any(_must_swap(a, b) for a, b in zip(seq.items, seq.items[1:]))


def arrange(seq: MorseSequence) -> MorseSequence:
    """Bubble adjacent items that break the arrangement rules until none do."""
    items = list(seq.items)
    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            if _must_swap(items[i], items[i + 1]):
                items[i], items[i + 1] = items[i + 1], items[i]
                changed = True
    return MorseSequence(items, seq.target)


@dataclass(frozen=True)
class SkeletonSequence:
    """Lower and upper p-skeletons for p = 0 .. dim K."""

    lower: tuple
    upper: tuple

    def __iter__(self):
        for lo, up in zip(self.lower, self.upper):
            yield lo
            yield up


def skeletons(seq: MorseSequence) -> SkeletonSequence:
    K = seq.target
    low, up = seq.lower, seq.upper
    lower, upper = [], []
    for p in range(K.dim + 1):
        wm = [f for f in K if (f in up and len(f) <= p + 1) or (f not in up and len(f) <= p)]
        wp = [f for f in K if (f not in low and len(f) <= p + 1) or (f in low and len(f) <= p)]
        lower.append(Complex(wm))
        upper.append(Complex(wp))
    return SkeletonSequence(tuple(lower), tuple(upper))


def skeleton_collapse_witness(seq: MorseSequence) -> dict:
    """For each p, a collapse sequence from W_{p+1}^- onto W_p^+.

    Greedy: repeatedly remove the smallest free pair among the regular pairs
    of dimension p+1.  Raises InvalidSequence if the greedy pass stalls.
    """
    sk = skeletons(seq)
    K = seq.target
    out = {}
    for p in range(K.dim):
        alive = set(sk.lower[p + 1].face_set)
        goal = sk.upper[p].face_set
        todo = sorted((st for st in seq.pairs if len(st[1]) == p + 2), key=_pair_key)
        if any(s in goal or t in goal for s, t in todo) or alive - goal != {f for st in todo for f in st}:
            raise InvalidSequence(f"skeleton difference at p={p} is not the set of regular pairs")
        steps = []
        while todo:
            for k, (s, t) in enumerate(todo):
                cof_s = [c for c in K.cofaces(s) if c in alive]
                if cof_s == [t] and not any(c in alive for c in K.cofaces(t)):
                    break
            else:
                raise InvalidSequence(f"collapse from W_{p + 1}^- stalls with {len(todo)} pairs left")
            del todo[k]
            alive.discard(s)
            alive.discard(t)
            steps.append((s, t))
        if alive != goal:
            raise InvalidSequence(f"collapse at p={p} does not reach W_{p}^+")
        out[p] = steps
    return out


def check_skeleton_collapse(seq: MorseSequence) -> bool:
    try:
        skeleton_collapse_witness(seq)
    except InvalidSequence:
        return False
    return True


def intervening_collapses(seq: MorseSequence) -> bool:
    """Between consecutive critical items, the built complex collapses back
    onto the earlier one through the intervening pairs taken in reverse."""
    K = seq.target
    built: set = set()
    block: list = []

    def unwind():
        alive = set(built)
        for s, t in reversed(block):
            if [c for c in K.cofaces(s) if c in alive] != [t]:
                return False
            if any(c in alive for c in K.cofaces(t)):
                return False
            alive -= {s, t}
        return True

    for it in seq.items:
        if isinstance(it, Fill):
            if not unwind():
                return False
            block = []
            built.add(it.simplex)
        else:
            block.append((it.sigma, it.tau))
            built.update(it.faces)
    return unwind()


def dumps_jsonl(seq: MorseSequence) -> str:
    return "".join(json.dumps(it.to_dict()) + "\n" for it in seq.items)


def loads_jsonl(text: str, target: Complex | None = None) -> MorseSequence:
    """Parse a JSON-lines sequence and replay it; raises ParseError on any defect."""
    items = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            items.append(item_from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(str(exc), lineno) from None
    seq = MorseSequence(items, target)
    diag = validate(seq)
    if not diag:
        line = diag.index + 1 if diag.index is not None and diag.index < len(items) else None
        raise ParseError(f"invalid Morse sequence: {diag.clause} ({diag.message})", line)
    return seq


def read_sequence(path, target: Complex | None = None) -> MorseSequence:
    return loads_jsonl(Path(path).read_text(encoding="utf-8"), target)


def write_sequence(seq: MorseSequence, path) -> None:
    Path(path).write_text(dumps_jsonl(seq), encoding="utf-8")
