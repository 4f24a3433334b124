"""The invariant suite: every identity relating a Morse sequence, its
reference maps, critical complex, extension maps and flow, checked on one
sequence.  ``run_checks`` returns an ordered mapping name -> bool."""

from __future__ import annotations

import random

from . import _gf2
from .complex import codim1_faces
from .flow import (
    Maps,
    composite_path_check,
    extension_chain_map_check,
    extension_complex,
    flow_decomposition_check,
    flow_fixed_point_check,
    parity_theorem_check,
    restricted_path_exists,
    retraction_check,
)
from .functions import (
    basic_function_to_sequence,
    canonical_morse_function,
    gradient_field_of_function,
    is_acyclic,
    is_basic_morse_function,
    is_excellent,
    is_flat,
    is_morse_function_on_sequence,
    vf_to_morse_sequence,
)
from .homology import complex_to_presented
from .reference import chain_map_defect, coreference_map, duality_check, reference_map, squares_to_zero
from .sequence import (
    MorseSequence,
    arrange,
    check_skeleton_collapse,
    equivalent,
    gradient_vector_field,
    intervening_collapses,
    is_arranged,
    skeletons,
    validate,
)


class _Ctx:
    def __init__(self, seq: MorseSequence):
        self.seq = seq
        self.K = seq.target
        self.m = Maps(seq)
        self.index = {p: {f: i for i, f in enumerate(self.K.faces(p))} for p in range(self.K.dim + 1)}
        self.cindex = {p: {k: i for i, k in enumerate(seq.critical_of_dim(p))}
                       for p in range(self.K.dim + 1)}
        self.kc = complex_to_presented(self.K)

    def vec(self, faces, p) -> int:
        idx = self.index[p]
        v = 0
        for f in faces:
            v ^= 1 << idx[f]
        return v

    def cvec(self, crit, p) -> int:
        idx = self.cindex[p]
        v = 0
        for k in crit:
            v ^= 1 << idx[k]
        return v

    def faces_of(self, v, p) -> list:
        faces = self.K.faces(p)
        return [faces[i] for i in _gf2.bits(v)]

    def ref_columns(self, p) -> list:
        return [self.cvec(self.m.ref.raw(f), p) for f in self.K.faces(p)]


def _xor(sets) -> set:
    out: set = set()
    for s in sets:
        out.symmetric_difference_update(s)
    return out


def check_valid(c: _Ctx) -> bool:
    return validate(c.seq).ok


def check_reference_chain_map(c: _Ctx) -> bool:
    return chain_map_defect(c.seq, c.m.ref) == 0


def check_coreference_chain_map(c: _Ctx) -> bool:
    return chain_map_defect(c.seq, c.m.coref, dual=True) == 0


def check_critical_squares_zero(c: _Ctx) -> bool:
    return squares_to_zero(c.m.cc)


def check_duality(c: _Ctx) -> bool:
    return duality_check(c.seq, c.m.cc)


def check_frames_fix_critical(c: _Ctx) -> bool:
    for k in c.seq.critical:
        if c.m.ref.raw(k) != {k} or c.m.coref.raw(k) != {k}:
            return False
    return all(c.m.ref.raw(t) == frozenset() for t in c.seq.upper) and \
        all(c.m.coref.raw(s) == frozenset() for s in c.seq.lower)


def check_regular_chains_vanish(c: _Ctx) -> bool:
    """Chains of upper regular faces have zero reference and zero reference
    of their boundary; dually for lower regular faces and coboundaries."""
    rng = random.Random(1)
    seq, K = c.seq, c.K
    for p in range(K.dim + 1):
        ups = [f for f in K.faces(p) if f in seq.upper]
        lows = [f for f in K.faces(p) if f in seq.lower]
        for _ in range(5):
            ch = [f for f in ups if rng.random() < 0.5]
            if c.m.ref.apply_set(ch) or c.m.ref.apply_set(_xor(codim1_faces(f) for f in ch)):
                return False
            ch = [f for f in lows if rng.random() < 0.5]
            if c.m.coref.apply_set(ch) or c.m.coref.apply_set(_xor(K.cofaces(f) for f in ch)):
                return False
    return True


def check_reference_kernel(c: _Ctx) -> bool:
    """Chains with equal references have boundaries with equal references:
    the reference of the boundary vanishes on the kernel of the reference."""
    for p in range(1, c.K.dim + 1):
        for combo in _gf2.kernel_basis(c.ref_columns(p)):
            ch = c.faces_of(combo, p)
            if c.m.ref.apply_set(_xor(codim1_faces(f) for f in ch)):
                return False
    return True


def check_parity(c: _Ctx) -> bool:
    return parity_theorem_check(c.seq, c.m.ref, c.m.coref)


def check_restricted_paths(c: _Ctx) -> bool:
    seq = c.seq
    for nu in c.K:
        for k in seq.critical_of_dim(len(nu) - 1):
            if restricted_path_exists(seq, nu, k, "wedge", ref=c.m.ref) != (k in c.m.ref.raw(nu)):
                return False
            if restricted_path_exists(seq, nu, k, "vee", coref=c.m.coref) != (k in c.m.coref.raw(nu)):
                return False
    return True


def check_skeletons(c: _Ctx) -> bool:
    seq, K = c.seq, c.K
    sk = skeletons(seq)
    d = K.dim
    if d < 0:
        return True
    if len(sk.lower[0]) or sk.upper[d].face_set != K.face_set:
        return False
    for p in range(d + 1):
        lo, up = sk.lower[p].face_set, sk.upper[p].face_set
        if not lo <= up or up - lo != set(seq.critical_of_dim(p)):
            return False
        if p < d and not up <= sk.lower[p + 1].face_set:
            return False
    return True


def check_skeleton_collapse_(c: _Ctx) -> bool:
    return check_skeleton_collapse(c.seq)


def check_intervening_collapses(c: _Ctx) -> bool:
    return intervening_collapses(c.seq)


def check_reference_on_skeletons(c: _Ctx) -> bool:
    """On chains inside the upper p-skeleton the reference map keeps the
    critical part; outside the lower p-skeleton the coreference map does."""
    seq, K = c.seq, c.K
    sk = skeletons(seq)
    rng = random.Random(2)
    for p in range(K.dim + 1):
        inside = [f for f in sk.upper[p] if len(f) == p + 1]
        outside = [f for f in K.faces(p) if f not in sk.lower[p].face_set]
        for _ in range(5):
            ch = {f for f in inside if rng.random() < 0.5}
            if c.m.ref.apply_set(ch) != ch & seq.critical_set:
                return False
            ch = {f for f in outside if rng.random() < 0.5}
            if c.m.coref.apply_set(ch) != ch & seq.critical_set:
                return False
    return True


def check_reference_injective_on_skeleton_cycles(c: _Ctx) -> bool:
    """Distinct p-cycles of the upper p-skeleton have distinct references."""
    sk = skeletons(c.seq)
    for p in range(c.K.dim + 1):
        faces = [f for f in sk.upper[p] if len(f) == p + 1]
        cols = [c.vec(codim1_faces(f), p - 1) if p else 0 for f in faces]
        cycles = _gf2.kernel_basis(cols)
        images = []
        for z in cycles:
            ch = [faces[i] for i in _gf2.bits(z)]
            images.append(c.cvec(c.m.ref.apply_set(ch), p))
        if _gf2.rank(images) != len(images):
            return False
    return True


def check_homology_transport(c: _Ctx) -> bool:
    """The reference map sends cycles to critical cycles and boundaries to
    critical boundaries; cycles with equal reference are homologous; the
    extension of the reference of a cycle is homologous to it; extensions
    of critical cycles are cycles."""
    K, m, kc = c.K, c.m, c.kc
    cc = m.cc.presented
    for p in range(K.dim + 1):
        bspan = _gf2.Span(kc.columns(p + 1))
        cbspan = _gf2.Span(cc.columns(p + 1))
        cycles = _gf2.kernel_basis(kc.columns(p), len(kc.basis(p)))
        for z in cycles:
            ch = c.faces_of(z, p)
            r = m.ref.apply_set(ch)
            if p and cc.differential(c.cvec(r, p), p):
                return False
            back = m.ext.apply_set(r)
            if (c.vec(back, p) ^ z) not in bspan:
                return False
        for col in kc.columns(p + 1):
            r = m.ref.apply_set(c.faces_of(col, p))
            if c.cvec(r, p) not in cbspan:
                return False
        images = [c.cvec(m.ref.apply_set(c.faces_of(z, p)), p) for z in cycles]
        for combo in _gf2.kernel_basis(images):
            z = 0
            for i in _gf2.bits(combo):
                z ^= cycles[i]
            if z not in bspan:
                return False
        for combo in _gf2.kernel_basis(cc.columns(p), len(cc.basis(p))):
            crit = cc.to_labels(combo, p)
            ext = m.ext.apply_set(crit)
            if p and _xor(codim1_faces(f) for f in ext):
                return False
    return True


def check_retraction(c: _Ctx) -> bool:
    return retraction_check(c.seq, c.m)


def check_extension_supports(c: _Ctx) -> bool:
    """Each extension contains its critical face and otherwise only upper
    regular faces, inside the upper skeleton; dually for coextensions."""
    seq, m = c.seq, c.m
    sk = skeletons(seq)
    for k in seq.critical:
        p = len(k) - 1
        e, ce = m.ext.raw(k), m.coext.raw(k)
        if k not in e or not (e - {k}) <= seq.upper:
            return False
        if k not in ce or not (ce - {k}) <= seq.lower:
            return False
        if not e <= sk.upper[p].face_set or ce & sk.lower[p].face_set:
            return False
    return True


def check_extension_boundaries(c: _Ctx) -> bool:
    """The boundary of an extension has only critical or upper regular faces,
    and its critical part is the critical boundary; dually for coextensions."""
    seq, m, K = c.seq, c.m, c.K
    for k in seq.critical:
        bd = _xor(codim1_faces(f) for f in m.ext.raw(k))
        if bd & seq.lower:
            return False
        if bd & seq.critical_set != m.cc.boundary[k]:
            return False
        cobd = _xor(K.cofaces(f) for f in m.coext.raw(k))
        if cobd & seq.critical_set != m.cc.coboundary[k]:
            return False
    return True


def check_extension_chain_map(c: _Ctx) -> bool:
    return extension_chain_map_check(c.seq, c.m)


def check_flow_decomposition(c: _Ctx) -> bool:
    return flow_decomposition_check(c.seq, c.m)


def check_composite_paths(c: _Ctx) -> bool:
    return composite_path_check(c.seq, c.m)


def check_flow_fixed_points(c: _Ctx) -> bool:
    return flow_fixed_point_check(c.seq)


def check_homology_agreement(c: _Ctx) -> bool:
    bk = c.kc.betti_numbers()
    ccp = c.m.cc.presented
    if ccp.betti_numbers() != bk or ccp.cobetti_numbers() != bk:
        return False
    return extension_complex(c.seq, c.m.ext).betti_numbers() == bk


def check_morse_inequalities(c: _Ctx) -> bool:
    counts = c.seq.critical_counts()
    return all(n >= b for n, b in zip(counts, c.kc.betti_numbers()))


def check_field_round_trip(c: _Ctx) -> bool:
    V = gradient_vector_field(c.seq)
    if not is_acyclic(V, c.K):
        return False
    back = vf_to_morse_sequence(V, c.K)
    return validate(back).ok and equivalent(c.seq, back) and \
        reference_map(back) == c.m.ref and coreference_map(back) == c.m.coref


def check_function_round_trip(c: _Ctx) -> bool:
    f = canonical_morse_function(c.seq)
    if not is_morse_function_on_sequence(f, c.seq):
        return False
    if not (is_flat(f, c.K) and is_excellent(f, c.K) and is_basic_morse_function(f, c.K)):
        return False
    if gradient_field_of_function(f, c.K) != gradient_vector_field(c.seq):
        return False
    return basic_function_to_sequence(f, c.K).items == c.seq.items


def check_arrange(c: _Ctx) -> bool:
    a = arrange(c.seq)
    return validate(a).ok and is_arranged(a) and equivalent(a, c.seq) and \
        reference_map(a) == c.m.ref and coreference_map(a) == c.m.coref


CHECKS = {
    "valid sequence": check_valid,
    "frames fix critical faces": check_frames_fix_critical,
    "reference map commutes with boundary": check_reference_chain_map,
    "coreference map commutes with coboundary": check_coreference_chain_map,
    "critical boundary squares to zero": check_critical_squares_zero,
    "critical boundary and coboundary are dual": check_duality,
    "regular chains vanish": check_regular_chains_vanish,
    "reference kernel is boundary closed": check_reference_kernel,
    "path parity gives the frames": check_parity,
    "restricted paths exist iff membership": check_restricted_paths,
    "skeleton filtration": check_skeletons,
    "skeletons collapse": check_skeleton_collapse_,
    "intervening pairs collapse": check_intervening_collapses,
    "frames are projections on skeletons": check_reference_on_skeletons,
    "reference injective on skeleton cycles": check_reference_injective_on_skeleton_cycles,
    "homology transport": check_homology_transport,
    "extensions retract": check_retraction,
    "extension supports": check_extension_supports,
    "extension boundaries": check_extension_boundaries,
    "extension commutes with boundary": check_extension_chain_map,
    "stabilized flow factors through frames": check_flow_decomposition,
    "composite paths split at a critical face": check_composite_paths,
    "flow fixed points span the extension complex": check_flow_fixed_points,
    "betti numbers agree": check_homology_agreement,
    "morse inequalities": check_morse_inequalities,
    "vector field round trip": check_field_round_trip,
    "canonical function round trip": check_function_round_trip,
    "arrange preserves field and frames": check_arrange,
}

# Checks whose cost grows exponentially; skipped above these face counts.
EXPENSIVE = {
    "composite paths split at a critical face": 60,
    "flow fixed points span the extension complex": None,
}


def run_checks(seq: MorseSequence, only=None) -> dict:
    """Run every check (or those named in ``only``) and return name -> bool.

    A sequence that fails replay only reports the failed validation.
    """
    if not validate(seq).ok:
        return {"valid sequence": False}
    ctx = _Ctx(seq)
    out = {}
    for name, fn in CHECKS.items():
        if only is not None and name not in only:
            continue
        limit = EXPENSIVE.get(name)
        if limit is not None and len(seq.target) > limit:
            continue
        out[name] = bool(fn(ctx))
    return out
