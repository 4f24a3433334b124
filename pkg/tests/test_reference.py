import random

import pytest
from hypothesis import given, settings

from morseq import (
    Chain,
    arrange,
    coreference_map,
    critical_complex,
    homologous,
    reference_map,
    vf_to_morse_sequence,
)
from morseq.complex import codim1_faces
from morseq.exceptions import InvalidSequence
from morseq.homology import complex_to_presented
from morseq.reference import chain_map_defect, duality_check, squares_to_zero
from morseq.sequence import Expand, Fill, MorseSequence, gradient_vector_field

from _gen import all_fill, random_chain, sequences


def parity_oracle(seq):
    """Reference map from the parity of explicitly listed gradient paths,
    written without the package's path code."""
    partner = dict(seq.pairs)
    crit = seq.critical_set
    table = {}
    for nu in seq.target:
        counts = {}
        stack = [nu]
        while stack:
            s = stack.pop()
            if s in crit:
                counts[s] = counts.get(s, 0) + 1
            elif s in partner:
                t = partner[s]
                stack.extend(f for f in codim1_faces(t) if f != s)
        table[nu] = frozenset(k for k, n in counts.items() if n % 2)
    return table


def _boundary(chain):
    out = set()
    for f in chain:
        out ^= set(codim1_faces(f))
    return out


def test_triangle_reference(seq_v):
    ref = reference_map(seq_v)
    for v in [(0,), (1,), (2,)]:
        assert ref[v] == Chain([(0,)])
    for f in [(0, 1), (0, 2), (1, 2), (0, 1, 2)]:
        assert not ref[f]


def test_collapsible_coreference(seq_v):
    coref = coreference_map(seq_v)
    assert coref[(0,)] == Chain([(0,)])
    assert all(not coref[f] for f in seq_v.target if f != (0,))


def test_all_fill_frames_are_identity(torus):
    seq = all_fill(torus)
    ref, coref = reference_map(seq), coreference_map(seq)
    for f in torus:
        assert ref.raw(f) == coref.raw(f) == {f}
    assert chain_map_defect(seq) == 0


def test_dunce_hat_values(dunce_seq):
    b, c = (1, 2), (3, 5, 7)
    assert dunce_seq.critical_of_dim(1) == (b,) and dunce_seq.critical_of_dim(2) == (c,)
    ref, coref = reference_map(dunce_seq), coreference_map(dunce_seq)
    z = Chain([(0, 1), (1, 2), (0, 2)])
    assert ref(z) == Chain([b])
    for t in dunce_seq.target.faces(2):
        assert coref.raw(t) == {c}
    cc = critical_complex(dunce_seq)
    assert cc.boundary[c] == {b}
    assert cc.coboundary[b] == {c}
    assert duality_check(dunce_seq, cc)


def test_reference_does_not_detect_trivial_cycles(dunce_seq):
    # z bounds (the hat has no 1-homology) yet its reference is the critical edge
    K = dunce_seq.target
    cc = complex_to_presented(K)
    z = Chain([(0, 1), (1, 2), (0, 2)])
    assert homologous(z, Chain.zero(1), cc)
    assert reference_map(dunce_seq)(z) == Chain([(1, 2)])


def test_torus_critical_complex_is_zero(torus_seq):
    cc = critical_complex(torus_seq)
    assert cc.is_zero()
    assert cc.betti_numbers() == [1, 2, 1]
    b, d = torus_seq.critical_of_dim(1)[0], torus_seq.critical_of_dim(2)[0]
    assert b not in cc.boundary[d] and d not in cc.coboundary[b]


def test_single_vertex():
    from morseq import closure, increasing_scheme

    seq = increasing_scheme(closure([(0,)]))
    cc = critical_complex(seq)
    assert cc.betti_numbers() == [1] and cc.is_zero() and duality_check(seq)


def test_scan_rejects_out_of_order_items(triangle):
    bad = MorseSequence([Fill((0,)), Expand((0, 2), (0, 1, 2))], triangle)
    with pytest.raises(InvalidSequence):
        reference_map(bad)


@settings(max_examples=80, deadline=None)
@given(sequences())
def test_reference_matches_path_parity_oracle(seq):
    ref = reference_map(seq)
    assert {f: ref.raw(f) for f in seq.target} == parity_oracle(seq)


@settings(max_examples=80, deadline=None)
@given(sequences())
def test_frame_invariants(seq):
    ref, coref = reference_map(seq), coreference_map(seq)
    for f in seq.target:
        assert ref.raw(f) <= seq.critical_set and coref.raw(f) <= seq.critical_set
        assert all(len(k) == len(f) for k in ref.raw(f) | coref.raw(f))
    for k in seq.critical:
        assert ref.raw(k) == coref.raw(k) == {k}


@settings(max_examples=80, deadline=None)
@given(sequences())
def test_chain_map_identities(seq):
    assert chain_map_defect(seq) == 0
    assert chain_map_defect(seq, dual=True) == 0
    cc = critical_complex(seq)
    assert squares_to_zero(cc)
    assert duality_check(seq, cc)


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_frames_depend_only_on_the_field(seq):
    ref, coref = reference_map(seq), coreference_map(seq)
    for other in (arrange(seq), vf_to_morse_sequence(gradient_vector_field(seq), seq.target)):
        assert reference_map(other) == ref
        assert coreference_map(other) == coref


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_colliding_chains_have_colliding_boundaries(seq):
    ref = reference_map(seq)
    rng = random.Random(3)
    K = seq.target
    for p in range(1, K.dim + 1):
        ups = [f for f in K.faces(p) if f in seq.upper]
        c = random_chain(rng, K.faces(p))
        c2 = set(c) ^ set(random_chain(rng, ups))
        assert ref.apply_set(c) == ref.apply_set(c2)
        assert ref.apply_set(_boundary(c)) == ref.apply_set(_boundary(c2))


def test_report_json(dunce_seq):
    cc = critical_complex(dunce_seq)
    js = cc.to_json()
    assert js["2"] == {"basis": [[3, 5, 7]], "boundary": [[0]]}
    assert reference_map(dunce_seq).to_json()["1 2"] == [[1, 2]]
