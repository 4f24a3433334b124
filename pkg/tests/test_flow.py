import pytest
from hypothesis import given, settings

from morseq import Chain, Expand, MorseSequence, closure, increasing_scheme
from morseq.exceptions import IterationCap
from morseq.flow import (
    FlowOperator,
    Maps,
    coextension_map,
    composite_path_check,
    composite_paths,
    count_cogradient_paths,
    count_gradient_paths,
    extension_chain_map_check,
    extension_complex,
    extension_map,
    flow,
    flow_apply,
    flow_decomposition_check,
    flow_fixed_point_check,
    flow_stabilize,
    gradient_dot,
    gradient_paths,
    parity_theorem_check,
    restricted_path,
    restricted_path_exists,
    retraction_check,
    split_composite,
)
from morseq.reference import reference_map

from _gen import all_fill, sequences


def test_triangle_path_counts(seq_v):
    assert count_gradient_paths(seq_v, (1,), (0,)) == 1
    assert list(gradient_paths(seq_v, (1,))) == [((1,), (0, 1), (0,))]
    assert count_gradient_paths(seq_v, (0,), (0,)) == 1
    assert count_cogradient_paths(seq_v, (0,), (0,)) == 1
    assert count_gradient_paths(seq_v, (0, 1), (0,)) == 0


def test_two_paths_but_no_restricted_path(split_seq):
    a, b = (1, 2), (4, 5)
    assert b in split_seq.critical_set
    assert count_gradient_paths(split_seq, a, b) == 2
    paths = list(gradient_paths(split_seq, a, b))
    assert len(paths) == 2 and len(set(paths)) == 2
    assert b not in reference_map(split_seq).raw(a)
    assert not restricted_path_exists(split_seq, a, b)
    assert parity_theorem_check(split_seq)


def test_trivial_restricted_paths(dunce_seq):
    for k in dunce_seq.critical:
        assert restricted_path(dunce_seq, k, k) == (k,)
        assert restricted_path(dunce_seq, k, k, "vee") == (k,)
    with pytest.raises(ValueError):
        restricted_path_exists(dunce_seq, (0,), (0,), "sideways")


def test_dunce_hat_restricted_path_to_critical_edge(dunce_seq):
    b = (1, 2)
    ref = reference_map(dunce_seq)
    edges = [e for e in dunce_seq.target.faces(1) if ref.raw(e) == {b} and e != b]
    assert edges
    for e in edges:
        path = restricted_path(dunce_seq, e, b, ref=ref)
        assert path.start == e and path.end == b
        assert all(b in ref.raw(s) for s in path.main)


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_parity_theorem(seq):
    assert parity_theorem_check(seq)


def test_parity_on_fixtures(dunce_seq, torus_seq, torus):
    for seq in (dunce_seq, torus_seq, all_fill(torus)):
        assert parity_theorem_check(seq)


def test_extension_values(dunce_seq, seq_v, torus):
    ext = extension_map(dunce_seq)
    assert ext.raw((3, 5, 7)) == set(dunce_seq.target.faces(2))
    assert extension_map(seq_v).raw((0,)) == {(0,)}
    fill = all_fill(torus)
    e, ce = extension_map(fill), coextension_map(fill)
    assert all(e.raw(f) == ce.raw(f) == {f} for f in torus)


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_extension_identities(seq):
    m = Maps(seq)
    assert retraction_check(seq, m)
    assert extension_chain_map_check(seq, m)
    for k in seq.critical:
        e, ce = m.ext.raw(k), m.coext.raw(k)
        assert len(e & seq.critical_set) == 1 and len(ce & seq.critical_set) == 1


def test_extension_boundary_on_dunce_hat(dunce_seq):
    m = Maps(dunce_seq)
    c, b = (3, 5, 7), (1, 2)
    bd = set()
    for t in m.ext.raw(c):
        bd ^= {t[:i] + t[i + 1:] for i in range(3)}
    assert bd == set(m.ext.raw(b))


def test_flow_on_critical_face_is_extension(dunce_seq):
    m = Maps(dunce_seq)
    op = flow(dunce_seq)
    for k in dunce_seq.critical:
        assert flow_stabilize(op, Chain([k])) == m.ext[k]
    assert flow_stabilize(op, Chain.zero(1)) == Chain.zero(1)


def test_flow_on_cone(seq_v):
    op = flow(seq_v)
    assert flow_stabilize(op, Chain([(0,)])) == Chain([(0,)])
    assert flow_apply(op, Chain([(1,)])) == Chain([(0,)])


def test_flow_iteration_cap():
    # a closed path of pairs is not a Morse sequence; its flow cycles forever
    K = closure([(0, 1), (1, 2), (0, 2)])
    seq = MorseSequence([Expand((0,), (0, 1)), Expand((1,), (1, 2)), Expand((2,), (0, 2))], K)
    with pytest.raises(IterationCap):
        FlowOperator(seq).stabilize([(0,)])


@settings(max_examples=60, deadline=None)
@given(sequences())
def test_flow_decomposition(seq):
    assert flow_decomposition_check(seq)


@settings(max_examples=40, deadline=None)
@given(sequences(max_faces=20))
def test_composite_paths(seq):
    assert composite_path_check(seq)


def test_composite_paths_on_fixtures(split_seq, dunce_seq):
    for seq in (split_seq, dunce_seq):
        assert composite_path_check(seq)
    for walk, kinds in composite_paths(split_seq, (1, 2)):
        grad, k, cograd = split_composite(split_seq, walk, kinds)
        assert k in split_seq.critical_set and grad[-1] == cograd[0] == k


def test_extension_complex_square(square_seq):
    assert square_seq.critical_of_dim(1) == ((1, 3), (1, 4))
    ec = extension_complex(square_seq)
    elements = ec.elements(1)
    assert len(elements) == 4 and len(set(elements)) == 4
    assert all(e in ec for e in elements)
    assert ec.betti_numbers() == [1, 1, 0]


def test_extension_complex_torus_and_void(torus_seq):
    from morseq import Complex

    ec = extension_complex(torus_seq)
    assert ec.dim(1) == 2 and ec.betti_numbers() == [1, 2, 1]
    void = increasing_scheme(Complex())
    assert extension_complex(void).betti_numbers() == [0]


def test_fixed_points_triangle(seq_v):
    assert flow_fixed_point_check(seq_v)


def test_fixed_points_dunce_hat_sampled(dunce_seq):
    # 24 edges exceed the exhaustive bound, so degree 1 is sampled
    assert flow_fixed_point_check(dunce_seq, max_exhaustive=1 << 16)


@settings(max_examples=40, deadline=None)
@given(sequences(max_faces=20))
def test_fixed_points_random(seq):
    assert flow_fixed_point_check(seq, max_exhaustive=1 << 12)


def test_gradient_dot(seq_v):
    dot = gradient_dot(seq_v)
    assert dot.startswith("digraph gradient {")
    assert '"1" -> "0_1";' in dot
    assert '"0" [label="[0]", style=filled, fillcolor=red];' in dot
