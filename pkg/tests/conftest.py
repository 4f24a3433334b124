import pytest

from morseq import Expand, Fill, MorseSequence, closure
from morseq.datasets import load_complex, load_field, load_sequence

A, B, C = 0, 1, 2


@pytest.fixture
def triangle():
    return closure([(A, B, C)])


@pytest.fixture
def seq_v(triangle):
    """<{a}, ({b},{a,b}), ({c},{b,c}), ({a,c},{a,b,c})>"""
    return MorseSequence([Fill((A,)), Expand((B,), (A, B)), Expand((C,), (B, C)),
                          Expand((A, C), (A, B, C))], triangle)


@pytest.fixture
def seq_w(triangle):
    """<{a}, ({c},{a,c}), ({b},{b,c}), ({a,b},{a,b,c})>"""
    return MorseSequence([Fill((A,)), Expand((C,), (A, C)), Expand((B,), (B, C)),
                          Expand((A, B), (A, B, C))], triangle)


@pytest.fixture
def torus():
    return load_complex("torus")


@pytest.fixture
def dunce_hat():
    return load_complex("dunce_hat")


@pytest.fixture
def dunce_seq():
    return load_sequence("dunce_hat")


@pytest.fixture
def torus_seq():
    return load_sequence("torus")


@pytest.fixture
def split_seq():
    from morseq import vf_to_morse_sequence

    return vf_to_morse_sequence(load_field("gradient_split"), load_complex("gradient_split"))


@pytest.fixture
def square_seq():
    from morseq import vf_to_morse_sequence

    return vf_to_morse_sequence(load_field("square_with_diagonal"), load_complex("square_with_diagonal"))

