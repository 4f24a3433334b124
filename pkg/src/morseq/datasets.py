"""Bundled example complexes, sequences and vector fields."""

from __future__ import annotations

from importlib.resources import files

from .complex import Complex, parse_cplx
from .functions import field_from_json
from .sequence import MorseSequence, VectorField, loads_jsonl

COMPLEXES = ("torus", "dunce_hat", "tetrahedron_boundary", "triangle",
             "gradient_split", "square_with_diagonal")


def fixture_path(filename: str):
    return files("morseq") / "data" / filename


def _text(filename: str) -> str:
    return fixture_path(filename).read_text(encoding="utf-8")


def load_complex(name: str) -> Complex:
    return parse_cplx(_text(f"{name}.cplx"))


def load_sequence(name: str) -> MorseSequence:
    """The stored sequence ``<name>.jsonl`` on the complex ``<name>.cplx``."""
    return loads_jsonl(_text(f"{name}.jsonl"), load_complex(name))


def load_field(name: str) -> VectorField:
    return field_from_json(_text(f"{name}_field.json"))
