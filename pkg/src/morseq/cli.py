"""Command-line front end.

Reports are single JSON documents on stdout (sorted keys); diagnostics go
to stderr.  Exit status: 0 ok, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .complex import Complex, format_cplx, parse_cplx
from .exceptions import CyclicField, MorseError, ParseError
from .flow import FlowOperator, Maps, extension_complex, gradient_dot
from .functions import (
    basic_function_to_sequence,
    canonical_morse_function,
    field_from_json,
    field_to_json,
    format_function,
    gradient_field_of_function,
    is_basic_morse_function,
    parse_function,
    vf_to_morse_sequence,
)
from .homology import betti_numbers
from .sequence import (
    SCHEMES,
    MorseSequence,
    SeededTieBreak,
    dumps_jsonl,
    gradient_vector_field,
    item_from_dict,
    validate,
)
from .suite import run_checks

COMMANDS = ("build", "morse", "betti", "reference", "flow", "convert-vf", "check", "export")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    scheme: str = "inc-max"
    tiebreak: str = "lex"
    seed: int | None = None
    format: str = "json"
    output: Path | None = None
    complex: Path | None = None

    def __post_init__(self):
        if self.tiebreak == "seeded" and self.seed is None:
            raise UsageError("--tiebreak seeded requires --seed")
        if self.tiebreak != "seeded" and self.seed is not None:
            raise UsageError("--seed is only meaningful with --tiebreak seeded")

    @property
    def policy(self):
        return SeededTieBreak(self.seed) if self.tiebreak == "seeded" else "lex"


def _faces(fs) -> list:
    return [list(f) for f in sorted(fs, key=lambda s: (len(s), s))]


def _key(s) -> str:
    return " ".join(map(str, s))


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_complex(path: Path) -> Complex:
    return parse_cplx(_read_text(path))


def _parse_items(text: str) -> list:
    items = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            items.append(item_from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(str(exc), lineno) from None
    return items


def load_sequence(cfg: RunConfig) -> MorseSequence:
    """A .jsonl input is read as a sequence (not yet validated); any other
    input is a facet file on which the configured scheme is run."""
    if cfg.input.suffix == ".jsonl":
        target = _read_complex(cfg.complex) if cfg.complex else None
        return MorseSequence(_parse_items(_read_text(cfg.input)), target)
    K = _read_complex(cfg.input)
    return SCHEMES[cfg.scheme](K, cfg.policy)


def _require_valid(seq: MorseSequence) -> MorseSequence:
    diag = validate(seq)
    if not diag:
        raise ParseError(f"invalid Morse sequence: {diag.clause} ({diag.message})",
                         diag.index + 1 if diag.index < len(seq) else None)
    return seq


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_build(cfg: RunConfig) -> int:
    """Parse a facet file and report its f-vector."""
    K = _read_complex(cfg.input)
    if cfg.format == "text":
        _emit(cfg, format_cplx(K))
        return 0
    report = {
        "dim": K.dim,
        "f_vector": K.f_vector(),
        "euler_characteristic": K.euler_characteristic(),
        "facets": _faces(K.facets()),
    }
    _emit(cfg, _json(report))
    return 0


def _summary(seq: MorseSequence) -> dict:
    counts = seq.critical_counts()
    betti = betti_numbers(seq.target)
    return {
        "critical_counts": counts,
        "betti": betti,
        "morse_inequalities": all(c >= b for c, b in zip(counts, betti)),
        "critical": _faces(seq.critical),
        "items": len(seq),
    }


def cmd_morse(cfg: RunConfig) -> int:
    """Run a construction scheme and summarize the critical faces."""
    seq = _require_valid(load_sequence(cfg))
    report = _summary(seq)
    if cfg.output is not None:
        cfg.output.write_text(dumps_jsonl(seq), encoding="utf-8")
        report["sequence_file"] = str(cfg.output)
    else:
        report["sequence"] = [it.to_dict() for it in seq]
    sys.stdout.write(_json(report))
    return 0 if report["morse_inequalities"] else 1


def cmd_betti(cfg: RunConfig) -> int:
    """Betti numbers of the complex, its critical complex and its extension complex."""
    seq = _require_valid(load_sequence(cfg))
    m = Maps(seq)
    b = betti_numbers(seq.target)
    cb = m.cc.betti_numbers()
    eb = extension_complex(seq, m.ext).betti_numbers()
    agree = b == cb == eb
    _emit(cfg, _json({"betti": b, "critical_betti": cb, "extension_betti": eb, "agree": agree}))
    return 0 if agree else 1


def cmd_reference(cfg: RunConfig) -> int:
    """Reference and coreference maps with the critical boundary and coboundary."""
    seq = _require_valid(load_sequence(cfg))
    m = Maps(seq)
    report = {
        "reference": m.ref.to_json(),
        "coreference": m.coref.to_json(),
        "critical_complex": m.cc.to_json(),
        "critical_coboundary": {_key(k): _faces(v) for k, v in m.cc.coboundary.items()},
    }
    _emit(cfg, _json(report))
    return 0


def cmd_flow(cfg: RunConfig) -> int:
    """Stabilized gradient flow tables, or the gradient drawn as DOT."""
    seq = _require_valid(load_sequence(cfg))
    if cfg.format == "dot":
        _emit(cfg, gradient_dot(seq))
        return 0
    m = Maps(seq)
    fl, cofl = FlowOperator(seq), FlowOperator(seq, co=True)
    report = {
        "extension": m.ext.to_json(),
        "coextension": m.coext.to_json(),
        "flow": {_key(s): _faces(fl.stabilize([s])) for s in seq.target},
        "coflow": {_key(s): _faces(cofl.stabilize([s])) for s in seq.target},
    }
    _emit(cfg, _json(report))
    return 0


def cmd_convert_vf(cfg: RunConfig) -> int:
    """Convert a vector field or Morse function into a Morse sequence.

    A .json vector field needs --complex; anything else is read as a Morse
    function text file."""
    if cfg.input.suffix == ".json":
        if cfg.complex is None:
            raise UsageError("convert-vf on a vector field needs --complex")
        K = _read_complex(cfg.complex)
        V = field_from_json(_read_text(cfg.input))
        make = lambda: vf_to_morse_sequence(V, K)
    else:
        f = parse_function(_read_text(cfg.input))
        K = f.complex
        if is_basic_morse_function(f, K):
            make = lambda: basic_function_to_sequence(f, K)
        else:
            V = gradient_field_of_function(f, K)
            make = lambda: vf_to_morse_sequence(V, K)
    try:
        seq = make()
    except CyclicField as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.stdout.write(_json({"acyclic": False}))
        return 1
    _emit(cfg, dumps_jsonl(seq))
    return 0


def cmd_check(cfg: RunConfig) -> int:
    """Validate a sequence and run the identity checks."""
    seq = load_sequence(cfg)
    diag = validate(seq)
    if not diag:
        report = {"pass": False, "checks": {"valid sequence": False},
                  "clause": diag.clause, "message": diag.message}
    else:
        checks = run_checks(seq)
        report = {"pass": all(checks.values()), "checks": checks,
                  "critical_counts": seq.critical_counts()}
    _emit(cfg, _json(report))
    return 0 if report["pass"] else 1


def cmd_export(cfg: RunConfig) -> int:
    """Export the gradient field (json), a DOT drawing (dot) or the canonical function (text)."""
    seq = _require_valid(load_sequence(cfg))
    if cfg.format == "dot":
        _emit(cfg, gradient_dot(seq))
    elif cfg.format == "text":
        _emit(cfg, format_function(canonical_morse_function(seq)))
    else:
        _emit(cfg, field_to_json(gradient_vector_field(seq)) + "\n")
    return 0


HANDLERS = {
    "build": cmd_build,
    "morse": cmd_morse,
    "betti": cmd_betti,
    "reference": cmd_reference,
    "flow": cmd_flow,
    "convert-vf": cmd_convert_vf,
    "check": cmd_check,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morseq", description="Morse sequences on simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=(HANDLERS[name].__doc__ or "").split("\n")[0] or None)
        p.add_argument("input", type=Path, help=".cplx facet file, .jsonl sequence, or as the command needs")
        p.add_argument("--scheme", choices=sorted(SCHEMES), default="inc-max")
        p.add_argument("--tiebreak", choices=["lex", "seeded"], default="lex")
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        p.add_argument("--output", type=Path)
        p.add_argument("--complex", type=Path, help="target complex for .jsonl or vector field input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = RunConfig(command=args.command, input=args.input, scheme=args.scheme,
                        tiebreak=args.tiebreak, seed=args.seed, format=args.format,
                        output=args.output, complex=args.complex)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except MorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
