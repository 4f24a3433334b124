"""Estimator-style front end: fit a Morse sequence to a complex, then move
chains to and from the critical complex."""

from __future__ import annotations

from pathlib import Path

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .complex import Chain, Complex, closure, read_cplx, simplex
from .exceptions import HeterogeneousChain, InvalidComplex, NotAFace
from .flow import coextension_map, extension_map
from .homology import betti_numbers
from .reference import coreference_map, critical_complex, reference_map
from .sequence import SCHEMES, MorseSequence, SeededTieBreak, gradient_vector_field, require_valid


def check_complex(X) -> Complex:
    """Accept a Complex, a path to a facet file, or an iterable of vertex lists."""
    if isinstance(X, Complex):
        return X
    if isinstance(X, MorseSequence):
        return X.target
    if isinstance(X, (str, Path)):
        return read_cplx(X)
    try:
        facets = [simplex(f) for f in X]
    except TypeError:
        raise InvalidComplex(f"cannot read a complex from {type(X).__name__}") from None
    return closure(facets)


def check_chain(c, K: Complex, dim: int | None = None) -> Chain:
    """Accept a Chain or an iterable of simplices; every member must lie in K."""
    if not isinstance(c, Chain):
        members = [simplex(s) for s in c]
        if not members and dim is None:
            raise HeterogeneousChain("an empty chain needs an explicit dimension")
        c = Chain(members, dim)
    elif dim is not None and c.dim != dim:
        raise HeterogeneousChain(f"chain has dimension {c.dim}, expected {dim}")
    for s in c.members:
        if s not in K:
            raise NotAFace(f"{list(s)} is not a face of the complex")
    return c


class MorseReduction(BaseEstimator):
    """Build a Morse sequence on a complex and expose its reference maps.

    Parameters
    ----------
    scheme : {"inc-max", "dec-max"}
        Maximal increasing or maximal decreasing construction.
    tiebreak : {"lex", "seeded"}
        How to choose among available moves.
    seed : int or None
        Required when ``tiebreak="seeded"``.

    Attributes
    ----------
    complex_, sequence_, reference_, coreference_, critical_complex_,
    extension_, coextension_, vector_field_, betti_, critical_counts_
    """

    def __init__(self, scheme="inc-max", tiebreak="lex", seed=None):
        self.scheme = scheme
        self.tiebreak = tiebreak
        self.seed = seed

    def _policy(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {sorted(SCHEMES)}, got {self.scheme!r}")
        if self.tiebreak == "lex":
            if self.seed is not None:
                raise ValueError("seed is only used with tiebreak='seeded'")
            return "lex"
        if self.tiebreak == "seeded":
            if not isinstance(self.seed, int) or isinstance(self.seed, bool):
                raise ValueError("tiebreak='seeded' needs an integer seed")
            return SeededTieBreak(self.seed)
        raise ValueError(f"tiebreak must be 'lex' or 'seeded', got {self.tiebreak!r}")

    def fit(self, X, y=None):
        """X is a complex (see :func:`check_complex`) or a ready-made Morse sequence."""
        if isinstance(X, MorseSequence):
            self._policy()
            seq = require_valid(X)
        else:
            policy = self._policy()
            seq = SCHEMES[self.scheme](check_complex(X), policy)
        self.complex_ = seq.target
        self.sequence_ = seq
        self.reference_ = reference_map(seq)
        self.coreference_ = coreference_map(seq)
        self.critical_complex_ = critical_complex(seq, self.reference_, self.coreference_)
        self.extension_ = extension_map(seq, self.coreference_)
        self.coextension_ = coextension_map(seq, self.reference_)
        self.vector_field_ = gradient_vector_field(seq)
        self.betti_ = betti_numbers(seq.target)
        self.critical_counts_ = seq.critical_counts()
        return self

    def transform(self, X):
        """Reference map applied to each chain in X."""
        check_is_fitted(self, "sequence_")
        return [self.reference_(check_chain(c, self.complex_)) for c in X]

    def inverse_transform(self, X):
        """Extension map applied to each critical chain in X."""
        check_is_fitted(self, "sequence_")
        out = []
        for c in X:
            c = check_chain(c, self.complex_)
            bad = [list(s) for s in c.members if s not in self.sequence_.critical_set]
            if bad:
                raise NotAFace(f"{bad[0]} is not a critical face")
            out.append(self.extension_(c))
        return out

    def fit_transform(self, X, y=None, chains=()):
        return self.fit(X).transform(chains)
