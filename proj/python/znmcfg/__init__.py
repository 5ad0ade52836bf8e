"""Multiple context-free grammars for the word problem of Z^n."""

from ._core import (
    DerivationError,
    FormatError,
    InvariantFailure,
    PreconditionError,
    UnsupportedGrammar,
    burago_partition,
    check_derivation,
    displacement,
    grammar_params,
    is_identity,
    make_grammar,
    recognize,
    synthesize_word,
    validate_grammar,
)

__all__ = [
    "DerivationError",
    "FormatError",
    "InvariantFailure",
    "PreconditionError",
    "UnsupportedGrammar",
    "burago_partition",
    "check_derivation",
    "displacement",
    "grammar_params",
    "is_identity",
    "make_grammar",
    "recognize",
    "synthesize_word",
    "validate_grammar",
]
