"""Andrews-Curtis move algebra, invariants, coset enumeration and search
for balanced group presentations."""

from .presentation import (
    Cancel,
    CanonicalPresentation,
    Compose,
    Destabilize,
    Insert,
    Invert,
    Move,
    MovePolicy,
    Presentation,
    Replace,
    Rotate,
    Stabilize,
    Transcript,
    apply_move,
    enumerate_moves,
    format_presentation,
    format_transcript,
    inverse_moves,
    normalize,
    parse_presentation,
    parse_transcript,
    verify_transcript,
)

__version__ = "0.1.0"

__all__ = [
    "Cancel",
    "CanonicalPresentation",
    "Compose",
    "Destabilize",
    "Insert",
    "Invert",
    "Move",
    "MovePolicy",
    "Presentation",
    "Replace",
    "Rotate",
    "Stabilize",
    "Transcript",
    "apply_move",
    "enumerate_moves",
    "format_presentation",
    "format_transcript",
    "inverse_moves",
    "normalize",
    "parse_presentation",
    "parse_transcript",
    "verify_transcript",
    "__version__",
]
