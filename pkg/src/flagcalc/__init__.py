"""Signed-word calculus: unordered presentation classes, pairing trees,
abelian shadows, and an exact-geometry oracle on punctured planes."""

from .abelian import (
    AbelianVector,
    HomologyClass,
    RelationLattice,
    SignedMultiset,
    abelianize,
    diagram_check,
    difference_map,
    multiset_quotient,
    reduce_coset,
    tower_image,
)
from .errors import (
    DomainError,
    FlagcalcError,
    ParseError,
    RayDegeneracyError,
    RerouteError,
    ResourceLimitError,
    UnknownGeneratorError,
)
from .plane import (
    FlaggedLoop,
    FreeWord,
    GroupLawReport,
    Point,
    PuncturedPlane,
    connected_sum,
    crossing_word,
    normalize_flag,
    sample_loops,
    verify_group_law,
    winding_number,
    winding_profile,
)
from .trees import (
    Leaf,
    Node,
    PairingTree,
    RootedPresentation,
    eval_tree,
    flip,
    move_closure,
    word_to_tree,
)
from .words import (
    MINUS,
    PLUS,
    CanonicalPolicy,
    GeneratorSet,
    PresentationClass,
    Sign,
    SignedLetter,
    SignedWord,
    class_of,
    pair,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianVector",
    "CanonicalPolicy",
    "DomainError",
    "FlagcalcError",
    "FlaggedLoop",
    "FreeWord",
    "GeneratorSet",
    "GroupLawReport",
    "HomologyClass",
    "Leaf",
    "MINUS",
    "Node",
    "PLUS",
    "PairingTree",
    "ParseError",
    "Point",
    "PresentationClass",
    "PuncturedPlane",
    "RayDegeneracyError",
    "RelationLattice",
    "RerouteError",
    "ResourceLimitError",
    "RootedPresentation",
    "Sign",
    "SignedLetter",
    "SignedMultiset",
    "SignedWord",
    "UnknownGeneratorError",
    "abelianize",
    "class_of",
    "connected_sum",
    "crossing_word",
    "diagram_check",
    "difference_map",
    "eval_tree",
    "flip",
    "move_closure",
    "multiset_quotient",
    "normalize_flag",
    "pair",
    "reduce_coset",
    "sample_loops",
    "tower_image",
    "verify_group_law",
    "winding_number",
    "winding_profile",
    "word_to_tree",
]
