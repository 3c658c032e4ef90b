"""Complexes of groups over scwols, with their coverings and deck groups."""
from .cog import ComplexOfGroups, CogMorphism, compose, find_homotopy, homotopic, identity, is_covering, validate_cog, validate_cog_morphism
from .deck import build_context, covering_from_subgroup, enumerate_deck_bruteforce, epsilon, verify_main_theorem
from .development import build_development, canonical_covering, induced_cog, star
from .fileformat import Workspace, parse, parse_file, serialize
from .groups import FiniteGroup, GroupHom, Subgroup
from .presentation import fundamental_group
from .scwol import Scwol, ScwolMorphism, validate_scwol

__all__ = [
    "CogMorphism",
    "ComplexOfGroups",
    "FiniteGroup",
    "GroupHom",
    "Scwol",
    "ScwolMorphism",
    "Subgroup",
    "Workspace",
    "build_context",
    "build_development",
    "canonical_covering",
    "compose",
    "covering_from_subgroup",
    "enumerate_deck_bruteforce",
    "epsilon",
    "find_homotopy",
    "fundamental_group",
    "homotopic",
    "identity",
    "induced_cog",
    "is_covering",
    "parse",
    "parse_file",
    "serialize",
    "star",
    "validate_cog",
    "validate_cog_morphism",
    "validate_scwol",
    "verify_main_theorem",
]

__version__ = "0.1.0"
