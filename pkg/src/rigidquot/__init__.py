"""Exact classification of rigid diagonal actions of A x| Z_d on E^{n-1} x C."""

from .census import CensusTable, SingularityType, is_canonical_type, singularity_census
from .characters import OneDimCharacter, chevalley_weil_mult, elliptic_character, is_rigid_action
from .classification import classify, cyclic_six, minimal_group, xmin_tuple
from .groups import Group, GroupElement, automorphism_group, make_group, quotient_group
from .toric import LatticeData, resolution_fan, verify_resolution
from .triples import ActionTuple, GeneratingTriple, enumerate_generating_triples, hurwitz_genus

__all__ = [
    "ActionTuple",
    "CensusTable",
    "GeneratingTriple",
    "Group",
    "GroupElement",
    "LatticeData",
    "OneDimCharacter",
    "SingularityType",
    "automorphism_group",
    "chevalley_weil_mult",
    "classify",
    "cyclic_six",
    "elliptic_character",
    "enumerate_generating_triples",
    "hurwitz_genus",
    "is_canonical_type",
    "is_rigid_action",
    "make_group",
    "minimal_group",
    "quotient_group",
    "resolution_fan",
    "singularity_census",
    "verify_resolution",
    "xmin_tuple",
]
