"""Hopf Galois structures on separable extensions of small degree.

Permutations are written with 1-based points in the public API; the
composition convention is (p * q)(x) = p(q(x)).
"""

from .perm import Perm, PermGroup, PermError, from_cycles, parse_perm, symmetric_group, alternating_group, cyclic_group
from .algos import (
    all_subgroups,
    automorphism_group,
    are_conjugate,
    find_isomorphism,
    is_isomorphic,
    normalizer,
    subgroup_class_reps,
)
from .zoo import GroupType, groups_of_order, group_type, make_2p2
from .holomorph import holomorph, holomorph_data, left_regular, right_regular, opposite
from .catalog import CatalogEntry, enumerate_transitive, load_catalog, transitive_groups, validate_catalog
from .engine import ExtensionContext, HgsRecord, find_hgs, direct_hgs
from .props import classify, g_iso_classes, is_almost_classical, has_bijective_correspondence
from .report import DegreeSummary, RunOptions, run_degree

__version__ = "0.1.0"

__all__ = [
    "Perm", "PermGroup", "PermError", "from_cycles", "parse_perm", "symmetric_group", "alternating_group",
    "cyclic_group", "all_subgroups", "automorphism_group", "are_conjugate", "find_isomorphism", "is_isomorphic",
    "normalizer", "subgroup_class_reps", "GroupType", "groups_of_order", "group_type", "make_2p2", "holomorph",
    "holomorph_data", "left_regular", "right_regular", "opposite", "CatalogEntry", "enumerate_transitive",
    "load_catalog", "transitive_groups", "validate_catalog", "ExtensionContext", "HgsRecord", "find_hgs",
    "direct_hgs", "classify", "g_iso_classes", "is_almost_classical", "has_bijective_correspondence",
    "DegreeSummary", "RunOptions", "run_degree",
]
