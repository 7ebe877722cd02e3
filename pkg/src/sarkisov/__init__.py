"""Equivariant Sarkisov links between rank-3 Mori fibre spaces with connected
automorphism groups: the families, their invariants, toric models and links."""

from .binforms import BinaryForm, parse_form, squarefree_decomposition, odd_part, root_stats
from .spaces import (F, P, U, S, V, W, R, Q, P3, Q3, P1112, P1123, MoriFibreSpace,
                     InvalidSpace, validate, normalize, spaces_equal, is_maximal,
                     non_maximality_witness, aut_info, orbit_structure)
from .intersection import intersection_data
from .links import (enumerate_links, apply_link, inverse, find_path,
                    canonical_representative, link_catalog)

__version__ = "0.1.0"

__all__ = [
    "BinaryForm", "parse_form", "squarefree_decomposition", "odd_part", "root_stats",
    "F", "P", "U", "S", "V", "W", "R", "Q", "P3", "Q3", "P1112", "P1123",
    "MoriFibreSpace", "InvalidSpace", "validate", "normalize", "spaces_equal",
    "is_maximal", "non_maximality_witness", "aut_info", "orbit_structure",
    "intersection_data", "enumerate_links", "apply_link", "inverse", "find_path",
    "canonical_representative", "link_catalog",
]
