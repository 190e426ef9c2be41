"""Fock–Goncharov coordinates, straightening and length-spectrum domination
for representations of punctured surface groups into PSL(2, C)."""
from .errors import FGDomError
from .moebius import MoebiusMap, cross_ratio, translation_length
from .surface import IdealTriangulation, NormalCurve, build_triangulation, standard_triangulation
from .representation import (
    FGCoordinates,
    FramedRepresentation,
    fg_from_framed,
    holonomy_from_fg,
)
from .pleat import bending_data, straighten
from .curves import enumerate_simple, curve_holonomy
from .domination import DominationCertificate, dominate, strict_dominator_filling, trig_gap
from .strip import realize_arc, strip_deform, verify_strict_increase

__all__ = [
    "FGDomError", "MoebiusMap", "cross_ratio", "translation_length",
    "IdealTriangulation", "NormalCurve", "build_triangulation", "standard_triangulation",
    "FGCoordinates", "FramedRepresentation", "fg_from_framed", "holonomy_from_fg",
    "bending_data", "straighten", "enumerate_simple", "curve_holonomy",
    "DominationCertificate", "dominate", "strict_dominator_filling", "trig_gap",
    "realize_arc", "strip_deform", "verify_strict_increase",
]
__version__ = "0.1.0"
