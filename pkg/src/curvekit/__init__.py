"""curvekit: decide when two closed curves on a surface are related by a
mapping class, with explicit witnesses.

The package works with compact orientable surfaces of genus at least two.
Curves are given as cyclic words in standard fundamental-group generators;
simple multicurves can also be given as edge-weight vectors on a reference
triangulation or as Dehn-Thurston coordinates.
"""

from .errors import (
    CalibrationMissing,
    CurvekitError,
    Inessential,
    InessentialComponent,
    InvalidSignature,
    MalformedBijection,
    NoCenter,
    NoRealization,
    NonInvertible,
    NonPrimitive,
    NotAdmissible,
    NotConjugate,
    NotFilling,
    NotInDomain,
    NotSame,
    NotSimple,
    ResourceLimit,
    TrivialElement,
    UnknownLetter,
    VertexCollision,
)
from .curves import (
    AdmissibleVector,
    CyclicWord,
    NormalCurve,
    admissible,
    component_words,
    cyclic_reduce,
    enumerate_admissible,
    normal_to_word,
    normalize,
    reconstruct,
    t_length,
    tighten,
    word_to_normal,
)
from .group_core import GroupPresentation
from .surface_model import MarkedSurface, SurfaceSig, Triangulation, build_standard

__version__ = "0.1.0"

__all__ = [
    "GroupPresentation",
    "SurfaceSig",
    "Triangulation",
    "MarkedSurface",
    "build_standard",
    "CyclicWord",
    "NormalCurve",
    "AdmissibleVector",
    "cyclic_reduce",
    "normalize",
    "word_to_normal",
    "normal_to_word",
    "component_words",
    "tighten",
    "t_length",
    "admissible",
    "reconstruct",
    "enumerate_admissible",
    "CurvekitError",
    "CalibrationMissing",
    "Inessential",
    "InessentialComponent",
    "InvalidSignature",
    "MalformedBijection",
    "NoCenter",
    "NoRealization",
    "NonInvertible",
    "NonPrimitive",
    "NotAdmissible",
    "NotConjugate",
    "NotFilling",
    "NotInDomain",
    "NotSame",
    "NotSimple",
    "ResourceLimit",
    "TrivialElement",
    "UnknownLetter",
    "VertexCollision",
    "__version__",
]
