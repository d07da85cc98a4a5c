"""Digital images in Z^n and multivalued functions between them.

Quick tour::

    from mvtopo import DigitalImage, MultiFn, analyze

    X = DigitalImage.interval(0, 1)
    Y = DigitalImage.interval(0, 2)
    F = MultiFn(X, Y, {0: {0, 1}, 1: {2}})
    analyze(F)   # weak, not strong, continuous with a level-2 witness
"""

from mvtopo._kernels import BACKEND
from mvtopo.constructors import (
    EXTEND_CP_VARIANTS,
    const_component_surjection,
    const_total,
    extend_cp,
    extend_via_retraction,
    extend_weak,
    is_retraction,
    retract_boundary,
    retract_nearest,
    wedge_fns,
    wedge_images,
    wedge_witness,
)
from mvtopo.errors import (
    DomainError,
    InvalidInputError,
    MVTopoError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    UnreachableError,
)
from mvtopo.grid import (
    AdjacencySpec,
    DigitalImage,
    Point,
    adjacent_or_equal,
    boundary,
    c,
    components,
    dist_to_set,
    is_adjacent,
    is_connected,
    is_sv_continuous,
    near_set,
    neighbors,
)
from mvtopo.multifun import (
    DEFAULT_RMAX,
    Continuity,
    ContinuityWitness,
    MultiFn,
    PropertyReport,
    analyze,
    compose,
    find_witness,
    image_of_set,
    is_cp,
    is_strong,
    is_weak,
    point_images_connected,
    refine_witness,
    search_level,
    verify_witness,
)
from mvtopo.subdivision import SubdividedImage, cut_points, project, subdivide

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_RMAX",
    "EXTEND_CP_VARIANTS",
    "AdjacencySpec",
    "Continuity",
    "ContinuityWitness",
    "DigitalImage",
    "DomainError",
    "InvalidInputError",
    "MVTopoError",
    "MultiFn",
    "ParseError",
    "Point",
    "PreconditionError",
    "PropertyReport",
    "ResourceLimitError",
    "SubdividedImage",
    "UnreachableError",
    "adjacent_or_equal",
    "analyze",
    "boundary",
    "c",
    "components",
    "compose",
    "const_component_surjection",
    "const_total",
    "cut_points",
    "dist_to_set",
    "extend_cp",
    "extend_via_retraction",
    "extend_weak",
    "find_witness",
    "image_of_set",
    "is_adjacent",
    "is_connected",
    "is_cp",
    "is_retraction",
    "is_strong",
    "is_sv_continuous",
    "is_weak",
    "near_set",
    "neighbors",
    "point_images_connected",
    "project",
    "refine_witness",
    "retract_boundary",
    "retract_nearest",
    "search_level",
    "subdivide",
    "verify_witness",
    "wedge_fns",
    "wedge_images",
    "wedge_witness",
]
