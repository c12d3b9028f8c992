"""Discrete curvature-line nets in Lie, Moebius and Laguerre sphere geometry.

Spheres, planes and points are lifted to vectors of pseudo-Euclidean spaces;
contact elements become isotropic lines, and principal, circular and conical
nets are checked and constructed through rank conditions on those lifts.
"""
__version__ = "0.1.0"

from .exceptions import (
    DegenerateConfigurationError,
    DegenerateFamilyError,
    GeometryError,
    ImaginarySphereError,
    IncidenceError,
    NonPlanarError,
    NotConicalError,
    NotIsotropicError,
    SchemaError,
    UnsupportedSpaceError,
)
from .pseudo_euclid import (
    BLASCHKE,
    DEFAULT_TOL,
    LAGUERRE_DUAL,
    LIE,
    MINKOWSKI,
    MOEBIUS,
    ProjectiveLine,
    Signature,
    Space,
    Subspace,
    euclidean_space,
    inner,
    numerical_rank,
    projective_distance,
    span_distance,
)
from .elements import INFINITY, Infinity, Plane, Point, Sphere, SphereElement
from .lie import (
    IsotropicLine,
    contact_element,
    lie_lift,
    lie_unlift,
    oriented_contact,
    point_and_plane_of,
    sphere_pencil_at,
)
from .moebius import Circle, circumcircle, concircular, moebius_lift, moebius_unlift, reflect_element
from .laguerre import (
    ConeOfRevolution,
    LaguerreAffine,
    blaschke_lift,
    blaschke_unlift,
    fit_cone,
    is_conical_quad,
    laguerre_transform,
)
from .grid import Grid, fill_by_hexahedra
from .qnets import (
    check_4d_consistency,
    check_consistency,
    complete_hexahedron,
    complete_hexahedron_in_quadric,
    complete_qnet,
    qnet_f_transform,
    quad_planarity,
)
from .congruences import (
    check_congruence_consistency,
    complete_congruence,
    complete_congruence_hexahedron,
    congruence_f_transform,
    focal_net,
    lines_intersect,
)
from .principal import (
    ContactElementNet,
    conical_complete,
    curvature_sphere_fields,
    is_circular_net,
    is_conical_net,
    is_principal,
    miquel_complete,
    pottmann_step,
    ribaucour_transform,
    synthesize_from_r_congruence,
    unique_isotropic_line_through,
)
from .sphere_congruences import (
    OrthogonalCircle,
    PlanarSphereFamily,
    PointPair,
    SinglePoint,
    classify_q_quad,
    common_tangent_spheres,
    is_q_congruence_quad,
    is_r_congruence_quad,
)
from .io import NetDocument, VerificationReport, export_obj, load_net, save_net
