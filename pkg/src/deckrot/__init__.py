"""deckrot: distortion-detecting invariants for circle, annulus and torus
homeomorphisms given by deck-equivariant lifts.

Computes the coboundary function K, the seminorm sup-variation of K, the
group two-cocycle G_x, local rotation numbers, two-point quasimorphism
defects and homogenisations, Nielsen gaps between invariant measures, word
norms over exact generating sets, and machine-checkable undistortedness
certificates with translation-length lower bounds.
"""

from .errors import (
    ClassMismatchError,
    DeckrotError,
    DomainError,
    NonInvertibleError,
    PreconditionError,
    ScenarioError,
    SpaceMismatchError,
    UnsupportedFlavorError,
)
from .spaces import (
    INF,
    CoverPoint,
    PathIntegralCocycle,
    Polyline,
    Potential,
    Space,
    SpaceKind,
    built_in_potential,
    class_cocycle,
    cocycle_from_potential,
    lift_polyline,
    potential_from_cocycle,
    verify_equivariance,
)
from .plmaps import PLMap
from .homeo import (
    AnnulusTwist,
    Composition,
    CosineTwist,
    Flavor,
    GradientTimeOne,
    Homeo,
    Identity,
    IteratedMap,
    NumericSampledMap,
    PLCircleMap,
    RigidRotation,
    TorusShear,
    class_pairing_residual,
    compose,
    equivariance_residual,
    identity,
    inverse,
    power,
)
from .cocycle import (
    KFunction,
    SeminormEstimate,
    g_cocycle,
    g_cocycle_identity_residual,
    k_eval,
    k_identity_residual,
    k_power_eval,
    k_power_profile,
    seminorm,
)
from .rotation import (
    BoundednessReport,
    BoundedVerdict,
    RotationEstimate,
    b_value,
    boundedness_diagnostic,
    local_rotation_number,
)
from .quasi import (
    Certificate,
    DefectEstimate,
    Mechanism,
    Quasimorphism,
    Verdict,
    certify_two_fixed_points,
    certify_two_rotation_points,
    defect_estimate,
    homogenise,
    q_value,
)
from .measure import (
    AtomicMeasure,
    CircleUniformMeasure,
    EmpiricalMeasure,
    Measure,
    NamedCircle,
    NielsenGap,
    RationalityReport,
    SccEstimate,
    certify_two_measures,
    integrate_k,
    nielsen_gap,
    rationality_check,
    scc_rotation_integral,
)
from .wordgeom import (
    BallNode,
    BallResult,
    GenSet,
    TranslationLengthEstimate,
    WordNormResult,
    ball,
    translation_length,
    word_norm,
)

__version__ = "0.1.0"
