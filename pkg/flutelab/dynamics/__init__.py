from flutelab.dynamics.flows import UnitTangent, geodesic_flow, horocycle_flow
from flutelab.dynamics.thinness import (
    RayProfile,
    injectivity_radius,
    quasi_minimizing_constant,
    quotient_distance,
    thinness_profile,
)

__all__ = [
    "RayProfile",
    "UnitTangent",
    "geodesic_flow",
    "horocycle_flow",
    "injectivity_radius",
    "quasi_minimizing_constant",
    "quotient_distance",
    "thinness_profile",
]
