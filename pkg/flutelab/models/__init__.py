from flutelab.models.enums import (
    CheckStatus,
    Classification,
    CoefficientCase,
    FluteKind,
    Membership,
    RelationCase,
)

__all__ = [
    "CheckStatus",
    "Classification",
    "CoefficientCase",
    "FluteKind",
    "Membership",
    "RelationCase",
]
