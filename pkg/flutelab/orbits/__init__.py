from flutelab.orbits.criteria import (
    Custom,
    PowerTower,
    SingleGenerator,
    busemann_along_words,
    recurrence_test,
    tower_target,
    tunv_test,
    word_matrix,
)
from flutelab.orbits.diagnostics import limit_point_diagnostic, orthogonal_foot_angle
from flutelab.orbits.scan import (
    ScanReport,
    power_tower_witnesses,
    semigroup_consistency,
    tu_scan,
    window_sweep,
)

__all__ = [
    "Custom",
    "PowerTower",
    "ScanReport",
    "SingleGenerator",
    "busemann_along_words",
    "limit_point_diagnostic",
    "orthogonal_foot_angle",
    "power_tower_witnesses",
    "recurrence_test",
    "semigroup_consistency",
    "tower_target",
    "tu_scan",
    "tunv_test",
    "window_sweep",
]
