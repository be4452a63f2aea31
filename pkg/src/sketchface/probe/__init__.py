from .collect import ProbeVectorSet, collect_probe_vectors, double_precision_encoder
from .groups import (
    EYE_INVARIANT_GROUPS,
    ProbeGroup,
    eye_window,
    generate_synthetic_probe_groups,
)
from .pca import Projection2D, pca_project, within_group_dispersion
from .receptive import (
    ENCODER_CHAIN,
    PROBE_BORDER_MARGIN,
    ReceptiveField,
    check_probe_point,
    receptive_field,
    receptive_field_table,
)
from .scatter import GROUP_COLORS, emit_scatter, scatter_svg

__all__ = [
    "ENCODER_CHAIN",
    "EYE_INVARIANT_GROUPS",
    "GROUP_COLORS",
    "PROBE_BORDER_MARGIN",
    "ProbeGroup",
    "ProbeVectorSet",
    "Projection2D",
    "ReceptiveField",
    "check_probe_point",
    "collect_probe_vectors",
    "double_precision_encoder",
    "emit_scatter",
    "eye_window",
    "generate_synthetic_probe_groups",
    "pca_project",
    "receptive_field",
    "receptive_field_table",
    "scatter_svg",
    "within_group_dispersion",
]
