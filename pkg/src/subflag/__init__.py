"""Holonomy flags and generalized Codazzi curvature of 3D sub-Riemannian Lie groups."""

from .algebra import AlgebraElement, X, Y, Z
from .chart_fields import ChartPoint, ChartVector, VectorField, evaluate_field, lie_bracket
from .codazzi import assemble_A_matrices, codazzi_curvature, derivation_equations
from .holonomy_flag import flag_dimensions, flag_spaces, holonomy_flag, horizontal_filtration
from .liealg_connection import connection_table, curvature, metric_obstruction, nabla, torsion
from .model_groups import cartan_structure, general_structure, heisenberg_frame, su2_frame

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "ChartPoint",
    "ChartVector",
    "VectorField",
    "X",
    "Y",
    "Z",
    "assemble_A_matrices",
    "cartan_structure",
    "codazzi_curvature",
    "connection_table",
    "curvature",
    "derivation_equations",
    "evaluate_field",
    "flag_dimensions",
    "flag_spaces",
    "general_structure",
    "heisenberg_frame",
    "holonomy_flag",
    "horizontal_filtration",
    "lie_bracket",
    "metric_obstruction",
    "nabla",
    "su2_frame",
    "torsion",
]
