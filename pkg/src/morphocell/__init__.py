"""Generative-geometry kernel for space-time cells.

Forms are written as expressions f(x, y, z; t); cells are the point sets
where f stays at or below an iso level, or height fields z = g(x, y; t).
The package samples them onto grids, extracts meshes and contours, builds
the classic spiral constructions, and serializes everything
deterministically for figures, the CLI and the JSON service.
"""

from ._kernels import active_lane
from .dsl import (
    PHI,
    Program,
    compile_program,
    evaluate,
    free_params,
    parse,
    to_source,
    tokenize,
    uses_var,
)
from .errors import (
    ArityError,
    DomainError,
    EmptyMeshError,
    LexError,
    MorphocellError,
    OriginError,
    ParseError,
    SinkError,
    TimeError,
    UnboundParamError,
)
from .figures import RECIPES, figure_artifacts, run_figure
from .geometry import (
    DEFAULT_RESOLUTION_2D,
    DEFAULT_RESOLUTION_3D,
    Box,
    CellSpec,
    Disc,
    MembershipResult,
    ScalarGrid2D,
    ScalarGrid3D,
    SquareDomain,
    heightfield_cell,
    implicit_cell,
    membership,
    membership_detail,
    sample_heightfield,
    sample_volume,
    time_sweep,
)
from .jsonio import geometry_json, write_geometry_json
from .mesher import (
    Contour,
    Mesh,
    MeshReport,
    contour_length,
    extract_isocontour,
    extract_isosurface,
    mesh_area,
    triangulate_disc,
    triangulate_heightfield,
    validate_mesh,
)
from .objio import write_obj
from .spirals import (
    GOLDEN_GROWTH,
    Arc,
    ArcChain,
    Polyline,
    SpiralSpec,
    Square,
    fibonacci_numbers,
    fibonacci_spiral,
    fibonacci_squares,
    golden_spiral,
    implicit_spiral_check,
    log_spiral,
    ode_residual,
    quarter_arc_chain,
)
from .svgio import Stroke, write_svg

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcChain",
    "ArityError",
    "Box",
    "CellSpec",
    "Contour",
    "DEFAULT_RESOLUTION_2D",
    "DEFAULT_RESOLUTION_3D",
    "Disc",
    "DomainError",
    "EmptyMeshError",
    "GOLDEN_GROWTH",
    "LexError",
    "MembershipResult",
    "Mesh",
    "MeshReport",
    "MorphocellError",
    "OriginError",
    "PHI",
    "ParseError",
    "Polyline",
    "Program",
    "RECIPES",
    "ScalarGrid2D",
    "ScalarGrid3D",
    "SinkError",
    "SpiralSpec",
    "Square",
    "SquareDomain",
    "Stroke",
    "TimeError",
    "UnboundParamError",
    "active_lane",
    "compile_program",
    "contour_length",
    "evaluate",
    "extract_isocontour",
    "extract_isosurface",
    "fibonacci_numbers",
    "fibonacci_spiral",
    "fibonacci_squares",
    "figure_artifacts",
    "free_params",
    "geometry_json",
    "golden_spiral",
    "heightfield_cell",
    "implicit_cell",
    "implicit_spiral_check",
    "log_spiral",
    "membership",
    "membership_detail",
    "mesh_area",
    "ode_residual",
    "parse",
    "quarter_arc_chain",
    "run_figure",
    "sample_heightfield",
    "sample_volume",
    "time_sweep",
    "to_source",
    "tokenize",
    "triangulate_disc",
    "triangulate_heightfield",
    "uses_var",
    "validate_mesh",
    "write_geometry_json",
    "write_obj",
    "write_svg",
]
