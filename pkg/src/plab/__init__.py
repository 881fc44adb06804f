"""Exact-rational computer algebra for averaging pre-Lie algebras and bialgebras."""
from .algebra import Algebra, AveragingAlgebra, averaging_algebra, check_averaging, check_pre_lie
from .bialgebra import AvgBialgebra, BilinearForm, Coalgebra
from .errors import PlabError
from .reports import CheckReport
from .representations import AvgRepresentation, Representation
from .suite import emit_report, run_suite
from .workspace import Workspace, emit_workspace, load_workspace, parse_workspace
from .yang_baxter import RTensor

__all__ = [
    "Algebra", "AveragingAlgebra", "averaging_algebra", "check_averaging", "check_pre_lie",
    "AvgBialgebra", "BilinearForm", "Coalgebra", "PlabError", "CheckReport", "AvgRepresentation",
    "Representation", "emit_report", "run_suite", "Workspace", "emit_workspace", "load_workspace",
    "parse_workspace", "RTensor",
]

__version__ = "0.1.0"
