"""Exact Hochschild and bar complexes of curved A-infinity categories built from vanishing cycles."""

__version__ = "0.1.0"

from .linalg import (GF, QQ, ConfigurationError, Field, FiniteChainComplex, InvalidComplexError, Scalar,  # noqa: E402
                     SparseMatrix, euler_characteristic, homology_dims, nullspace, rank)
from .ainfty import (AInftyCategory, Bimodule, CategoryError, DegreeError, Generator, RelationViolation,  # noqa: E402
                     directed_subcategory, dual_bimodule, quotient_bimodule, shift_bimodule, trivial_extension,
                     validate_ainfty, validate_bimodule, with_units)
from .hochschild import (ConventionViolation, CurvedCategory, E1Page, build_curved, connes_complex,  # noqa: E402
                         donaldson_complex, e1_page, hochschild_differential, truncated_hochschild_betti)
from .bar import (ModuleOverA, bar_complex, insert_a_subcomplex_check, q_word_report,  # noqa: E402
                  serre_step_check, serre_step_complex, simple_hom_complex, simple_module)
from .examples import EXAMPLES, gen_am_quiver, gen_branched_cover, gen_empty, gen_two_spheres  # noqa: E402

__all__ = [
    "GF", "QQ", "ConfigurationError", "Field", "FiniteChainComplex", "InvalidComplexError", "Scalar",
    "SparseMatrix", "euler_characteristic", "homology_dims", "nullspace", "rank",
    "AInftyCategory", "Bimodule", "CategoryError", "DegreeError", "Generator", "RelationViolation",
    "directed_subcategory", "dual_bimodule", "quotient_bimodule", "shift_bimodule", "trivial_extension",
    "validate_ainfty", "validate_bimodule", "with_units",
    "ConventionViolation", "CurvedCategory", "E1Page", "build_curved", "connes_complex", "donaldson_complex",
    "e1_page", "hochschild_differential", "truncated_hochschild_betti",
    "ModuleOverA", "bar_complex", "insert_a_subcomplex_check", "q_word_report", "serre_step_check",
    "serre_step_complex", "simple_hom_complex", "simple_module",
    "EXAMPLES", "gen_am_quiver", "gen_branched_cover", "gen_empty", "gen_two_spheres",
]
