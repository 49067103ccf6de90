from .dimacs import CnfFormula, parse_dimacs, random_unique_formula, to_dimacs
from .oracle import (
    AncillaLayout,
    CompiledOracle,
    DependencyProfile,
    classical_phase_table,
    compile_oracle,
    dependency_profile,
    run_reversible,
)
from .solve import SatSolution, solve_unique_sat

__all__ = [
    "AncillaLayout",
    "CnfFormula",
    "CompiledOracle",
    "DependencyProfile",
    "SatSolution",
    "classical_phase_table",
    "compile_oracle",
    "dependency_profile",
    "parse_dimacs",
    "random_unique_formula",
    "run_reversible",
    "solve_unique_sat",
    "to_dimacs",
]
