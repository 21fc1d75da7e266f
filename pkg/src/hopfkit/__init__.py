"""Hopf invariants, linking numbers, and filling bounds for simplicial
3-complexes."""

__version__ = "0.1.0"

from .complexes import Chain, Complex3, build_complex, coherent_signs
from .errors import HopfkitError
from .estimates import (TubeParams, TubeReport, best_rational_approx,
                        dehn_core_linking, gromov_hopf_bound,
                        milnor_thurston_degree_bound,
                        spanning_genus_lower_bound, tube_report)
from .families import (STANDARD_SPEC, AnosovSpec, FamilyInstance,
                       anosov_pairing, dehn_filling_h1, example1_build,
                       example2_build, growth_certificate)
from .filling import (DualCurve, FillingBound, deform_to_skeleton,
                      fill_cycle_any, fill_cycle_min_l1,
                      filling_constant_bound, hopf_size_upper_bound,
                      validate_dual_curve)
from .homology import (betti_numbers, boundary_reduction, h1_invariant_factors,
                       h1_torsion_order, h2_basis, homology_summary, is_cycle,
                       is_null_homologous, smith_normal_form,
                       spanning_genus_report, torsion_degree_obstruction)
from .maps import (SimplicialMap, degree, fiber, hopf_invariant,
                   linking_number, pullback_pairings)

__all__ = [
    "Chain", "Complex3", "build_complex", "coherent_signs",
    "HopfkitError",
    "TubeParams", "TubeReport", "best_rational_approx", "dehn_core_linking",
    "gromov_hopf_bound", "milnor_thurston_degree_bound",
    "spanning_genus_lower_bound", "tube_report",
    "STANDARD_SPEC", "AnosovSpec", "FamilyInstance", "anosov_pairing",
    "dehn_filling_h1", "example1_build", "example2_build",
    "growth_certificate",
    "DualCurve", "FillingBound", "deform_to_skeleton", "fill_cycle_any",
    "fill_cycle_min_l1", "filling_constant_bound", "hopf_size_upper_bound",
    "validate_dual_curve",
    "betti_numbers", "boundary_reduction", "h1_invariant_factors",
    "h1_torsion_order", "h2_basis", "homology_summary", "is_cycle",
    "is_null_homologous", "smith_normal_form", "spanning_genus_report",
    "torsion_degree_obstruction",
    "SimplicialMap", "degree", "fiber", "hopf_invariant", "linking_number",
    "pullback_pairings",
]
