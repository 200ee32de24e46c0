"""Darcy flow on triangulated planar and surface domains, discretized with
two interchangeable Hodge stars (diagonal circumcentric and edge-element
mass matrix) over a shared mixed saddle-point formulation."""

from .analytic import (
    AnnulusProblem,
    HemisphereProblem,
    boundary_flux_values,
    exact_edge_flux,
    exact_flux_cochain,
)
from .darcy import (
    DarcyProblem,
    DarcySolution,
    ErrorReport,
    assemble,
    boundary_loop_flux_sums,
    error_report,
    identify_inflow_loop,
    problem_from_analytic,
    solve,
)
from .geometry import (
    DualMetrics,
    QualityReport,
    circumcenter,
    compute_metrics,
    project_to_unit_sphere,
    quality_report,
    signed_dual_lengths,
)
from .hodge import HodgeStar1, dec_hodge_star_1, whitney_local_mass, whitney_mass_matrix_1
from .meshgen import AnnulusSpec, HemisphereSpec, annulus_mesh, hemisphere_mesh, quadrisect
from .simplicial import (
    SimplicialSurface,
    boundary_1,
    boundary_2,
    build_complex,
    coboundary_0,
    coboundary_1,
    incidence_signs,
    read_mesh,
    write_mesh,
)
from .whitney import Cochain1, velocity_from_flux, whitney_interpolate

__version__ = "0.1.0"

__all__ = [
    "AnnulusProblem",
    "AnnulusSpec",
    "Cochain1",
    "DarcyProblem",
    "DarcySolution",
    "DualMetrics",
    "ErrorReport",
    "HemisphereProblem",
    "HemisphereSpec",
    "HodgeStar1",
    "QualityReport",
    "SimplicialSurface",
    "annulus_mesh",
    "assemble",
    "boundary_1",
    "boundary_2",
    "boundary_flux_values",
    "boundary_loop_flux_sums",
    "build_complex",
    "circumcenter",
    "coboundary_0",
    "coboundary_1",
    "compute_metrics",
    "dec_hodge_star_1",
    "error_report",
    "exact_edge_flux",
    "exact_flux_cochain",
    "hemisphere_mesh",
    "identify_inflow_loop",
    "incidence_signs",
    "problem_from_analytic",
    "project_to_unit_sphere",
    "quadrisect",
    "quality_report",
    "read_mesh",
    "signed_dual_lengths",
    "solve",
    "velocity_from_flux",
    "whitney_interpolate",
    "whitney_local_mass",
    "whitney_mass_matrix_1",
    "write_mesh",
]
