"""Convex recoloring solver and polyhedral verification toolkit.

Builds the connected-subgraph integer program for convex recoloring,
generates and separates two families of cutting planes, solves instances
exactly with a cut-and-branch search, and verifies validity and facet
claims on small instances with brute-force oracles.
"""

from crsolve.graph import (
    Graph,
    PartialColoring,
    Instance,
    ConnectedSet,
    enumerate_connected_sets,
    intersects,
    contains,
    is_convex,
    recolored_weight,
    kept_weight,
    load_instance,
)
from crsolve.formulation import Model, VarId, build_model, chi, decode, kept_to_recolored
from crsolve.lp import LinearProgram, LpOutcome, solve_lp
from crsolve.cuts import Cut, CutPool, build_class5, build_class6, separate_class5, separate_class6
from crsolve.solve import (
    SolveReport,
    solve_relaxation,
    branch_and_bound,
    oracle_opt,
    enumerate_integral_points,
    verify_inequality,
    face_dimension,
)
from crsolve.capa import CapaInstance, capa_to_model, generate_capa, load_capa
from crsolve.experiments import ExperimentConfig, GapRecord, generate_cr_instance, run_cell, summarize

__version__ = "0.1.0"
