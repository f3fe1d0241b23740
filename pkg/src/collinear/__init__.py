"""Large collinear sets in planar triangulations via long dual cycles."""

from .auxtrees import (AuxGraphs, ChordPath, SideTreePair, analyze, badness_levels, build_aux, build_side_trees,
                       counting_checks, leaf_caress_check, node_inequality_check, structural_bad_checks)
from .classify import Classification, FaceTrace, check_touched_lower_bound, classify, trace_face
from .curve import (CollinearCertificate, ProperGoodCurve, cycle_to_curve, independent_caressed_set,
                    upper_bound_check, verify_curve)
from .cycles import DualCycle, NotACycle, long_cycle_heuristic, longest_cycle_exact, orient_and_partition
from .dual import DualGraph, check_three_connected, dualize, verify_shared_edge_bound
from .embedding import InvalidInstance, InvariantError, Triangulation, faces, max_degree, parse_triangulation
from .generators import canonical_cycle, corpus, generate
from .pipeline import PipelineOptions, PipelineReport, run_pipeline
from .render import render_svg
from .surgery import SurgeryLog, SurgerySite, apply_surgery, find_site, surgery_loop

__version__ = "0.1.0"
