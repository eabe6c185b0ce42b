"""Exact-arithmetic toolkit for graphs defined by sign patterns of linear
forms: normalization, polylog coloring, Ramsey witness extraction, incidence
constructions, and brute-force oracles."""

from .coloring import (Box, Coloring, OrderRelation, color_box_cap_comparability,
                       color_quasicomp, color_semilinear, mirsky_color,
                       product_color, split_hyperplane)
from .construct import (ConstantSchedule, IncidenceGraph,
                        OrderedBipartiteGraph, RealizableTuple, base_star,
                        bcstt_construction, boxes3d_from_incidence,
                        build_girth_construction, frankl_wilson, sample_H,
                        shift_graph, step_up, superline, superline_semilinear,
                        tensor_H_k, tensor_k)
from .core import (AdjacencyGraph, DnfGraph, LinearForm, SemilinearGraph,
                   eval_edge, epsilon_for, materialize, symmetry_check, to_dnf)
from .decompose import (QuasiCompGraph, QuasiCompVertex, perturb, split_linear,
                        to_quasicomp, type_partition)
from .oracle import (OracleBudget, exact_chromatic, girth, has_K22,
                     incidence_check, is_cograph_induced, is_proper,
                     max_clique, max_independent_set)
from .ramsey import (Cotree, EhOutcome, RamseyWitness, WeightFunction,
                     cograph_witness, eh_decompose, find_cograph,
                     ramsey_witness)

__all__ = [name for name in dir() if not name.startswith("_")]
