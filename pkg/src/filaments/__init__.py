"""Solvers for maximum-weight independent set and induced matching on
interval filament families, with exact geometry, generators, reference
oracles, and a command-line front end."""

from .generators import (GeneratorSpec, SplitMix64, gen_nested_arcs,
                         gen_random_arcs, gen_random_polylines, gen_worstcase,
                         generate)
from .geometry import (Point, PolylineFilament, SemicircleFilament,
                       ValidationReport, filaments_intersect,
                       segments_intersect, semicircle_chords,
                       semicircles_intersect, validate_filament)
from .instance import (SENTINEL, AbstractFilament, AxiomReport, IndexedInstance,
                       Instance, InstanceError, build_index, check_axioms,
                       make_semicircle_instance)
from .instfile import (InstanceDocument, InstanceFormatError, load,
                       make_document, parse_document, serialize_document)
from .mwim import (AxiomWarning, MatchingSolution, UnionFilament,
                   build_union_instance, intersecting_pairs, solve_mwim,
                   verify_induced_matching)
from .mwis import (DEFAULT_MEMORY_BUDGET, CertificateError, DPTable,
                   MemoryBudgetError, Solution, WeightOverflowError,
                   reconstruct, solve_mwis, state_count,
                   verify_independent_set)
from .oracle import MWIM_CAP, MWIS_CAP, OracleCapError, brute_mwim, brute_mwis
from .render import render_svg

__version__ = "0.1.0"
