"""Schützenberger automata and maximal subgroups of amalgams of finite
inverse semigroups.

The pipeline: finite inverse semigroups presented by multiplication
table (`semigroups`), inverse word graphs with folding and closure
(`graphs`), amalgams with lobe decompositions and the word problem
(`amalgams`), host/feed-off analysis and finiteness classification
(`hosts`), group presentations with coset enumeration and
abelianization (`presentations`), and the graph-of-groups route to
maximal subgroup presentations (`bass_serre`).  `documents` and `cli`
wrap everything in a JSON front end; `catalog` holds the worked
examples used across the test-suite.
"""

from .errors import (OpuntiaError, NotInverse, NotGenerated,
                     NotAnIdempotent, NotAnEmbedding, NonDeterministic,
                     NotAdjacent, NotMultiHost, NotABud, NotOpuntoid,
                     LobeGraphNotTree, LobeNotClosed, NotIsomorphicLobes,
                     NoLiftFound, BudgetExceeded, InvalidDocument,
                     DEFAULT_MAX_EDGES, DEFAULT_MAX_LOBES)
from .semigroups import (FiniteInverseSemigroup, SubsemigroupEmbedding,
                         validate_embedding, green, maximal_subgroup,
                         natural_order, is_combinatorial)
from .graphs import (Alphabet, InverseWordGraph, PointedAutomaton,
                     Presentation, linear_graph, fold, close, accepts,
                     schutz_graph, rooted_iso, automorphisms,
                     table_presentation, to_dot, graph_json)
from .amalgams import (Amalgam, StandardPresentation, standard_presentation,
                       OpuntoidDecomposition, validate_opuntoid, loop_set,
                       min_loop_idempotent, min_u_idempotent, core,
                       construction5, expand_to_depth, word_equal,
                       decomposition_json, decomposition_dot)
from .hosts import (HostAnalysis, HostRegion, lobe_graph, direct_feed_off,
                    parasites, hosts, full_schutz_witness,
                    is_D_related_to_U, lobe_type_key, shift_iso,
                    host_region, classify_finiteness,
                    algebraic_finiteness_check, finiteness_report,
                    host_analysis_json)
from .presentations import (GroupPresentation, group_table_presentation,
                            subgroup_presentation, tietze_lite,
                            abelianization_invariants, todd_coxeter_order,
                            is_trivial, presentation_json)
from .bass_serre import (GraphOfGroups, GoGVertex, GoGEdge, quotient_graph,
                         vertex_group, edge_group, fundamental_presentation,
                         lift_automorphism, automorphism_presentation,
                         maximal_subgroup_presentation,
                         maximal_subgroup_json, gog_json, gog_dot)
from .documents import (parse_semigroup, parse_amalgam, load_amalgam,
                        loads_amalgam, semigroup_document, amalgam_document,
                        dump_amalgam)
from .catalog import corpus_semigroups, corpus_amalgams, amalgam_d4_z2

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
