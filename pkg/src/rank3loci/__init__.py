"""Exact computer algebra for the rank-3 quadric loci of Veronese embeddings."""

from .poly import (DEGREVLEX, LEX, MonomialOrder, MultiPoly, block_order,
                   multideg, parse_polynomial, square_part, substitute,
                   univariate_gcd)
from .plucker import (SectionBasis, SectionTerm, SectionVector,
                      plucker_relations, quadratic_basis,
                      quadratic_normal_form, section_basis, normalize_term,
                      weight_slice, weight_witness)
from .veronese import (QuadForm, VeroneseSpace, build_tables,
                       check_recurrences, evaluated_tables, linearize,
                       rank3_quadric, rnc_generators, vanishes_on_veronese,
                       vanishing_propagation, veronese_space, witness_quadric)
from .certificates import (FiberCert, FiberOutcome, MinimalityCert,
                           NondegeneracyCert, PencilPoint, fiber_analysis,
                           minimality_certificate, nondegeneracy_certificate,
                           quad_rank, rank3_membership, singular_bound,
                           singular_family_sample, veronese_identification)
from .groebner import (GroebnerBasis, GroebnerTimeout, Ideal, buchberger,
                       eliminate, hilbert_polynomial, ideal_membership,
                       make_ideal, radical_membership)

__all__ = [name for name in dir() if not name.startswith("_")]
