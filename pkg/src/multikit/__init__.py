"""Finite superrings, hyperfields and their polynomial extensions."""

from .core import (CarrierMismatch, CarrierTooLarge, ClassReport, FiniteSuperring, IdealError,
                   IdealSet, MultikitError, QuotientError, StructureError, Verdict,
                   characteristic, enumerate_ideals, inverses, is_ideal, quotient_by_ideal,
                   validate)
from .extensions import (Tower, closure_tower, eliminate_witness, extension_degree,
                         generated_set, irr_poly, is_alg_closed_up_to, is_algebraic,
                         is_almost_full, linear_independent, simple_extension)
from .morphisms import (MorphismTable, classify_map, compose, extension_kind, find_isomorphism,
                        from_mapping, identity, inclusion, parse_map)
from .polynomials import (CoeffEnvelope, Poly, effective_roots, enumerate_divisions,
                          euclid_divide, evaluate, member, parse_poly, poly, poly_prod, poly_sum,
                          render_poly, roots)
from .quotients import (QuotientField, class_inverse, is_irreducible, make_quotient,
                        principal_membership, reduce)
from .structures import (builtin, load_l9_file, make_hp, make_kaleidoscope, make_krasner,
                         make_l9, make_q2, make_strict, parse_structure, product_h,
                         serialize_structure)

__version__ = "0.1.0"
