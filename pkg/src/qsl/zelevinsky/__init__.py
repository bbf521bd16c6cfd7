"""The opposite big cell, the Zelevinsky map, Plücker and determinantal generators."""
from .bigcell import (BigCellPoint, FlagPoint, big_cell_dim, canonicalize_to_big_cell, complement_span,
                      rank_condition_failure, enumerate_big_cell, in_schubert, lower_blocks, plucker,
                      standard_span, image_condition_failure, zeta, zeta_inverse)
from .certificates import (GeneratorRoute, IdentityReport, LaplaceCertificate, cauchy_binet_certificate, i1_in_i0_certificate,
                           i2_in_i1_certificate, factorization_check, laplace_certificate,
                           generator_route)
from .generators import (FAMILIES, GeneratorDescriptor, block_chain, eval_generator, first_nonvanishing,
                         generator_polynomial, generators, generic_big_cell, generic_quiver, generic_zeta,
                         in_Y_via_plucker, plucker_generators, vanishes, zeta_pullback)

__all__ = [
    "BigCellPoint", "FAMILIES", "FlagPoint", "GeneratorDescriptor", "GeneratorRoute", "IdentityReport", "LaplaceCertificate",
    "big_cell_dim", "block_chain", "canonicalize_to_big_cell", "cauchy_binet_certificate", "complement_span",
    "rank_condition_failure", "enumerate_big_cell", "eval_generator", "first_nonvanishing", "generator_polynomial",
    "generators", "generic_big_cell", "generic_quiver", "generic_zeta", "i1_in_i0_certificate",
    "i2_in_i1_certificate", "in_Y_via_plucker", "in_schubert", "factorization_check",
    "laplace_certificate", "generator_route", "lower_blocks", "plucker", "plucker_generators",
    "standard_span", "image_condition_failure", "vanishes", "zeta", "zeta_inverse", "zeta_pullback",
]
