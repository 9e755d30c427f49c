from .groups import (FiniteGroup, GroupError, SUPPORTED, build_group, homomorphism,
                     q8_to_c2xc2, subgroup_embedding)
from .modules import (MatrixRep, RepError, RepMap, direct_sum, dual, induce, pullback,
                      reduce_mod, restrict, submodule, tensor, trivial)
from .lattices import (S3Lattices, ShortExactSequence, check_exact, lambda2_identification,
                       m_n, mbar, pullback_q8, rep_sequences, s3_lattices)
from .endo import (DecompositionReport, RankBoundError, EndAlgebra, Summand, decompose, end_algebra,
                   fingerprint, has_summand, hom_space, is_isomorphic, jacobson_radical)
