from .bundles import (DERIVED_ENTRIES, KINDS, O, PERIOD, RANK, Ealpha, FPush, Line,
                      StandardBundle, StandardSummand, Unsupported, bundle, cohomology_dim,
                      cohomology_table, dual, dual_summand, ext_dim, ext_summands,
                      ext_via_adjunction, rank_h1_corollary_check, summand_cohomology, tensor,
                      tensor_summands)
from .normalize import (EnumerateAll, ExtClassVector, Fixed, IteratedExtension,
                        MalformedExtension, NormalizationResult, Resolver, ResolverExhausted,
                        Zero, eligible, normalize, random_bundle, random_extension,
                        random_extensions, split_extension)
from .ifunctor import (DICTIONARY, EXPECTED_SEQUENCES, BundleSequence, NotInDictionary,
                       i_functor, invariant, map_sequence, mapped_rep_sequences, match,
                       sign_lattice)
