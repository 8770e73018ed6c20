"""Logarithmic signatures of finite permutation groups.

A logarithmic signature is an ordered sequence of blocks of group elements
such that every group element is a unique product taking one factor per
block; one meeting the length bound sum(a_j * p_j) over the prime power
decomposition of the group order is minimal.  The package builds signatures
from stabilizer chains, refines transversal blocks into cyclic power sets,
verifies exactness, recovers factorizations, validates published
sporadic-group arithmetic, and demonstrates the classical PGM cipher.
"""

from .arith import PrimeFactorization, factor_integer
from .catalog import (CatalogError, ClaimReport, GroupSpec, SporadicClaim,
                      bundled_group_names, check_claim_arithmetic, get_spec,
                      load_group, load_verified_chain, read_group_file,
                      sporadic_claims, sporadic_minimal_lengths,
                      write_group_file)
from .chain import (ChainLevel, GeneratorSet, StabilizerChain, build_chain,
                    derived_series, derived_subgroup, is_solvable,
                    normal_closure)
from .construct import (CompositionSeries, CyclicSetSpec, ProductDecomposition,
                        build_mls, chain_ls, composition_series_solvable,
                        mls_cyclic, mls_solvable, refine_block, refine_ls,
                        sharply_transitive_check)
from .factorize import (FactorizationError, TameIndexer, factorize_generic,
                        factorize_tame, reconstruct)
from .perm import CycleFormatError, Permutation, format_cycles, parse_cycles
from .pgm import PgmKey, decrypt, encrypt, keygen, randomize_ls, read_key, write_key
from .signature import (BlockAnnotation, LogSignature, LsFormatError,
                        Provenance, VerificationBudgetError,
                        VerificationReport, dumps_ls, is_minimal, loads_ls,
                        ls_length, minimal_length, read_ls, verify_exhaustive,
                        verify_structural, write_ls)

__version__ = "0.1.0"
