"""Exact-arithmetic toolkit for additive-combinatorics experiments."""

__version__ = "0.1.0"

from .errors import (EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_OK,
                     EXIT_RESOURCE_LIMIT, InvalidInputError, ResourceLimitError)
from .sets import (FiniteRealSet, combine, higher_sumset_size,
                   higher_sumset_size_brute, load_set, parse_set_text,
                   format_set_text, ratio_set, save_set, slice_set)
from .energy import (ConvolutionPoint, EnergyValue, RepFunction,
                     commutativity_check, conv_table, cube_chain_holds,
                     diagonal_energy, energy2, energy_k, energy_k_pair,
                     indicator, rep_function, sigma_k, sym_set, threshold_set)
from .groups import (CheckResult, FiniteAbelianGroup, GroupFunction,
                     NormReport, circ, dft, ek_energy, ek_norm, ekl_norm,
                     holder_ck_check, holder_ckl_check, sum_ck_power,
                     triangle_check, walsh_exact, zero_norm_check)
from .szt import (CandidateFamily, CertifiedInterval, FamilyConfig,
                  SymCoverWitness, candidate_family, d_cover_upper,
                  d_sandwich, d_star, dd_check, gen_sigma_check, q_interval)
from .decompose import (CertifyReport, DecompositionTrace, RatioSplitReport,
                        SplitConfig, Witness, balog_wooley_split,
                        certify_split, dyadic_extract, find_witness,
                        ratio_split, shifted_split)
from .construct import (AuditReport, MultinomialResult, PGConstruction,
                        ScanResult, ScanRow, exponent_scan,
                        mult_doubling_audit, multinomial_identity, pg_set)
from .corpus import ap_set, ap_gp_set, gp_set, random_set
