"""Inequivalent permutation factorizations: enumeration, generating series and map models."""
from .altmaps import AlternatingMap, MapStats, build_map, map_stats, verify_bijection
from .canonical import canonical_form, class_size, equivalent, is_canonical
from .closed_forms import (constellation, eidswick_longyear, fullcycle_signature, goulden_monotone,
                           hurwitz, springer, two_part_transpositions)
from .enumeration import (EnumSpec, count_all, count_inequivalent, count_monotone, count_ordinary_cycle,
                          count_proper, count_transpositions, enumerate_factorizations, verify_connections)
from .factorization import CycleFactorization, GeneralFactorization
from .families import SeriesFamily, build_series, coeff_to_count, kcycle_specialize
from .group_algebra import (AlgebraElement, ga_invert, ga_multiply, jm_elementary_check, verify_qidentity,
                            verify_uidentity)
from .perm import Cycle, Permutation, Signature
from .report import Report
from .series import QPoly, XSeries, solve_phi, solve_w
