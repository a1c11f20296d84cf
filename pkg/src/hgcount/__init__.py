"""Hopf-Galois structure counts from regular subgroups of holomorphs."""

from .catalog import groups_of_order, resolve
from .errors import CapExceeded, CatalogError, HGError, ParseError, StrategyMismatch
from .formulas import count_sn_anc2, count_sn_sn, total_e_sn
from .groups import FiniteGroup, GroupHom, automorphism_group, isomorphism_test
from .hopf import byott_count, direct_enumerate_E, enumerate_regular_cocycle, enumerate_regular_dfs, full_report, holomorph
from .perm import Permutation, PermSet, compose, generate_closure, parse_cycles, regularity_check

__version__ = "0.1.0"
