"""Exact verification of bialgebroids, entwining structures and corings.

All arithmetic is over Q or a prime field F_p, so every check is an equality
of exact matrices and every failure comes with a basis witness.
"""
from types import ModuleType

from .algebra import (Algebra, AlgebraMorphism, check_morphism, chi_from_st, enveloping, opposite,
                      product_algebra, structure_from_table, tensor_algebra, validate_algebra)
from .bialgebroid import (LeftBialgebroid, RightBialgebroid, bialgebroid_from_entwining, canonical_grouplike,
                          coinvariants_of_A, coring_from_bialgebroid, dual_bialgebroid, entwining_conditions,
                          entwining_from_bialgebroid, hopf_check, trichotomy, validate_left_bialgebroid,
                          validate_right_bialgebroid)
from .bimodule import Bimodule, DualPair, regular, right_dual, tensor, validate_bimodule
from .catalog import CATALOG_IDS, catalog, catalog_bialgebroid, enveloping_bialgebroid
from .coring import (Coring, InternalCoring, coring_from_entwining, enumerate_grouplikes, flatten_coring,
                     galois, sweedler_coring, validate_coring, validate_internal_coring)
from .entwining import (EntwiningStructure, InternalComonoid, InternalMonoid, check_left_entwining,
                        check_right_entwining, dualize_entwining)
from .errors import (BgdError, BudgetExceeded, ConditionFailure, DimensionMismatch, MalformedInput, NoDual,
                     NoSolution, NotBalanced, UnknownCatalogId, UnsupportedField)
from .exactfield import QQ, Field, LinMap, prime_field
from .pseudomonoid import (bialgebroid_from_pseudomonoid, canonical_pseudomonoid, canonical_strong_monoidal,
                           check_pseudomonoid, check_strong_monoidal, pseudomonoid_from_bialgebroid,
                           pseudomonoid_report)
from .report import Report
from .serialize import ObjectFile, dumps, load, loads

__version__ = "0.1.0"

__all__ = sorted(name for name, obj in list(globals().items())
                 if not name.startswith("_") and not isinstance(obj, ModuleType) and name != "ModuleType")
