"""Karoubi envelopes, Schützenberger categories and related invariants of
finite semigroups."""
from .cat import (
    FiniteCategory,
    Functor,
    build_karoubi,
    build_schutzcat,
    find_equivalence,
    skeleton,
)
from .core import Semigroup, Transformation, from_cayley_table, generate_from_transformations, idempotents
from .corpus import FIXTURE_NAMES, load_action_fixture, load_fixture, small_semigroups
from .greens import greens_data
from .invariants import SAction, action_poset, actions_equivalent, labeled_dl, labeled_dq
from .io import load_action, load_semigroup
from .lift import is_good_functor, lift_functor, local_unit_families
from .localstruct import local_divisor, local_monoid, schutzenberger_group

__version__ = "0.1.0"
