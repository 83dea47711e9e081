"""The fixture corpus and exhaustive enumeration of small semigroups."""
from __future__ import annotations

import itertools
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .core import Semigroup, check_associative, from_cayley_table

FIXTURE_NAMES = ("TRIV", "U1", "RZ2", "N2", "C21", "T2", "RB22", "B2")
ACTION_FIXTURES = ("t2_points", "u1_chain", "rb22_columns", "triv_point")


def fixture_dir() -> Path:
    override = os.environ.get("SGCAT_FIXTURES")
    if override:
        return Path(override)
    return Path(str(resources.files("sgcat") / "data"))


def fixture_path(name: str) -> Path:
    return fixture_dir() / f"{name}.json"


def action_fixture_path(name: str) -> Path:
    return fixture_dir() / f"{name}.action.json"


def load_fixture(name: str) -> Semigroup:
    from .io import load_semigroup
    return load_semigroup(fixture_path(name))


def load_action_fixture(name: str):
    from .io import load_action
    return load_action(action_fixture_path(name))


def _canonical(table: tuple[tuple[int, ...], ...]) -> tuple:
    n = len(table)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        t = tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or t < best:
            best = t
    return best


@lru_cache(maxsize=None)
def small_semigroups(max_order: int = 3) -> tuple[Semigroup, ...]:
    """All semigroups of order <= max_order, one per isomorphism class.

    Brute force over every n x n table; intended for n <= 3.
    """
    found = []
    for n in range(1, max_order + 1):
        seen = set()
        for flat in itertools.product(range(n), repeat=n * n):
            table = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
            if check_associative(table) is not None:
                continue
            canon = _canonical(table)
            if canon not in seen:
                seen.add(canon)
        for canon in sorted(seen):
            found.append(from_cayley_table(canon))
    return tuple(found)
