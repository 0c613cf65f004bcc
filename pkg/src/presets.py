"""
File: presets.py

Purpose: Ready-made permutation groups and named subgroups, plus parsing of
         group sources given on the command line ("preset:symmetric:4" or a
         JSON file {"degree": n, "generators": [[...], ...]}).

Imports from: json, pathlib, typing, src.errors, src.groups
Imported by: app.py, test_setup.py, tests

Key Functions:
- symmetric(), alternating(), dihedral(), quaternion8(), cyclic(),
  elementary_abelian(), abelian(), extraspecial_exponent_p(): Constructors
- parse_group_source(): Resolve a preset string or JSON path to a FiniteGroup
- resolve_subgroup(): Resolve a subgroup name (registry, P<k>, or JSON path)

Key Constants:
- PRESETS: Constructor table keyed by preset name
- NAMED_SUBGROUPS: Generator lists of well-known subgroups per preset
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple
import json

from .errors import ArgumentError, ConfigError
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    cycles_to_perm,
    group_from_generators,
    is_prime,
    subgroup_generated,
    subgroups_of,
)


# ------------------------------
# Constructors
# ------------------------------

def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ArgumentError(f"Invalid degree: {n}")
    gens = []
    if n >= 2:
        gens = [tuple(list(range(1, n)) + [0]), cycles_to_perm([(0, 1)], n)]
    return group_from_generators(n, gens)


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ArgumentError(f"Invalid degree: {n}")
    gens = [cycles_to_perm([(0, 1, i)], n) for i in range(2, n)]
    return group_from_generators(n, gens)


def dihedral(order: int) -> FiniteGroup:
    """Symmetries of a regular (order/2)-gon on its vertices."""
    if order < 6 or order % 2:
        raise ArgumentError(f"Invalid dihedral order: {order} (even, at least 6)")
    n = order // 2
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return group_from_generators(n, [rotation, reflection])


def quaternion8() -> FiniteGroup:
    i = cycles_to_perm([(0, 1, 2, 3), (4, 5, 6, 7)], 8)
    j = cycles_to_perm([(0, 4, 2, 6), (1, 7, 3, 5)], 8)
    return group_from_generators(8, [i, j], prime_hint=2)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ArgumentError(f"Invalid order: {n}")
    return group_from_generators(n, [tuple((i + 1) % n for i in range(n))])


def abelian(*orders: int) -> FiniteGroup:
    """Direct product of cyclic groups, each on its own block of points."""
    if not orders or any(k < 1 for k in orders):
        raise ArgumentError(f"Invalid cyclic factor orders: {orders}")
    degree = sum(orders)
    gens = []
    offset = 0
    for k in orders:
        images = list(range(degree))
        for i in range(k):
            images[offset + i] = offset + (i + 1) % k
        gens.append(tuple(images))
        offset += k
    return group_from_generators(degree, gens)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise ArgumentError(f"Invalid prime: {p}")
    group = abelian(*([p] * k))
    group.prime_hint = p
    return group


def extraspecial_exponent_p(p: int) -> FiniteGroup:
    """Maps (x, y) -> (x + a, y + b*x + c) of F_p^2; point (x, y) has index x*p + y."""
    if p not in (3, 5):
        raise ArgumentError(f"Extraspecial preset supports p in (3, 5), got {p}")
    points = [(x, y) for x in range(p) for y in range(p)]

    def as_perm(a: int, b: int, c: int) -> Tuple[int, ...]:
        return tuple(((x + a) % p) * p + (y + b * x + c) % p for x, y in points)

    return group_from_generators(p * p, [as_perm(1, 0, 0), as_perm(0, 1, 0), as_perm(0, 0, 1)], prime_hint=p)


PRESETS: Dict[str, Tuple[Callable[..., FiniteGroup], Optional[int]]] = {
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "dihedral": (dihedral, 1),
    "quaternion8": (quaternion8, 0),
    "cyclic": (cyclic, 1),
    "elementary_abelian": (elementary_abelian, 2),
    "abelian": (abelian, None),
    "extraspecial": (extraspecial_exponent_p, 1),
}


# Generators (image lists) of well-known subgroups, keyed by preset source
NAMED_SUBGROUPS: Dict[str, Dict[str, List[Tuple[int, ...]]]] = {
    "symmetric:4": {
        "V": [(1, 0, 3, 2), (2, 3, 0, 1)],
        "V'": [(1, 0, 2, 3), (0, 1, 3, 2)],
        "C4": [(2, 3, 1, 0)],
        "Z": [(1, 0, 3, 2)],
        "D8": [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)],
    },
    "alternating:4": {
        "V": [(1, 0, 3, 2), (2, 3, 0, 1)],
    },
    "dihedral:8": {
        "C4": [(1, 2, 3, 0)],
        "V": [(2, 3, 0, 1), (0, 3, 2, 1)],
        "V'": [(2, 3, 0, 1), (1, 0, 3, 2)],
        "Z": [(2, 3, 0, 1)],
    },
}


def preset_group(name: str, *args: int) -> FiniteGroup:
    if name not in PRESETS:
        raise ConfigError(f"Unknown preset: {name}")
    constructor, arity = PRESETS[name]
    if arity is not None and len(args) != arity:
        raise ConfigError(f"Preset {name} takes {arity} integer argument(s), got {len(args)}")
    try:
        return constructor(*args)
    except ArgumentError as e:
        raise ConfigError(str(e))


def load_group_json(path: str) -> FiniteGroup:
    """Read {"degree": n, "generators": [[images...], ...]}."""
    try:
        data = json.loads(Path(path).read_text())
        degree = int(data["degree"])
        gens = [tuple(int(x) for x in g) for g in data["generators"]]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"Unreadable group file {path}: {e}")
    try:
        return group_from_generators(degree, gens)
    except ArgumentError as e:
        raise ConfigError(str(e))


def parse_group_source(text: str) -> Tuple[FiniteGroup, str]:
    """
    Resolve a group source string.

    Args:
        text: "preset:<name>[:<int>...]" or a path to a group JSON file

    Returns:
        Tuple of (group, registry key used for named subgroups)
    """
    if text.startswith("preset:"):
        parts = text.split(":")[1:]
        name = parts[0]
        try:
            args = [int(a) for a in parts[1:]]
        except ValueError:
            raise ConfigError(f"Invalid preset arguments: {text}")
        key = ":".join([name] + [str(a) for a in args])
        return preset_group(name, *args), key
    return load_group_json(text), text


def named_subgroup(G: FiniteGroup, source_key: str, name: str) -> Optional[SubgroupHandle]:
    gens = NAMED_SUBGROUPS.get(source_key, {}).get(name)
    if gens is None:
        return None
    return subgroup_generated(G, [G.element(g) for g in gens])


def resolve_subgroup(S: SubgroupHandle, source_key: str, name: str) -> SubgroupHandle:
    """
    Resolve a subgroup of S given by name.

    Names are tried as a registry entry (e.g. "V"), then "P<k>" (index into
    the canonical subgroup list of S), then a JSON file of generator images.
    """
    G = S.ambient
    handle = named_subgroup(G, source_key, name)
    if handle is None and name.startswith("P") and name[1:].isdigit():
        subgroups = subgroups_of(S)
        k = int(name[1:])
        if k >= len(subgroups):
            raise ConfigError(f"Subgroup index out of range: {name} (S has {len(subgroups)} subgroups)")
        handle = subgroups[k]
    if handle is None and Path(name).is_file():
        try:
            gens = json.loads(Path(name).read_text())
            handle = subgroup_generated(G, [G.element(g) for g in gens])
        except (OSError, ValueError, TypeError) as e:
            raise ConfigError(f"Unreadable subgroup file {name}: {e}")
    if handle is None:
        raise ConfigError(f"Unknown subgroup name: {name}")
    if not handle.is_subgroup_of(S):
        raise ConfigError(f"Subgroup {name} is not contained in the Sylow subgroup")
    return handle


def subgroup_names(S: SubgroupHandle, source_key: str) -> Dict[int, str]:
    """Registry names of subgroups of S, keyed by mask."""
    names = {}
    for name in NAMED_SUBGROUPS.get(source_key, {}):
        handle = named_subgroup(S.ambient, source_key, name)
        if handle is not None and handle.is_subgroup_of(S):
            names[handle.mask] = name
    return names


if __name__ == "__main__":
    for label, group in [
        ("S4", symmetric(4)),
        ("A4", alternating(4)),
        ("D8", dihedral(8)),
        ("Q8", quaternion8()),
        ("3^{1+2}", extraspecial_exponent_p(3)),
    ]:
        print(f"{label}: order {group.order}")
