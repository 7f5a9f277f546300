"""Built-in group registry and the structured group-spec loader.

A group spec is a JSON-able dict {"kind": ..., "params": {...}}; registry
files map names to specs and can extend (or shadow) the built-ins.
"""

from __future__ import annotations

import json

from .errors import ContractError
from .groups import (AbelianProduct, CayleyTable, Cyclic, Dihedral, FreeAbelian,
                     FreeGroup, GroupOracle, Heisenberg, HeisenbergMod,
                     Lamplighter, Quaternion8, ZdMod)
from .rewriting import RewritingGroup, triangle_group

BUILTIN_SPECS = {
    "z": {"kind": "free_abelian", "params": {"d": 1}},
    "z2": {"kind": "free_abelian", "params": {"d": 2}},
    "z3": {"kind": "free_abelian", "params": {"d": 3}},
    "free2": {"kind": "free", "params": {"k": 2}},
    "free3": {"kind": "free", "params": {"k": 3}},
    "heisenberg": {"kind": "heisenberg", "params": {}},
    "lamplighter": {"kind": "lamplighter", "params": {}},
    "c2": {"kind": "cyclic", "params": {"n": 2}},
    "c3": {"kind": "cyclic", "params": {"n": 3}},
    "c4": {"kind": "cyclic", "params": {"n": 4}},
    "c8": {"kind": "cyclic", "params": {"n": 8}},
    "c9": {"kind": "cyclic", "params": {"n": 9}},
    "c2xc2": {"kind": "abelian", "params": {"orders": [2, 2]}},
    "c3xc3": {"kind": "abelian", "params": {"orders": [3, 3]}},
    "d4": {"kind": "dihedral", "params": {"n": 4}},
    "q8": {"kind": "quaternion8", "params": {}},
    "heisenberg_mod_2": {"kind": "heisenberg_mod", "params": {"m": 2}},
    "heisenberg_mod_3": {"kind": "heisenberg_mod", "params": {"m": 3}},
    "heisenberg_mod_4": {"kind": "heisenberg_mod", "params": {"m": 4}},
    "t334": {"kind": "triangle", "params": {"k": 4}},
    "t335": {"kind": "triangle", "params": {"k": 5}},
}

# the finite p-groups exercised by the filtration cross-checks
P_GROUP_NAMES = {
    2: ["c2", "c4", "c2xc2", "c8", "d4", "q8"],
    3: ["c3", "c9", "c3xc3", "heisenberg_mod_3"],
}


def make_group(spec: dict) -> GroupOracle:
    kind = spec.get("kind")
    params = dict(spec.get("params", {}))
    if "generators" in spec and "generators" not in params:
        params["generators"] = spec["generators"]
    if kind == "free":
        return FreeGroup(int(params["k"]))
    if kind == "free_abelian":
        return FreeAbelian(int(params["d"]))
    if kind == "heisenberg":
        return Heisenberg()
    if kind == "lamplighter":
        return Lamplighter()
    if kind == "cyclic":
        return Cyclic(int(params["n"]))
    if kind == "abelian":
        return AbelianProduct(tuple(int(n) for n in params["orders"]))
    if kind == "dihedral":
        return Dihedral(int(params["n"]))
    if kind == "quaternion8":
        return Quaternion8()
    if kind == "heisenberg_mod":
        return HeisenbergMod(int(params["m"]))
    if kind == "zd_mod":
        return ZdMod(int(params["d"]), int(params["m"]))
    if kind == "triangle":
        return triangle_group(int(params["k"]))
    if kind == "rewriting_backed":
        return RewritingGroup(
            params["generators"], params["relators"],
            name=spec.get("name"),
            inverse_letters=bool(params.get("inverse_letters", True)),
        )
    if kind == "finite_cayley_table":
        return CayleyTable(params["table"], params["generators"],
                           name=spec.get("name", "cayley"),
                           identity=int(params.get("identity", 0)))
    raise ContractError(f"unknown group kind {kind!r}")


def load_registry(path: str | None = None) -> dict:
    registry = dict(BUILTIN_SPECS)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            user = json.load(fh)
        if not isinstance(user, dict):
            raise ContractError("registry file must map names to group specs")
        registry.update(user)
    return registry


def get_group(name: str, registry_path: str | None = None) -> GroupOracle:
    registry = load_registry(registry_path)
    if name not in registry:
        raise ContractError(
            f"unknown group {name!r}; available: {', '.join(sorted(registry))}"
        )
    return make_group(registry[name])
