"""JSON helpers shared by the CLI and the certificate verifiers."""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ContractError


def frac_json(x) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def frac_from_json(d) -> Fraction:
    return Fraction(d["num"], d["den"])


def element_json(g):
    if isinstance(g, tuple):
        return [element_json(x) for x in g]
    return g


def element_from_json(v):
    if isinstance(v, list):
        return tuple(element_from_json(x) for x in v)
    return v


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ContractError(f"cannot parse {text!r} as a rational") from exc
