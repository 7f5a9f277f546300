"""Length-twisted deformations of group rings.

The deformed product of basis elements is
    d_g * d_h = lambda**(len(g) + len(h) - len(gh)) * d_{gh},
with the exponent nonnegative by the triangle inequality and the convention
0**0 = 1, so lambda = 0 degenerates to the length-graded ("crystal") product
and invertible lambda untwists to the plain group ring via d_g -> lambda**len(g) g.

Elements are immutable finitely supported coefficient maps over normal
forms, pinned to a word-metric ball that must know the lengths of every
support (and of every product the caller asks for).
"""

from __future__ import annotations

import random

from .errors import ContractError, OutOfRangeError
from .groups import GroupOracle, WordMetricBall, ball


class HeckeElement:
    """Finitely supported map normal form -> scalar, with deformation lambda."""

    __slots__ = ("group", "ball", "ring", "lam", "coeffs")

    def __init__(self, group: GroupOracle, b: WordMetricBall, ring, lam, coeffs: dict):
        clean = {}
        for g, c in coeffs.items():
            c = ring.coerce(c)
            if ring.is_zero(c):
                continue
            if g not in b:
                raise OutOfRangeError("support element outside the attached ball")
            clean[g] = c
        self.group = group
        self.ball = b
        self.ring = ring
        self.lam = ring.coerce(lam)
        self.coeffs = clean

    def __eq__(self, other):
        return (isinstance(other, HeckeElement)
                and self.group is other.group and self.ring == other.ring
                and self.lam == other.lam and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.group), self.lam, tuple(sorted(self.coeffs.items(), key=repr))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return set(self.coeffs)

    def __add__(self, other):
        _check_compatible(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = self.ring.add(out.get(g, self.ring.zero), c)
        return HeckeElement(self.group, _wider(self.ball, other.ball), self.ring, self.lam, out)

    def __sub__(self, other):
        _check_compatible(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = self.ring.sub(out.get(g, self.ring.zero), c)
        return HeckeElement(self.group, _wider(self.ball, other.ball), self.ring, self.lam, out)

    def scale(self, c):
        c = self.ring.coerce(c)
        return HeckeElement(self.group, self.ball, self.ring, self.lam,
                            {g: self.ring.mul(c, v) for g, v in self.coeffs.items()})

    def __mul__(self, other):
        return hecke_mul(self, other)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*d[{g!r}]" for g, c in sorted(self.coeffs.items(), key=repr)]
        return " + ".join(parts)


def _check_compatible(a: HeckeElement, b: HeckeElement):
    if a.group is not b.group:
        raise ContractError("elements live over different groups")
    if a.ring != b.ring:
        raise ContractError("elements live over different coefficient rings")
    if a.lam != b.lam:
        raise ContractError("elements carry different deformation parameters")


def _wider(a: WordMetricBall, b: WordMetricBall) -> WordMetricBall:
    return a if a.radius >= b.radius else b


def delta(group: GroupOracle, b: WordMetricBall, ring, lam, g, coeff=1) -> HeckeElement:
    """Single-term element coeff * d_g; g must already be a normal form."""
    return HeckeElement(group, b, ring, lam, {g: coeff})


def delta_mul(group: GroupOracle, b: WordMetricBall, ring, lam, g, h) -> HeckeElement:
    """d_g * d_h as a single-term element (or zero at lambda = 0)."""
    lam = ring.coerce(lam)
    gh = group.mul(g, h)
    e = b.word_length(g) + b.word_length(h) - b.word_length(gh)
    if e < 0:
        raise ContractError("length function violated the triangle inequality")
    return HeckeElement(group, b, ring, lam, {gh: ring.pow(lam, e)})


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Bilinear extension of the twisted basis product, zero terms pruned."""
    _check_compatible(a, b)
    wide = _wider(a.ball, b.ball)
    ring = a.ring
    out: dict = {}
    for g, cg in a.coeffs.items():
        for h, ch in b.coeffs.items():
            gh = a.group.mul(g, h)
            e = wide.word_length(g) + wide.word_length(h) - wide.word_length(gh)
            c = ring.mul(ring.mul(cg, ch), ring.pow(a.lam, e))
            if not ring.is_zero(c):
                out[gh] = ring.add(out.get(gh, ring.zero), c)
    return HeckeElement(a.group, wide, ring, a.lam, out)


def unit(group: GroupOracle, b: WordMetricBall, ring, lam) -> HeckeElement:
    return HeckeElement(group, b, ring, lam, {group.identity: ring.one})


def untwist(a: HeckeElement) -> HeckeElement:
    """Apply d_g -> lambda**len(g) g; needs lambda invertible.  The image is
    a plain group-ring element, represented at deformation parameter 1
    (where the twisted product IS the group-ring product)."""
    ring = a.ring
    if not ring.is_invertible(a.lam):
        raise ContractError("untwisting needs an invertible deformation parameter")
    out = {g: ring.mul(c, ring.pow(a.lam, a.ball.word_length(g)))
           for g, c in a.coeffs.items()}
    return HeckeElement(a.group, a.ball, ring, ring.one, out)


def crystal_monomial_check(group: GroupOracle, radius: int, ring,
                           sample_size: int | None = None, seed: int = 0,
                           max_elements: int | None = None) -> bool:
    """At lambda = 0, products of basis elements must be 0 or again basis
    elements (coefficient exactly 1).  Checks all pairs from the radius ball
    (or a seeded sample), evaluating inside the radius-2r ball."""
    wide = ball(group, 2 * radius, max_elements)
    small = [g for g in wide.elements if wide.lengths[g] <= radius]
    pairs = [(g, h) for g in small for h in small]
    if sample_size is not None and sample_size < len(pairs):
        rng = random.Random(seed)
        pairs = rng.sample(pairs, sample_size)
    zero = ring.zero
    for g, h in pairs:
        prod = delta_mul(group, wide, ring, zero, g, h)
        if prod.is_zero():
            continue
        if len(prod.coeffs) != 1 or set(prod.coeffs.values()) != {ring.one}:
            return False
    return True
