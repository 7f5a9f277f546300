"""Group oracles with canonical normal forms, Cayley-ball BFS and dead ends.

Every group is presented through the same small interface: a symmetric list
of generator symbols (single characters; uppercase is the formal inverse of
the lowercase letter, involutions are self-paired), an identity normal form,
and exact multiplication.  Word lengths always come from BFS over the
generator symbols in declaration order, so every group flows through one
deterministic code path; closed formulas appear only in tests.

Element representations are typed per family: integer vectors for free
abelian groups, integer triples for the discrete Heisenberg group,
(sorted lamp tuple, position) pairs for the lamplighter, reduced words for
free groups, small integers or tuples for finite built-ins, and shortlex
normal-form strings for rewriting-backed groups.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from . import budgets
from .errors import ContractError, OutOfRangeError, ResourceBudgetError

Element = Any  # per-oracle concrete type; always hashable and immutable


class GroupOracle(ABC):
    """Uniform interface: normal forms, generator action, full products."""

    kind: str = "abstract"
    name: str = "group"
    generator_symbols: tuple[str, ...] = ()
    order: int | None = None  # None for infinite groups

    @property
    @abstractmethod
    def identity(self) -> Element: ...

    @abstractmethod
    def multiply(self, g: Element, s: str) -> Element:
        """Right-multiply a normal form by one generator symbol."""

    @abstractmethod
    def mul(self, g: Element, h: Element) -> Element: ...

    @abstractmethod
    def inv(self, g: Element) -> Element: ...

    def inverse_symbol(self, s: str) -> str:
        t = s.swapcase()
        return t if t in self.generator_symbols else s

    def normalize(self, word: Iterable[str]) -> Element:
        g = self.identity
        for s in word:
            if s not in self.generator_symbols:
                raise ContractError(f"unknown generator symbol {s!r} for {self.name}")
            g = self.multiply(g, s)
        return g

    def elements(self) -> Iterator[Element]:
        raise ContractError(f"{self.name} has no finite enumeration")

    def to_jsonable(self, g: Element):
        return _jsonable(g)

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.name}>"


def _jsonable(g):
    if isinstance(g, tuple):
        return [_jsonable(x) for x in g]
    return g


def _symbol_pairs(letters: str) -> tuple[str, ...]:
    out = []
    for c in letters:
        out.append(c)
        out.append(c.upper())
    return tuple(out)


class FreeGroup(GroupOracle):
    """Free group of rank k; normal forms are freely reduced words."""

    kind = "free"

    def __init__(self, k: int):
        if not 1 <= k <= 26:
            raise ContractError("free rank must be between 1 and 26")
        self.k = k
        self.name = f"free{k}"
        self.generator_symbols = _symbol_pairs("abcdefghijklmnopqrstuvwxyz"[:k])

    @property
    def identity(self) -> str:
        return ""

    def multiply(self, g: str, s: str) -> str:
        if g and g[-1] == s.swapcase():
            return g[:-1]
        return g + s

    def mul(self, g: str, h: str) -> str:
        i = len(g)
        j = 0
        while i > 0 and j < len(h) and g[i - 1] == h[j].swapcase():
            i -= 1
            j += 1
        return g[:i] + h[j:]

    def inv(self, g: str) -> str:
        return g[::-1].swapcase()


class FreeAbelian(GroupOracle):
    """Z^d with generators +-e_i; normal forms are integer vectors."""

    kind = "free_abelian"

    def __init__(self, d: int):
        if not 1 <= d <= 26:
            raise ContractError("rank must be between 1 and 26")
        self.d = d
        self.name = "z" if d == 1 else f"z{d}"
        self.generator_symbols = _symbol_pairs("abcdefghijklmnopqrstuvwxyz"[:d])
        self._steps = {}
        for i in range(d):
            e = [0] * d
            e[i] = 1
            self._steps[self.generator_symbols[2 * i]] = tuple(e)
            e[i] = -1
            self._steps[self.generator_symbols[2 * i + 1]] = tuple(e)

    @property
    def identity(self) -> tuple:
        return (0,) * self.d

    def multiply(self, g, s):
        step = self._steps[s]
        return tuple(a + b for a, b in zip(g, step))

    def mul(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in g)


class Heisenberg(GroupOracle):
    """Discrete Heisenberg group; (a, b, c) * (a', b', c') = (a+a', b+b', c+c'+a*b')."""

    kind = "heisenberg"
    name = "heisenberg"
    generator_symbols = ("x", "X", "y", "Y")

    @property
    def identity(self):
        return (0, 0, 0)

    def multiply(self, g, s):
        a, b, c = g
        if s == "x":
            return (a + 1, b, c)
        if s == "X":
            return (a - 1, b, c)
        if s == "y":
            return (a, b + 1, c + a)
        if s == "Y":
            return (a, b - 1, c - a)
        raise ContractError(f"unknown symbol {s!r}")

    def mul(self, g, h):
        a, b, c = g
        d, e, f = h
        return (a + d, b + e, c + f + a * e)

    def inv(self, g):
        a, b, c = g
        return (-a, -b, -c + a * b)


class Lamplighter(GroupOracle):
    """Z2 wr Z with generators {t, t^-1, a}; a flips the lamp at the cursor.

    Normal form: (sorted tuple of lit lamp positions, cursor position).
    """

    kind = "lamplighter"
    name = "lamplighter"
    generator_symbols = ("t", "T", "a")

    @property
    def identity(self):
        return ((), 0)

    def inverse_symbol(self, s):
        return {"t": "T", "T": "t", "a": "a"}[s]

    def multiply(self, g, s):
        lamps, pos = g
        if s == "t":
            return (lamps, pos + 1)
        if s == "T":
            return (lamps, pos - 1)
        if s == "a":
            return (_toggle(lamps, pos), pos)
        raise ContractError(f"unknown symbol {s!r}")

    def mul(self, g, h):
        lamps1, p = g
        lamps2, q = h
        shifted = tuple(x + p for x in lamps2)
        return (_symm_diff(lamps1, shifted), p + q)

    def inv(self, g):
        lamps, p = g
        return (tuple(sorted(x - p for x in lamps)), -p)


def _toggle(lamps: tuple, pos: int) -> tuple:
    i = bisect_left(lamps, pos)
    if i < len(lamps) and lamps[i] == pos:
        return lamps[:i] + lamps[i + 1 :]
    return lamps[:i] + (pos,) + lamps[i:]


def _symm_diff(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(set(a) ^ set(b)))


class Cyclic(GroupOracle):
    """Z/n; elements are residues 0..n-1, generator symbol s (S for inverse)."""

    kind = "finite_cyclic"

    def __init__(self, n: int):
        if n < 2:
            raise ContractError("cyclic order must be >= 2")
        self.n = n
        self.order = n
        self.name = f"c{n}"
        self.generator_symbols = ("s",) if n == 2 else ("s", "S")

    @property
    def identity(self):
        return 0

    def inverse_symbol(self, s):
        if self.n == 2:
            return "s"
        return "S" if s == "s" else "s"

    def multiply(self, g, s):
        return (g + (1 if s == "s" else -1)) % self.n

    def mul(self, g, h):
        return (g + h) % self.n

    def inv(self, g):
        return (-g) % self.n

    def elements(self):
        return iter(range(self.n))


class AbelianProduct(GroupOracle):
    """Direct product of cyclic groups; one generator per factor."""

    kind = "finite_abelian"

    def __init__(self, orders: tuple[int, ...], name: str | None = None):
        if not orders or any(n < 2 for n in orders):
            raise ContractError("factor orders must all be >= 2")
        self.orders = tuple(orders)
        self.order = 1
        for n in orders:
            self.order *= n
        self.name = name or "x".join(f"c{n}" for n in orders)
        letters = "abcdefghijklmnopqrstuvwxyz"[: len(orders)]
        syms = []
        self._steps = {}
        for i, (c, n) in enumerate(zip(letters, orders)):
            e = [0] * len(orders)
            e[i] = 1
            syms.append(c)
            self._steps[c] = tuple(e)
            if n > 2:
                syms.append(c.upper())
                e[i] = -1
                self._steps[c.upper()] = tuple(e)
        self.generator_symbols = tuple(syms)

    @property
    def identity(self):
        return (0,) * len(self.orders)

    def inverse_symbol(self, s):
        i = "abcdefghijklmnopqrstuvwxyz".index(s.lower())
        if self.orders[i] == 2:
            return s
        return s.swapcase()

    def multiply(self, g, s):
        step = self._steps[s]
        return tuple((a + b) % n for a, b, n in zip(g, step, self.orders))

    def mul(self, g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def inv(self, g):
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def elements(self):
        return itertools.product(*(range(n) for n in self.orders))


class Dihedral(GroupOracle):
    """Dihedral group of order 2n; elements (i, f) meaning r^i s^f."""

    kind = "finite_dihedral"

    def __init__(self, n: int):
        if n < 2:
            raise ContractError("dihedral parameter must be >= 2")
        self.n = n
        self.order = 2 * n
        self.name = f"d{n}"
        self.generator_symbols = ("r", "R", "f") if n > 2 else ("r", "f")

    @property
    def identity(self):
        return (0, 0)

    def inverse_symbol(self, s):
        if s == "f" or self.n == 2:
            return s
        return s.swapcase()

    def multiply(self, g, s):
        i, fl = g
        if s == "r":
            return ((i + (1 if fl == 0 else -1)) % self.n, fl)
        if s == "R":
            return ((i + (-1 if fl == 0 else 1)) % self.n, fl)
        if s == "f":
            return (i, 1 - fl)
        raise ContractError(f"unknown symbol {s!r}")

    def mul(self, g, h):
        i, fl = g
        j, fm = h
        return ((i + (j if fl == 0 else -j)) % self.n, fl ^ fm)

    def inv(self, g):
        i, fl = g
        return ((-i) % self.n if fl == 0 else i, fl)

    def elements(self):
        return ((i, f) for f in (0, 1) for i in range(self.n))


class Quaternion8(GroupOracle):
    """Q8 = {+-1, +-i, +-j, +-k}; elements encoded 0..7 as (unit index, sign bit)."""

    kind = "finite_quaternion"
    name = "q8"
    order = 8
    generator_symbols = ("i", "I", "j", "J")

    # element = 2*u + s with u in {0:1, 1:i, 2:j, 3:k}, s the sign bit
    _UNIT_MUL = {}  # (u, v) -> (w, sign)
    for _u in range(4):
        _UNIT_MUL[(0, _u)] = (_u, 0)
        _UNIT_MUL[(_u, 0)] = (_u, 0)
    _UNIT_MUL[(1, 1)] = (0, 1)
    _UNIT_MUL[(2, 2)] = (0, 1)
    _UNIT_MUL[(3, 3)] = (0, 1)
    _UNIT_MUL[(1, 2)] = (3, 0)
    _UNIT_MUL[(2, 1)] = (3, 1)
    _UNIT_MUL[(2, 3)] = (1, 0)
    _UNIT_MUL[(3, 2)] = (1, 1)
    _UNIT_MUL[(3, 1)] = (2, 0)
    _UNIT_MUL[(1, 3)] = (2, 1)
    del _u

    @property
    def identity(self):
        return 0

    def multiply(self, g, s):
        return self.mul(g, {"i": 2, "I": 3, "j": 4, "J": 5}[s])

    def mul(self, g, h):
        u, su = divmod(g, 2)
        v, sv = divmod(h, 2)
        w, sw = self._UNIT_MUL[(u, v)]
        return 2 * w + (su ^ sv ^ sw)

    def inv(self, g):
        u, s = divmod(g, 2)
        if u == 0:
            return g
        return 2 * u + (1 - s)

    def elements(self):
        return iter(range(8))


class HeisenbergMod(GroupOracle):
    """Heisenberg group over Z/m (order m^3)."""

    kind = "heisenberg_mod"
    generator_symbols = ("x", "X", "y", "Y")

    def __init__(self, m: int):
        if m < 2:
            raise ContractError("modulus must be >= 2")
        self.m = m
        self.order = m**3
        self.name = f"heisenberg_mod_{m}"

    @property
    def identity(self):
        return (0, 0, 0)

    def multiply(self, g, s):
        a, b, c = g
        m = self.m
        if s == "x":
            return ((a + 1) % m, b, c)
        if s == "X":
            return ((a - 1) % m, b, c)
        if s == "y":
            return (a, (b + 1) % m, (c + a) % m)
        if s == "Y":
            return (a, (b - 1) % m, (c - a) % m)
        raise ContractError(f"unknown symbol {s!r}")

    def mul(self, g, h):
        a, b, c = g
        d, e, f = h
        m = self.m
        return ((a + d) % m, (b + e) % m, (c + f + a * e) % m)

    def inv(self, g):
        a, b, c = g
        m = self.m
        return ((-a) % m, (-b) % m, (-c + a * b) % m)

    def elements(self):
        m = self.m
        return itertools.product(range(m), range(m), range(m))


class ZdMod(GroupOracle):
    """(Z/m)^d, the finite quotient of Z^d by (mZ)^d."""

    kind = "zd_mod"

    def __init__(self, d: int, m: int):
        if d < 1 or m < 2:
            raise ContractError("need d >= 1 and m >= 2")
        self.d = d
        self.m = m
        self.order = m**d
        self.name = f"z{d}_mod_{m}"
        letters = "abcdefghijklmnopqrstuvwxyz"[:d]
        syms = []
        self._steps = {}
        for i, c in enumerate(letters):
            e = [0] * d
            e[i] = 1
            syms.append(c)
            self._steps[c] = tuple(e)
            if m > 2:
                syms.append(c.upper())
                e[i] = -1
                self._steps[c.upper()] = tuple(e)
        self.generator_symbols = tuple(syms)

    @property
    def identity(self):
        return (0,) * self.d

    def inverse_symbol(self, s):
        return s if self.m == 2 else s.swapcase()

    def multiply(self, g, s):
        step = self._steps[s]
        return tuple((a + b) % self.m for a, b in zip(g, step))

    def mul(self, g, h):
        return tuple((a + b) % self.m for a, b in zip(g, h))

    def inv(self, g):
        return tuple((-a) % self.m for a in g)

    def elements(self):
        return itertools.product(*(range(self.m) for _ in range(self.d)))


class CayleyTable(GroupOracle):
    """Finite group given by an explicit multiplication table on 0..n-1."""

    kind = "finite_cayley_table"

    def __init__(self, table: list[list[int]], generators: dict[str, int],
                 name: str = "cayley", identity: int = 0):
        self.table = [tuple(row) for row in table]
        n = len(table)
        if any(len(row) != n for row in table):
            raise ContractError("multiplication table must be square")
        self.order = n
        self.name = name
        self._identity = identity
        self._gen_map = dict(generators)
        self.generator_symbols = tuple(generators)
        self._inverse = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == identity and self.table[h][g] == identity:
                    self._inverse[g] = h
        if any(v is None for v in self._inverse):
            raise ContractError("table has a non-invertible row: not a group")

    @property
    def identity(self):
        return self._identity

    def inverse_symbol(self, s):
        target = self._inverse[self._gen_map[s]]
        for sym, idx in self._gen_map.items():
            if idx == target:
                return sym
        raise ContractError(f"generator set not closed under inversion at {s!r}")

    def multiply(self, g, s):
        return self.table[g][self._gen_map[s]]

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return self._inverse[g]

    def elements(self):
        return iter(range(self.order))


# ---------------------------------------------------------------------------
# word-metric balls


@dataclass(frozen=True)
class WordMetricBall:
    """Exact word lengths on a ball, with deterministic BFS enumeration."""

    oracle: GroupOracle
    radius: int
    lengths: dict = field(repr=False)
    by_sphere: list = field(repr=False)

    @property
    def elements(self) -> list:
        """Enumeration order: spheres concatenated, each in BFS discovery order."""
        out = []
        for sph in self.by_sphere:
            out.extend(sph)
        return out

    def __contains__(self, g) -> bool:
        return g in self.lengths

    def __len__(self) -> int:
        return len(self.lengths)

    def word_length(self, g) -> int:
        try:
            return self.lengths[g]
        except KeyError:
            raise OutOfRangeError(
                f"element outside the radius-{self.radius} ball of {self.oracle.name}"
            ) from None

    def sphere_sizes(self) -> list[int]:
        return [len(s) for s in self.by_sphere]


def ball(oracle: GroupOracle, radius: int, max_elements: int | None = None) -> WordMetricBall:
    """BFS ball of the word metric; generator order fixes the enumeration."""
    if radius < 0:
        raise ContractError("radius must be >= 0")
    cap = budgets.ball_cap(max_elements)
    e = oracle.identity
    lengths = {e: 0}
    by_sphere = [[e]]
    frontier = [e]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in oracle.generator_symbols:
                h = oracle.multiply(g, s)
                if h not in lengths:
                    lengths[h] = r
                    nxt.append(h)
                    if len(lengths) > cap:
                        raise ResourceBudgetError(
                            f"ball of {oracle.name} exceeded cap of {cap} elements"
                        )
        if not nxt:
            break
        by_sphere.append(nxt)
        frontier = nxt
    while len(by_sphere) <= radius:
        by_sphere.append([])
    return WordMetricBall(oracle, radius, lengths, by_sphere)


def word_length(b: WordMetricBall, g) -> int:
    return b.word_length(g)


def is_dead_end(oracle: GroupOracle, b: WordMetricBall, g) -> bool:
    """True iff no generator moves g further from the identity."""
    n = b.word_length(g)
    if b.radius < n + 1:
        raise OutOfRangeError("ball radius must exceed the element's length")
    for s in oracle.generator_symbols:
        if b.word_length(oracle.multiply(g, s)) > n:
            return False
    return True


def find_dead_ends(oracle: GroupOracle, radius: int,
                   max_elements: int | None = None) -> list:
    """All dead ends of length <= radius-1, in (length, enumeration) order."""
    if radius < 1:
        raise ContractError("radius must be >= 1")
    b = ball(oracle, radius, max_elements)
    out = []
    for sph in b.by_sphere[:radius]:
        for g in sph:
            if is_dead_end(oracle, b, g):
                out.append(g)
    return out


# ---------------------------------------------------------------------------
# the dead-end family in the (3,3,k) triangle groups


def _invert_word(w: str) -> str:
    return w[::-1].swapcase()


def _word_power(w: str, e: int) -> str:
    if e >= 0:
        return w * e
    return _invert_word(w) * (-e)


def triangle_dead_end_family(k: int, n: int) -> str:
    """The n-th member of the standard dead-end family in T(3,3,k).

    Even k: index 2m gives ((xy)^{k/2} (yx)^{k/2})^m and index 2m+1 appends
    one more (xy)^{k/2} block.  Odd k: index n gives ((xy)^{(k-1)/2} x)^n.
    Negative indices are the formal inverses along the same axis.
    """
    if k < 3:
        raise ContractError("triangle parameter k must be >= 3")
    if n == 0:
        raise ContractError("index n must be nonzero")
    if k % 2 == 0:
        half = "xy" * (k // 2)
        block = half + "yx" * (k // 2)
        m, rem = divmod(n, 2)
        if rem == 0:
            return _word_power(block, m)
        return _word_power(block, m) + half
    return _word_power("xy" * ((k - 1) // 2) + "x", n)
