"""Finite Coxeter groups of type A and I2(m), fully enumerated.

Elements are addressed by a canonical index: breadth-first from the
identity (index 0), one length at a time, each level sorted by the
element's key (one-line notation for type A, ``(k, reflection flag)`` for the
dihedral groups).  Products follow ``(u*v)(i) = u(v(i))`` so that ``w*s_i``
swaps the *positions* ``i, i+1`` of ``w`` and ``s_i*w`` swaps the *values*.

Subsets of the index set ``I = {1, ..., r}`` are passed around as
``frozenset`` of ints at the API boundary and as bitmasks (bit ``i-1`` for
``i``) internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Union

from .errors import DescriptorError, DomainError, InvariantViolation
from .posets import FinitePoset, bits

Subset = frozenset


class Order(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    LR = "left-right"
    BRUHAT = "bruhat"


@dataclass(frozen=True)
class GroupDescriptor:
    family: str  # "A" or "I2"
    param: int   # number of letters n for A_{n-1}; m for I2(m)

    def __post_init__(self):
        if self.family == "A":
            if self.param < 2:
                raise DescriptorError(f"type A needs rank >= 1, got A{self.param - 1}")
        elif self.family == "I2":
            if self.param < 2:
                raise DescriptorError(f"I2(m) needs m >= 2, got m={self.param}")
        else:
            raise DescriptorError(f"unsupported family {self.family!r}")

    @property
    def rank(self) -> int:
        return self.param - 1 if self.family == "A" else 2

    def __str__(self) -> str:
        return f"A{self.param - 1}" if self.family == "A" else f"I2({self.param})"


_A_RE = re.compile(r"^A(\d+)$")
_I2_RE = re.compile(r"^I2\((\d+)\)$")


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse ``"A3"`` (the symmetric group on 4 letters) or ``"I2(5)"``."""
    s = text.strip()
    if m := _A_RE.match(s):
        return GroupDescriptor("A", int(m.group(1)) + 1)
    if m := _I2_RE.match(s):
        return GroupDescriptor("I2", int(m.group(1)))
    raise DescriptorError(f"cannot parse group descriptor {text!r}")


# -- concrete realizations ----------------------------------------------------

class _Permutations:
    """Type A_{n-1}: permutations of 1..n in one-line notation."""

    def __init__(self, n: int):
        self.n = n

    def identity(self):
        return tuple(range(1, self.n + 1))

    def generator(self, i: int):
        p = list(range(1, self.n + 1))
        p[i - 1], p[i] = p[i], p[i - 1]
        return tuple(p)

    def compose(self, u, v):
        return tuple(u[x - 1] for x in v)

    def invert(self, u):
        inv = [0] * self.n
        for pos, val in enumerate(u, 1):
            inv[val - 1] = pos
        return tuple(inv)

    def sort_key(self, key):
        return key

    def text(self, key) -> str:
        sep = "" if self.n < 10 else ","
        return sep.join(map(str, key))

    def parse(self, text: str):
        s = text.strip()
        parts = s.split(",") if "," in s else list(s)
        try:
            key = tuple(int(c) for c in parts)
        except ValueError:
            raise DescriptorError(f"bad permutation {text!r}") from None
        if sorted(key) != list(range(1, self.n + 1)):
            raise DescriptorError(f"{text!r} is not a permutation of 1..{self.n}")
        return key


class _Dihedral:
    """I2(m): pairs ``(k, f)`` standing for ``r^k s^f`` with ``r = s2 s1``."""

    def __init__(self, m: int):
        self.m = m

    def identity(self):
        return (0, 0)

    def generator(self, i: int):
        return (0, 1) if i == 1 else (1, 1)

    def compose(self, u, v):
        a, f = u
        b, g = v
        return ((a + (-b if f else b)) % self.m, f ^ g)

    def invert(self, u):
        k, f = u
        return u if f else ((-k) % self.m, 0)

    def sort_key(self, key):
        return key

    def text(self, key) -> str:
        k, f = key
        if not f:
            return "e" if k == 0 else f"r^{k}"
        return f"r^{k}.s"

    def parse(self, text: str):
        s = text.strip()
        if s == "e":
            return (0, 0)
        m = re.match(r"^r\^(\d+)(\.s)?$", s)
        if m is None:
            raise DescriptorError(f"bad dihedral element {text!r}")
        k = int(m.group(1))
        if k >= self.m:
            raise DescriptorError(f"rotation exponent {k} out of range for I2({self.m})")
        return (k, 1 if m.group(2) else 0)


# -- elements -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Element:
    """A group element: its group plus its canonical index."""

    group: CoxeterGroup
    index: int

    def __eq__(self, other):
        return (isinstance(other, Element) and other.group is self.group
                and other.index == self.index)

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __mul__(self, other: Element) -> Element:
        return self.group.multiply(self, other)

    def __invert__(self) -> Element:
        return self.group.element(self.group.inverse[self.index])

    @property
    def key(self):
        return self.group.keys[self.index]

    @property
    def length(self) -> int:
        return self.group.length[self.index]

    @property
    def right_descents(self) -> frozenset[int]:
        return self.group.subset(self.group.dr[self.index])

    @property
    def left_descents(self) -> frozenset[int]:
        return self.group.subset(self.group.dl[self.index])

    def __str__(self) -> str:
        return self.group.text(self.index)

    def __repr__(self) -> str:
        return f"<{self.group.descriptor} {self}>"


ElementLike = Union[Element, int, str]


@dataclass(frozen=True)
class ParabolicDecomposition:
    side: str                 # "left": w = w_J * ^Jw ; "right": w = w^K * _Kw
    subset: frozenset[int]
    parts: tuple[Element, Element]


# -- the group ----------------------------------------------------------------

class CoxeterGroup:
    """A fully enumerated finite Coxeter group.  Immutable after construction."""

    def __init__(self, descriptor: GroupDescriptor):
        self.descriptor = descriptor
        self.rank = descriptor.rank
        self.index_set = tuple(range(1, self.rank + 1))
        self._real = (_Permutations(descriptor.param) if descriptor.family == "A"
                      else _Dihedral(descriptor.param))
        real = self._real
        gens = [real.generator(i) for i in self.index_set]

        keys = [real.identity()]
        index = {keys[0]: 0}
        length = [0]
        level = [keys[0]]
        depth = 0
        while level:
            depth += 1
            new = set()
            for x in level:
                for g in gens:
                    y = real.compose(x, g)
                    if y not in index and y not in new:
                        new.add(y)
            level = sorted(new, key=real.sort_key)
            for y in level:
                index[y] = len(keys)
                keys.append(y)
                length.append(depth)
        self.keys = keys
        self._index = index
        self.length = length
        self.order = len(keys)

        N = self.order
        self.rs = [[index[real.compose(keys[w], g)] for w in range(N)] for g in gens]
        self.ls = [[index[real.compose(g, keys[w])] for w in range(N)] for g in gens]
        self.inverse = [index[real.invert(k)] for k in keys]
        self.dr = [sum(1 << (i - 1) for i in self.index_set
                       if length[self.rs[i - 1][w]] < length[w]) for w in range(N)]
        self.dl = [sum(1 << (i - 1) for i in self.index_set
                       if length[self.ls[i - 1][w]] < length[w]) for w in range(N)]
        top = max(length)
        tops = [w for w in range(N) if length[w] == top]
        if len(tops) != 1:
            raise InvariantViolation("longest element is not unique")
        self.w0 = tops[0]
        self.full_mask = (1 << self.rank) - 1

    # -- conversions ----------------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.descriptor})"

    @property
    def is_type_a(self) -> bool:
        return self.descriptor.family == "A"

    def element(self, index: int) -> Element:
        return Element(self, index)

    def elements(self) -> list[Element]:
        return [Element(self, i) for i in range(self.order)]

    def idx(self, x: ElementLike) -> int:
        """Canonical index of an element given as Element, index or text."""
        if isinstance(x, Element):
            if x.group is not self:
                raise DomainError(f"{x!r} does not belong to {self!r}")
            return x.index
        if isinstance(x, str):
            return self._index[self._real.parse(x)]
        if isinstance(x, int) and 0 <= x < self.order:
            return x
        raise DomainError(f"not an element of {self!r}: {x!r}")

    def parse(self, text: str) -> Element:
        return Element(self, self.idx(text))

    def text(self, w: int) -> str:
        return self._real.text(self.keys[w])

    def subset(self, mask: int) -> frozenset[int]:
        return frozenset(i + 1 for i in bits(mask))

    def subset_mask(self, subset: Iterable[int] | int) -> int:
        """Bitmask of a subset of I; an int is taken to be a bitmask already."""
        if isinstance(subset, int):
            if subset < 0 or subset & ~self.full_mask:
                raise IndexError(f"bitmask {subset} is not a subset of {self.index_set}")
            return subset
        m = 0
        for i in subset:
            if i not in self.index_set:
                raise IndexError(f"{i} is not in the index set {self.index_set}")
            m |= 1 << (i - 1)
        return m

    def all_subsets(self) -> list[int]:
        """Every subset of I as a bitmask, by size then lexicographically."""
        out = []
        for k in range(self.rank + 1):
            for c in combinations(range(self.rank), k):
                out.append(sum(1 << i for i in c))
        return out

    def format_subset(self, mask: int) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.subset(mask))) + "}"

    # -- arithmetic -----------------------------------------------------------

    def mul(self, u: int, v: int) -> int:
        return self._index[self._real.compose(self.keys[u], self.keys[v])]

    def multiply(self, u: ElementLike, v: ElementLike) -> Element:
        return Element(self, self.mul(self.idx(u), self.idx(v)))

    def s(self, i: int) -> int:
        """Index of the simple reflection s_i."""
        if i not in self.index_set:
            raise IndexError(f"{i} is not in the index set {self.index_set}")
        return self.rs[i - 1][0]

    def reduced_word(self, w: int) -> list[int]:
        """Reduced word obtained by repeatedly stripping the smallest right descent."""
        word = []
        while w:
            i = (self.dr[w] & -self.dr[w]).bit_length()
            word.append(i)
            w = self.rs[i - 1][w]
        word.reverse()
        return word

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for i in word:
            w = self.rs[i - 1][w]
        return w

    def descent_sets(self, w: ElementLike) -> tuple[frozenset[int], frozenset[int]]:
        """``(D_L(w), D_R(w))``."""
        w = self.idx(w)
        return self.subset(self.dl[w]), self.subset(self.dr[w])

    # -- parabolic machinery -------------------------------------------------

    def left_coset_rep(self, w: int, J: int) -> int:
        """``^J w``: strip left descents in J until none remain."""
        while d := self.dl[w] & J:
            i = (d & -d).bit_length()
            w = self.ls[i - 1][w]
        return w

    def right_coset_rep(self, w: int, K: int) -> int:
        """``w^K``: strip right descents in K until none remain."""
        while d := self.dr[w] & K:
            i = (d & -d).bit_length()
            w = self.rs[i - 1][w]
        return w

    def parabolic_decompose(self, w: ElementLike, subset: Iterable[int],
                            side: str) -> ParabolicDecomposition:
        w = self.idx(w)
        mask = self.subset_mask(subset)
        if side == "left":
            rep = self.left_coset_rep(w, mask)
            parts = (self.mul(w, self.inverse[rep]), rep)
        elif side == "right":
            rep = self.right_coset_rep(w, mask)
            parts = (rep, self.mul(self.inverse[rep], w))
        else:
            raise DomainError(f"side must be 'left' or 'right', not {side!r}")
        return ParabolicDecomposition(side, self.subset(mask),
                                      (Element(self, parts[0]), Element(self, parts[1])))

    def longest_of(self, J: int) -> int:
        w = 0
        while d := J & ~self.dr[w]:
            i = (d & -d).bit_length()
            w = self.rs[i - 1][w]
        return w

    def longest_element(self, subset: Iterable[int] | None = None) -> Element:
        mask = self.full_mask if subset is None else self.subset_mask(subset)
        return Element(self, self.longest_of(mask))

    def parabolic_subgroup(self, J: int) -> int:
        """Bitmask of the elements of W_J."""
        seen = 1
        stack = [0]
        gens = [i for i in range(self.rank) if J >> i & 1]
        while stack:
            x = stack.pop()
            for i in gens:
                y = self.rs[i][x]
                if not seen >> y & 1:
                    seen |= 1 << y
                    stack.append(y)
        return seen

    # -- orders ---------------------------------------------------------------

    @cached_property
    def _below(self) -> dict[Order, list[int]]:
        N = self.order
        by_length = sorted(range(N), key=lambda w: self.length[w])
        right = [0] * N
        left = [0] * N
        lr = [0] * N
        bruhat = [0] * N
        for w in by_length:
            r = l = x = 1 << w
            for i in bits(self.dr[w]):
                r |= right[self.rs[i][w]]
                x |= lr[self.rs[i][w]]
            for i in bits(self.dl[w]):
                l |= left[self.ls[i][w]]
                x |= lr[self.ls[i][w]]
            right[w], left[w], lr[w] = r, l, x
            if w == 0:
                bruhat[w] = 1
            else:
                # lifting property: [1, w] = [1, ws] u [1, ws].s for s a right descent
                i = (self.dr[w] & -self.dr[w]).bit_length() - 1
                ws = self.rs[i][w]
                b = bruhat[ws]
                for u in bits(bruhat[ws]):
                    b |= 1 << self.rs[i][u]
                bruhat[w] = b
        return {Order.RIGHT: right, Order.LEFT: left, Order.LR: lr, Order.BRUHAT: bruhat}

    def below(self, order: Order | str) -> list[int]:
        """Per element, the bitmask of elements below it in ``order``."""
        return self._below[Order(order)]

    @cached_property
    def _above(self) -> dict[Order, list[int]]:
        out = {}
        for order, below in self._below.items():
            up = [0] * self.order
            for v, m in enumerate(below):
                for u in bits(m):
                    up[u] |= 1 << v
            out[order] = up
        return out

    def above(self, order: Order | str) -> list[int]:
        return self._above[Order(order)]

    def leq(self, u: ElementLike, v: ElementLike, order: Order | str) -> bool:
        return bool(self.below(order)[self.idx(v)] >> self.idx(u) & 1)

    def bruhat_leq(self, u: ElementLike, v: ElementLike) -> bool:
        return self.leq(u, v, Order.BRUHAT)

    def weak_leq(self, u: ElementLike, v: ElementLike, side: str) -> bool:
        order = {"left": Order.LEFT, "right": Order.RIGHT,
                 "left-right": Order.LR, "lr": Order.LR}.get(side)
        if order is None:
            raise DomainError(f"unknown weak order side {side!r}")
        return self.leq(u, v, order)

    def weak_interval(self, w: ElementLike, side: str) -> list[Element]:
        order = Order.LEFT if side == "left" else Order.RIGHT
        return [Element(self, u) for u in bits(self.below(order)[self.idx(w)])]

    def poset(self, order: Order | str) -> FinitePoset:
        return FinitePoset(self.below(order), [self.text(w) for w in range(self.order)])

    def _extremum_of(self, mask: int, maximum: bool, order: Order) -> int:
        rel = self.below(order) if maximum else self.above(order)
        found = [z for z in bits(mask) if rel[z] & mask == mask]
        if len(found) != 1:
            raise InvariantViolation(f"no unique {'max' if maximum else 'min'}imum in {order.value} order")
        return found[0]

    def left_join(self, u: ElementLike, v: ElementLike) -> Element:
        """Join in left weak order: the minimal-length common upper bound, checked unique."""
        up = self.above(Order.LEFT)
        common = up[self.idx(u)] & up[self.idx(v)]
        cand = bits(common)
        best = min(self.length[z] for z in cand)
        minimal = [z for z in cand if self.length[z] == best]
        if len(minimal) != 1 or self.below(Order.LEFT)[minimal[0]] & common != 1 << minimal[0]:
            raise InvariantViolation("left join is not unique")
        # every common upper bound must lie above the candidate
        if common & ~up[minimal[0]]:
            raise InvariantViolation("minimal upper bound is not least")
        return Element(self, minimal[0])

    def left_meet(self, u: ElementLike, v: ElementLike) -> Element:
        dn = self.below(Order.LEFT)
        return Element(self, self._extremum_of(dn[self.idx(u)] & dn[self.idx(v)],
                                               True, Order.LEFT))

    def poset_dot(self, order: Order | str) -> str:
        return self.poset(order).to_dot(name=Order(order).name.lower())


def create_group(descriptor: GroupDescriptor | str) -> CoxeterGroup:
    """Build (or fetch the cached) group for a descriptor such as ``"A3"``."""
    if isinstance(descriptor, str):
        descriptor = parse_descriptor(descriptor)
    return _create(descriptor)


@lru_cache(maxsize=None)
def _create(descriptor: GroupDescriptor) -> CoxeterGroup:
    return CoxeterGroup(descriptor)
