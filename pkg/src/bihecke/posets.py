"""Finite posets stored as down-set bitmasks.

Element ``j`` of a :class:`FinitePoset` has ``below[j]``, an ``int`` whose bit
``i`` is set iff ``i <= j``.  Bitmasks keep the quadratic-size relations of
desk-scale Coxeter groups cheap to build and to intersect.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from functools import cached_property

from .errors import DomainError, InvariantViolation


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class FinitePoset:
    """A finite partial order on ``range(n)``.

    >>> p = FinitePoset.from_relation(3, lambda a, b: a <= b)
    >>> p.mobius(0, 1), p.mobius(0, 2)
    (-1, 0)
    """

    def __init__(self, below: Sequence[int], names: Sequence[str] | None = None):
        self.below = list(below)
        self.n = len(self.below)
        self.names = list(names) if names is not None else [str(i) for i in range(self.n)]
        self._mobius: dict[tuple[int, int], int] = {}

    @classmethod
    def from_relation(cls, n: int, leq: Callable[[int, int], bool],
                      names: Sequence[str] | None = None) -> FinitePoset:
        below = [mask_of(i for i in range(n) if leq(i, j)) for j in range(n)]
        return cls(below, names)

    def __len__(self) -> int:
        return self.n

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    @cached_property
    def above(self) -> list[int]:
        up = [0] * self.n
        for j, m in enumerate(self.below):
            for i in bits(m):
                up[i] |= 1 << j
        return up

    def check_partial_order(self) -> None:
        """Raise :class:`InvariantViolation` unless the relation is a partial order."""
        for j, m in enumerate(self.below):
            if not m >> j & 1:
                raise InvariantViolation(f"relation not reflexive at {self.names[j]}")
            for i in bits(m):
                if i != j and self.leq(j, i):
                    raise InvariantViolation(
                        f"relation not antisymmetric: {self.names[i]}, {self.names[j]}")
                if self.below[i] & ~m:
                    raise InvariantViolation(
                        f"relation not transitive below {self.names[j]} via {self.names[i]}")

    def lower_covers(self, j: int) -> list[int]:
        strict = self.below[j] & ~(1 << j)
        return [i for i in bits(strict) if not any(
            k != i and self.leq(i, k) for k in bits(strict))]

    def hasse_edges(self) -> list[tuple[int, int]]:
        """All cover pairs ``(i, j)`` with ``i`` covered by ``j``."""
        return [(i, j) for j in range(self.n) for i in self.lower_covers(j)]

    def interval(self, i: int, j: int) -> list[int]:
        return bits(self.above[i] & self.below[j])

    def mobius(self, i: int, j: int) -> int:
        """Möbius function by the defining recursion ``mu(i,j) = -sum_{i<=z<j} mu(i,z)``."""
        if not self.leq(i, j):
            raise DomainError(f"mobius({self.names[i]}, {self.names[j]}) needs i <= j")
        key = (i, j)
        if key not in self._mobius:
            if i == j:
                value = 1
            else:
                value = -sum(self.mobius(i, z) for z in self.interval(i, j) if z != j)
            self._mobius[key] = value
        return self._mobius[key]

    # -- lattice structure --------------------------------------------------

    def _maximum(self, mask: int) -> int | None:
        for z in bits(mask):
            if self.below[z] & mask == mask:
                return z
        return None

    def _minimum(self, mask: int) -> int | None:
        for z in bits(mask):
            if self.above[z] & mask == mask:
                return z
        return None

    def meet(self, i: int, j: int, within: int | None = None) -> int | None:
        """Greatest lower bound of ``i`` and ``j`` (inside the mask ``within``), or None."""
        m = self.below[i] & self.below[j]
        if within is not None:
            m &= within
        return self._maximum(m)

    def join(self, i: int, j: int, within: int | None = None) -> int | None:
        m = self.above[i] & self.above[j]
        if within is not None:
            m &= within
        return self._minimum(m)

    def is_meet_semilattice(self) -> tuple[bool, tuple[int, int] | None]:
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.meet(i, j) is None:
                    return False, (i, j)
        return True, None

    def is_distributive_lattice(self, elements: Iterable[int]) -> tuple[bool, str | None]:
        """Check that the induced subposet on ``elements`` is a distributive lattice.

        Meets and joins are taken inside the subposet.  Returns ``(ok, reason)``.
        """
        els = list(elements)
        within = mask_of(els)
        meet: dict[tuple[int, int], int] = {}
        join: dict[tuple[int, int], int] = {}
        for a in els:
            for b in els:
                m = self.meet(a, b, within)
                j = self.join(a, b, within)
                if m is None or j is None:
                    return False, f"no meet/join for {self.names[a]}, {self.names[b]}"
                meet[a, b] = m
                join[a, b] = j
        for x in els:
            for y in els:
                for z in els:
                    if meet[x, join[y, z]] != join[meet[x, y], meet[x, z]]:
                        return False, (f"distributivity fails at "
                                       f"{self.names[x]}, {self.names[y]}, {self.names[z]}")
        return True, None

    def to_dot(self, name: str = "poset", node_attrs: dict[int, str] | None = None) -> str:
        """Hasse diagram as a DOT digraph, edges pointing upwards."""
        node_attrs = node_attrs or {}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(self.n):
            extra = f", {node_attrs[i]}" if i in node_attrs else ""
            lines.append(f'  n{i} [label="{self.names[i]}"{extra}];')
        for i, j in self.hasse_edges():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
