"""The Borel submonoid M_1(W) of maps fixing the identity element.

M_1 is generated by the idempotents ``e_w``; it is J-trivial, with the
two-sided order realised pointwise by Bruhat order.  Composition is the
package-wide right action, so ``e_u * x`` means "first e_u, then x".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .coxeter import CoxeterGroup, Element, ElementLike, Order
from .errors import DomainError, InvariantViolation
from .heckeops import (FunctionTable, MonoidClosure, bihecke_monoid, closure, compose,
                       e_idempotent, omega)
from .posets import bits


@dataclass
class BorelClosure:
    group: CoxeterGroup
    monoid: MonoidClosure
    route: str

    def __len__(self) -> int:
        return len(self.monoid)

    def __iter__(self):
        return iter(self.monoid)

    def __contains__(self, f: FunctionTable) -> bool:
        return f in self.monoid

    @cached_property
    def e(self) -> list[FunctionTable]:
        """``e[w]`` is the idempotent e_w."""
        return [e_idempotent(self.group, w) for w in range(self.group.order)]

    @cached_property
    def idempotent_indices(self) -> list[int]:
        return [self.monoid.index_of(f) for f in self.e]

    @cached_property
    def generators(self) -> list[int]:
        return minimal_generators(self)


def borel_closure(group: CoxeterGroup, budget: int = 10**6, route: str = "direct",
                  threads: int = 1) -> BorelClosure:
    """M_1 either generated by ``{e_w}`` (``route="direct"``) or filtered out of M."""
    if route == "direct":
        gens = [e_idempotent(group, w) for w in range(group.order)]
        labels = [f"e{group.text(w)}" for w in range(group.order)]
        mon = closure(gens, budget, labels, threads)
    elif route == "filtered":
        full = bihecke_monoid(group, budget, threads)
        keep = sorted(t for t, fixes in zip(full.tables, full.fixes_one) if fixes)
        # re-close to get a Cayley graph in the e_w generators and canonical indexing
        gens = [e_idempotent(group, w) for w in range(group.order)]
        labels = [f"e{group.text(w)}" for w in range(group.order)]
        mon = closure(gens, budget, labels, threads)
        if sorted(mon.tables) != keep:
            raise InvariantViolation("the e_w do not generate the maps of M fixing 1")
    else:
        raise DomainError(f"unknown route {route!r}")
    if not all(mon.fixes_one):
        raise InvariantViolation("an element of the Borel closure moves the identity")
    return BorelClosure(group, mon, route)


def minimal_generators(closure_: BorelClosure) -> list[int]:
    """Indices of the irreducible elements: f is not a product gh with g, h != f.

    In a J-trivial monoid these form the unique minimal generating set; the
    identity is irreducible and therefore included.
    """
    tables = closure_.monoid.tables
    index = closure_.monoid.index
    n = len(tables)
    reducible = [False] * n
    for a, g in enumerate(tables):
        for b, h in enumerate(tables):
            p = index[tuple(h[x] for x in g)]
            if p != a and p != b:
                reducible[p] = True
    return [i for i in range(n) if not reducible[i]]


def is_grassmannian(group: CoxeterGroup, w: ElementLike) -> bool:
    """At most one right descent."""
    return bin(group.dr[group.idx(w)]).count("1") <= 1


def predicted_generators(group: CoxeterGroup) -> list[int]:
    """``{w : w0 w^-1 Grassmannian}``, the index set of the minimal generators."""
    return [w for w in range(group.order)
            if is_grassmannian(group, group.mul(group.w0, group.inverse[w]))]


def jorder_leq(f: FunctionTable, g: FunctionTable) -> bool:
    """``f <= g`` iff ``w.f <=_B w.g`` for every w."""
    below = f.group.below(Order.BRUHAT)
    return all(below[y] >> x & 1 for x, y in zip(f.images, g.images))


@dataclass(frozen=True)
class FixPair:
    element: FunctionTable
    lfix: Element
    rfix: Element


def _minimum_of_upset(group: CoxeterGroup, members: int, what: str) -> int:
    if not members:
        raise InvariantViolation(f"{what}: no fixing idempotent")
    above = group.above(Order.LEFT)
    for u in bits(members):
        if above[u] & ~members:
            raise InvariantViolation(f"{what}: fixer set is not up-closed in left order")
    below = group.below(Order.LEFT)
    minima = [u for u in bits(members) if below[u] & members == 1 << u]
    if len(minima) != 1:
        raise InvariantViolation(f"{what}: {len(minima)} minimal fixers")
    return minima[0]


def fixer_sets(x: FunctionTable, e: list[FunctionTable]) -> tuple[int, int]:
    """Bitmasks ``{u : e_u x = x}`` and ``{u : x e_u = x}``."""
    left = right = 0
    for u, eu in enumerate(e):
        if compose(eu, x) == x:
            left |= 1 << u
        if compose(x, eu) == x:
            right |= 1 << u
    return left, right


def fixes(x: FunctionTable, closure_: BorelClosure | None = None) -> FixPair:
    group = x.group
    if x.images[0] != 0:
        raise DomainError("map does not fix the identity")
    e = closure_.e if closure_ is not None else [e_idempotent(group, w) for w in range(group.order)]
    left, right = fixer_sets(x, e)
    lf = _minimum_of_upset(group, left, "lfix")
    rf = _minimum_of_upset(group, right, "rfix")
    return FixPair(x, Element(group, lf), Element(group, rf))


def cartan_matrix(closure_: BorelClosure) -> list[list[int]]:
    """``c[u][v] = #{f : lfix(f) = u, rfix(f) = v}``."""
    n = closure_.group.order
    c = [[0] * n for _ in range(n)]
    for f in closure_:
        p = fixes(f, closure_)
        c[p.lfix.index][p.rfix.index] += 1
    return c


def matrix_tsv(group: CoxeterGroup, m: list[list[int]], corner: str = "") -> str:
    names = [group.text(w) for w in range(group.order)]
    lines = ["\t".join([corner] + names)]
    for name, row in zip(names, m):
        lines.append("\t".join([name] + [str(x) for x in row]))
    return "\n".join(lines) + "\n"


def matrix_json(group: CoxeterGroup, m: list[list[int]], kind: str) -> str:
    names = [group.text(w) for w in range(group.order)]
    return json.dumps({"kind": kind, "group": str(group.descriptor), "rows": names,
                       "columns": names, "matrix": m}, indent=1) + "\n"


@dataclass(frozen=True)
class PairReport:
    u: Element
    v: Element
    uv_is_u: bool          # e_u e_v = e_u
    vu_is_u: bool          # e_v e_u = e_u
    uv_is_v: bool
    vu_is_v: bool
    u_leq_v: bool          # u <=_L v
    v_leq_u: bool
    omega_index: Element   # x with (e_u e_v)^omega = e_x


def idempotent_pair_relation(group: CoxeterGroup, u: ElementLike, v: ElementLike) -> PairReport:
    u, v = group.idx(u), group.idx(v)
    eu, ev = e_idempotent(group, u), e_idempotent(group, v)
    uv, vu = compose(eu, ev), compose(ev, eu)
    om = omega(uv)
    x = om.images[group.w0]
    if e_idempotent(group, x) != om:
        raise InvariantViolation(f"(e_u e_v)^omega is not an e_x for u={group.text(u)}, v={group.text(v)}")
    return PairReport(Element(group, u), Element(group, v), uv == eu, vu == eu, uv == ev, vu == ev,
                      group.leq(u, v, Order.LEFT), group.leq(v, u, Order.LEFT), Element(group, x))
