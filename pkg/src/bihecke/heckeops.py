"""Bubble sorting/antisorting operators on W and the monoids they generate.

A :class:`FunctionTable` stores a self-map of W by the images of the
canonical indices.  Maps act on the right and compose left to right:
``w.(fg) = (w.f).g``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .coxeter import CoxeterGroup, Element, ElementLike, Order
from .errors import DomainError, InvariantViolation, ResourceError
from .posets import bits, mask_of

ANTISORT = "antisort"
SORT = "sort"


@dataclass(frozen=True, eq=False)
class FunctionTable:
    group: CoxeterGroup
    images: tuple[int, ...]

    def __eq__(self, other):
        return (isinstance(other, FunctionTable) and other.group is self.group
                and other.images == self.images)

    def __hash__(self):
        return hash(self.images)

    def __call__(self, w: ElementLike) -> Element:
        return Element(self.group, self.images[self.group.idx(w)])

    def __mul__(self, other: FunctionTable) -> FunctionTable:
        return compose(self, other)

    def is_idempotent(self) -> bool:
        im = self.images
        return all(im[x] == x for x in set(im))

    def text(self) -> str:
        return ",".join(self.group.text(x) for x in self.images)

    def __repr__(self) -> str:
        return f"FunctionTable({self.group.descriptor}, [{self.text()}])"


def identity_table(group: CoxeterGroup) -> FunctionTable:
    return FunctionTable(group, tuple(range(group.order)))


def compose(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    """``f`` then ``g``."""
    if f.group is not g.group:
        raise DomainError("cannot compose maps on different groups")
    gi = g.images
    return FunctionTable(f.group, tuple(gi[x] for x in f.images))


def generator(group: CoxeterGroup, kind: str, i: int) -> FunctionTable:
    """``pi_i`` (kind ``"antisort"``) or ``pibar_i`` (kind ``"sort"``) as a table."""
    if i not in group.index_set:
        raise IndexError(f"generator index {i} not in {group.index_set}")
    bit = 1 << (i - 1)
    rs = group.rs[i - 1]
    dr = group.dr
    if kind == ANTISORT:
        images = tuple(w if dr[w] & bit else rs[w] for w in range(group.order))
    elif kind == SORT:
        images = tuple(rs[w] if dr[w] & bit else w for w in range(group.order))
    else:
        raise DomainError(f"unknown generator kind {kind!r}")
    return FunctionTable(group, images)


def generator_labels(group: CoxeterGroup) -> list[str]:
    return [f"pi{i}" for i in group.index_set] + [f"pibar{i}" for i in group.index_set]


def all_generators(group: CoxeterGroup) -> list[FunctionTable]:
    """``pi_1, ..., pi_n, pibar_1, ..., pibar_n`` in that order."""
    return ([generator(group, ANTISORT, i) for i in group.index_set]
            + [generator(group, SORT, i) for i in group.index_set])


def word_product(group: CoxeterGroup, kind: str, word: Iterable[int]) -> FunctionTable:
    f = identity_table(group)
    for i in word:
        f = compose(f, generator(group, kind, i))
    return f


def pi_of_element(group: CoxeterGroup, w: ElementLike, kind: str = ANTISORT) -> FunctionTable:
    """``pi_w`` (or ``pibar_w``): the generators multiplied along a reduced word of w."""
    return word_product(group, kind, group.reduced_word(group.idx(w)))


# -- closure ------------------------------------------------------------------

@dataclass
class MonoidClosure:
    group: CoxeterGroup
    labels: list[str]
    tables: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    edges: dict[tuple[int, str], int]
    diameter: int
    fixes_one: list[bool] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tables)

    def __getitem__(self, i: int) -> FunctionTable:
        return FunctionTable(self.group, self.tables[i])

    def __iter__(self):
        return (FunctionTable(self.group, t) for t in self.tables)

    def __contains__(self, f: FunctionTable) -> bool:
        return f.group is self.group and f.images in self.index

    def index_of(self, f: FunctionTable) -> int:
        try:
            return self.index[f.images]
        except KeyError:
            raise DomainError("map is not an element of this monoid") from None

    def cayley_dot(self) -> str:
        lines = ["digraph cayley {"]
        for i in range(len(self)):
            lines.append(f'  m{i} [label="{i}"];')
        for (i, lab), j in sorted(self.edges.items()):
            lines.append(f'  m{i} -> m{j} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dump_tsv(self) -> str:
        """One row per element: index, images, rank, type, fixes-1 flag."""
        g = self.group
        rows = ["index\timages\trank\ttype\tfixes_one"]
        for i, t in enumerate(self.tables):
            a = analyze(FunctionTable(g, t))
            rows.append(f"{i}\t{','.join(g.text(x) for x in t)}\t{a.rank}\t"
                        f"{g.text(a.type.index)}\t{int(t[0] == 0)}")
        return "\n".join(rows) + "\n"


def _expand(chunk, gens):
    return [[tuple(g[x] for x in t) for g in gens] for t in chunk]


def closure(generators: Sequence[FunctionTable], budget: int = 10**6,
            labels: Sequence[str] | None = None, threads: int = 1) -> MonoidClosure:
    """Enumerate the monoid generated by ``generators`` (identity included).

    Breadth-first: each level is the set of new right products of the previous
    level with a generator, sorted by image sequence before indices are
    assigned.  With ``threads > 1`` the products of a level are computed by a
    pool, but index assignment still happens on the sorted level, so the
    result is identical to the single-threaded run.
    """
    if budget <= 0:
        raise DomainError("budget must be positive")
    if not generators:
        raise DomainError("need at least one generator")
    group = generators[0].group
    labels = list(labels) if labels is not None else [f"g{k}" for k in range(len(generators))]
    gens = [f.images for f in generators]
    ident = tuple(range(group.order))
    tables = [ident]
    index = {ident: 0}
    edges: dict[tuple[int, str], int] = {}
    level = [ident]
    depth = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while level:
            if pool is None:
                products = _expand(level, gens)
            else:
                size = -(-len(level) // threads)
                chunks = [level[k:k + size] for k in range(0, len(level), size)]
                products = [row for part in pool.map(_expand, chunks, [gens] * len(chunks))
                            for row in part]
            fresh = set()
            for row in products:
                for t in row:
                    if t not in index:
                        fresh.add(t)
            if len(tables) + len(fresh) > budget:
                raise ResourceError(
                    f"closure exceeds budget {budget} (at least {len(tables) + len(fresh)} elements)",
                    partial=len(tables) + len(fresh))
            new_level = sorted(fresh)
            for t in new_level:
                index[t] = len(tables)
                tables.append(t)
            for t, row in zip(level, products):
                i = index[t]
                for lab, p in zip(labels, row):
                    edges[i, lab] = index[p]
            if new_level:
                depth += 1
            level = new_level
    finally:
        if pool is not None:
            pool.shutdown()
    return MonoidClosure(group, labels, tables, index, edges, depth,
                         [t[0] == 0 for t in tables])


def bihecke_monoid(group: CoxeterGroup, budget: int = 10**6, threads: int = 1) -> MonoidClosure:
    """The biHecke monoid M(W) = <pi_i, pibar_i>."""
    return closure(all_generators(group), budget, generator_labels(group), threads)


# -- single elements ------------------------------------------------------------

def omega(f: FunctionTable) -> FunctionTable:
    """The idempotent power ``f^k = f^(k+1)``."""
    n = f.group.order
    p = f
    for _ in range(n * n):
        q = compose(p, f)
        if q == p:
            if not p.is_idempotent():
                break
            return p
        p = q
    raise InvariantViolation("powers of the map do not stabilise (monoid not acyclic?)")


@dataclass(frozen=True)
class FunctionAnalysis:
    image: frozenset[int]
    fibers: frozenset[frozenset[int]]
    rank: int
    type: Element


def analyze(f: FunctionTable) -> FunctionAnalysis:
    g = f.group
    fibers: dict[int, set[int]] = {}
    for w, x in enumerate(f.images):
        fibers.setdefault(x, set()).add(w)
    image = frozenset(fibers)
    t = g.mul(f.images[g.w0], g.inverse[f.images[0]])
    return FunctionAnalysis(image, frozenset(frozenset(s) for s in fibers.values()),
                            len(image), Element(g, t))


def function_type(f: FunctionTable) -> int:
    g = f.group
    return g.mul(f.images[g.w0], g.inverse[f.images[0]])


def fiber_key(f: FunctionTable) -> tuple[int, ...]:
    """Canonical label of the fiber partition: each point mapped to the first point of its fiber."""
    first: dict[int, int] = {}
    return tuple(first.setdefault(x, w) for w, x in enumerate(f.images))


def e_idempotent(group: CoxeterGroup, w: ElementLike) -> FunctionTable:
    """``e_w = pi_{w^-1 w0} pibar_{w0 w}``."""
    w = group.idx(w)
    a = group.mul(group.inverse[w], group.w0)
    b = group.mul(group.w0, w)
    return compose(pi_of_element(group, a, ANTISORT), pi_of_element(group, b, SORT))


def idempotent_interval(e: FunctionTable) -> tuple[Element, Element]:
    """The pair ``(a, b)`` with ``image(e) = [a, b]_L``."""
    if not e.is_idempotent():
        raise DomainError("map is not idempotent")
    g = e.group
    image = mask_of(set(e.images))
    a = min(bits(image), key=lambda x: g.length[x])
    b = max(bits(image), key=lambda x: g.length[x])
    interval = g.above(Order.LEFT)[a] & g.below(Order.LEFT)[b]
    if interval != image:
        raise InvariantViolation("image of the idempotent is not a left-order interval")
    return Element(g, a), Element(g, b)


def interval_type(e: FunctionTable) -> int:
    """``b a^-1`` for ``image(e) = [a, b]_L``."""
    a, b = idempotent_interval(e)
    g = e.group
    return g.mul(b.index, g.inverse[a.index])


def idempotent_ideal_leq(e: FunctionTable, f: FunctionTable,
                         monoid: MonoidClosure | None = None, cross_check_limit: int = 100) -> bool:
    """Whether ``f`` lies in the two-sided ideal ``MeM``, by the interval-type criterion.

    When ``monoid`` is given and small enough, the answer is checked against a
    literal search for ``x, y`` with ``f = x e y``.
    """
    if not (e.is_idempotent() and f.is_idempotent()):
        raise DomainError("both maps must be idempotent")
    g = e.group
    answer = g.leq(interval_type(f), interval_type(e), Order.LR)
    if monoid is not None and len(monoid) <= cross_check_limit:
        if answer != in_two_sided_ideal(f, e, monoid):
            raise InvariantViolation("interval criterion disagrees with ideal membership")
    return answer


def in_two_sided_ideal(f: FunctionTable, e: FunctionTable, monoid: MonoidClosure) -> bool:
    """Literal search: is ``f = x e y`` for some x, y in the monoid?"""
    target = f.images
    for x in monoid.tables:
        xe = tuple(e.images[v] for v in x)
        # f = (x e) y forces the fibers of x e to refine those of f
        if any(target[a] != target[b] for a, b in _same_fiber_pairs(xe)):
            continue
        for y in monoid.tables:
            if all(y[xe[w]] == target[w] for w in range(len(target))):
                return True
    return False


def _same_fiber_pairs(t: tuple[int, ...]):
    first: dict[int, int] = {}
    for w, x in enumerate(t):
        if x in first:
            yield first[x], w
        else:
            first[x] = w


def idempotents(monoid: MonoidClosure) -> list[int]:
    return [i for i in range(len(monoid)) if monoid[i].is_idempotent()]


def idempotent_conjugacy_classes(monoid: MonoidClosure) -> list[list[int]]:
    """Partition the idempotents of ``monoid`` into classes of mutual ideal membership."""
    ids = idempotents(monoid)
    classes: list[list[int]] = []
    for i in ids:
        e = monoid[i]
        for cls in classes:
            f = monoid[cls[0]]
            if idempotent_ideal_leq(e, f, monoid) and idempotent_ideal_leq(f, e, monoid):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes
