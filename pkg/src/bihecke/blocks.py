"""Blocks of Coxeter group elements, cutting points and the cutting poset.

A subset K of I is a right block of w when ``w W_K w^-1`` is a standard
parabolic subgroup ``W_J``; J is then the left partner and ``w^K`` (the
minimal representative of ``w W_K``) the cutting point.  Subsets are bitmasks
internally; :class:`BlockRecord` exposes them as frozensets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .coxeter import CoxeterGroup, Element, ElementLike, Order
from .errors import DomainError, InvariantViolation, PreconditionError
from .posets import FinitePoset, bits, mask_of


@lru_cache(maxsize=None)
def _parabolic(group: CoxeterGroup, J: int) -> int:
    return group.parabolic_subgroup(J)


def _partner_mask(group: CoxeterGroup, w: int, K: int) -> int | None:
    conj = 0
    winv = group.inverse[w]
    for x in bits(_parabolic(group, K)):
        conj |= 1 << group.mul(group.mul(w, x), winv)
    J = 0
    for j in range(group.rank):
        if conj >> group.rs[j][0] & 1:
            J |= 1 << j
    return J if _parabolic(group, J) == conj else None


def right_block_partner(group: CoxeterGroup, w: ElementLike, K) -> frozenset[int] | None:
    """The J with ``w W_K = W_J w``, or None if K is not a right block of w."""
    J = _partner_mask(group, group.idx(w), group.subset_mask(K))
    return None if J is None else group.subset(J)


def left_block_partner(group: CoxeterGroup, w: ElementLike, J) -> frozenset[int] | None:
    """The K with ``w W_K = W_J w``, or None if J is not a left block of w."""
    w = group.idx(w)
    K = _partner_mask(group, group.inverse[w], group.subset_mask(J))
    return None if K is None else group.subset(K)


@dataclass(frozen=True)
class BlockRecord:
    w: Element
    K: frozenset[int]
    J: frozenset[int]
    cutting_point: Element
    proper: bool
    nontrivial: bool
    reduced: bool

    def as_json(self) -> dict:
        return {"K": sorted(self.K), "J": sorted(self.J),
                "cutting_point": str(self.cutting_point),
                "reduced": self.reduced, "trivial": not self.nontrivial}


@lru_cache(maxsize=None)
def _blocks(group: CoxeterGroup, w: int) -> tuple[tuple[int, int, int, bool], ...]:
    """``(K, J, cutting point, reduced)`` for every right block, K in subset order."""
    cut = {K: group.right_coset_rep(w, K) for K in group.all_subsets()}
    out = []
    for K in group.all_subsets():
        J = _partner_mask(group, w, K)
        if J is None:
            continue
        # K is reduced iff no proper subset has the same cutting point
        reduced = not any(K2 != K and K2 & ~K == 0 and cut[K2] == cut[K] for K2 in cut)
        out.append((K, J, cut[K], reduced))
    blocks = {b[0] for b in out}
    for a in blocks:
        for b in blocks:
            if a | b not in blocks or a & b not in blocks:
                raise InvariantViolation(
                    f"right blocks of {group.text(w)} not closed under union/intersection")
    return tuple(out)


def all_blocks(group: CoxeterGroup, w: ElementLike) -> list[BlockRecord]:
    w = group.idx(w)
    full = group.full_mask
    return [BlockRecord(Element(group, w), group.subset(K), group.subset(J),
                        Element(group, v), K not in (0, full), v != w, red)
            for K, J, v, red in _blocks(group, w)]


def reduced_blocks(group: CoxeterGroup, w: int) -> list[tuple[int, int, int]]:
    """``(K, J, cutting point)`` for the reduced right blocks of w, as bitmasks."""
    return [(K, J, v) for K, J, v, red in _blocks(group, w) if red]


def cutting_point(group: CoxeterGroup, w: ElementLike, K) -> Element:
    w = group.idx(w)
    mask = group.subset_mask(K)
    if _partner_mask(group, w, mask) is None:
        raise DomainError(f"{group.format_subset(mask)} is not a right block of {group.text(w)}")
    return Element(group, group.right_coset_rep(w, mask))


def blocks_report(group: CoxeterGroup, w: ElementLike) -> str:
    w = group.idx(w)
    payload = {"w": group.text(w), "blocks": [b.as_json() for b in all_blocks(group, w)]}
    return json.dumps(payload, indent=2) + "\n"


# -- left reduced subsets and tilings -------------------------------------------

def is_left_reduced(group: CoxeterGroup, w: int, J: int) -> bool:
    """J' strictly inside J implies ^{J'}w strictly above ^J w in left order."""
    rep = group.left_coset_rep(w, J)
    for J2 in group.all_subsets():
        if J2 != J and J2 & ~J == 0 and group.left_coset_rep(w, J2) == rep:
            return False
    return True


def tiling_check(group: CoxeterGroup, w: ElementLike, J) -> bool:
    """Does multiplication restrict to a bijection [1,w_J]_R x [1,^Jw]_R -> [1,w]_R?"""
    w = group.idx(w)
    mask = group.subset_mask(J)
    if not is_left_reduced(group, w, mask):
        raise PreconditionError(f"{group.format_subset(mask)} is not left reduced for {group.text(w)}")
    rep = group.left_coset_rep(w, mask)
    wJ = group.mul(w, group.inverse[rep])
    below = group.below(Order.RIGHT)
    target = below[w]
    hit = 0
    count = 0
    for u in bits(below[wJ]):
        for v in bits(below[rep]):
            p = group.mul(u, v)
            if not target >> p & 1 or hit >> p & 1:
                return False
            hit |= 1 << p
            count += 1
    return hit == target


# -- codescents -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _codescents(group: CoxeterGroup, w: int) -> dict[int, tuple[int, int]]:
    below = group.below(Order.RIGHT)
    red = reduced_blocks(group, w)
    red_masks = {K: (J, v) for K, J, v in red}
    out = {}
    for u in bits(below[w]):
        cands = [K for K, J, v in red if below[v] >> u & 1]
        union = 0
        for K in cands:
            union |= K
        if union not in red_masks:
            raise InvariantViolation(
                f"no maximal reduced block for {group.text(u)} below {group.text(w)}")
        out[u] = (union, red_masks[union][0])
    return out


def codescents(group: CoxeterGroup, w: ElementLike, u: ElementLike) -> tuple[frozenset[int], frozenset[int]]:
    """``(K^(w)(u), J^(w)(u))``: the maximal reduced right block whose cutting point
    lies above u in right order, and its left partner."""
    w, u = group.idx(w), group.idx(u)
    if not group.below(Order.RIGHT)[w] >> u & 1:
        raise DomainError(f"{group.text(u)} is not below {group.text(w)} in right order")
    K, J = _codescents(group, w)[u]
    return group.subset(K), group.subset(J)


def codescent_masks(group: CoxeterGroup, w: int) -> dict[int, tuple[int, int]]:
    """u -> (K, J) bitmasks for every u in [1, w]_R."""
    return _codescents(group, w)


# -- cutting poset ---------------------------------------------------------------

@dataclass
class CuttingPoset:
    group: CoxeterGroup
    poset: FinitePoset
    lower_covers: list[list[int]]
    mobius_closed: dict[tuple[int, int], int]   # nonzero closed-form values

    def leq(self, v: ElementLike, w: ElementLike) -> bool:
        return self.poset.leq(self.group.idx(v), self.group.idx(w))

    def mobius(self, v: ElementLike, w: ElementLike) -> int:
        v, w = self.group.idx(v), self.group.idx(w)
        if not self.poset.leq(v, w):
            raise DomainError("mobius needs v below w")
        return self.mobius_closed.get((v, w), 0)

    def to_dot(self) -> str:
        return self.poset.to_dot(name="cutting", node_attrs={
            i: "shape=ellipse" for i in range(self.group.order)})


def minimal_nontrivial_blocks(group: CoxeterGroup, w: int) -> list[int]:
    nontriv = [K for K, J, v, r in _blocks(group, w) if v != w]
    return [K for K in nontriv if not any(K2 != K and K2 & ~K == 0 for K2 in nontriv)]


def mobius_closed_form(group: CoxeterGroup, w: int) -> dict[int, int]:
    """Cutting points of unions of minimal nontrivial blocks, with Boolean-lattice signs."""
    mins = minimal_nontrivial_blocks(group, w)
    out: dict[int, int] = {}
    for sel in range(1 << len(mins)):
        K = 0
        for k, B in enumerate(mins):
            if sel >> k & 1:
                K |= B
        v = group.right_coset_rep(w, K)
        if v in out:
            raise InvariantViolation(
                f"lattice of minimal blocks of {group.text(w)} is not free")
        out[v] = (-1) ** bin(sel).count("1")
    return out


def cutting_poset(group: CoxeterGroup, bound: int = 5040, verify: bool = True) -> CuttingPoset:
    """The poset ``v ⊑ w`` (v a cutting point of w), with closed-form Möbius values.

    With ``verify`` the closed form is compared with the recursive Möbius
    function on every comparable pair, and lower covers with the cutting points
    of the inclusion-minimal nontrivial blocks.
    """
    N = group.order
    if N > bound:
        raise DomainError(f"group of order {N} exceeds cutting poset bound {bound}")
    below = []
    for w in range(N):
        below.append(mask_of(v for K, J, v, r in _blocks(group, w)))
    poset = FinitePoset(below, [group.text(w) for w in range(N)])
    poset.check_partial_order()
    covers = [poset.lower_covers(w) for w in range(N)]
    closed: dict[tuple[int, int], int] = {}
    for w in range(N):
        for v, sign in mobius_closed_form(group, w).items():
            closed[v, w] = sign
    if verify:
        for w in range(N):
            expected = sorted({group.right_coset_rep(w, K)
                               for K in minimal_nontrivial_blocks(group, w)})
            if sorted(covers[w]) != expected:
                raise InvariantViolation(f"lower covers of {group.text(w)} are not the "
                                         "cutting points of its minimal nontrivial blocks")
            for v in bits(below[w]):
                if poset.mobius(v, w) != closed.get((v, w), 0):
                    raise InvariantViolation(
                        f"Möbius mismatch at ({group.text(v)}, {group.text(w)})")
    return CuttingPoset(group, poset, covers, closed)


def check_cutting_containment(group: CoxeterGroup, cp: CuttingPoset) -> bool:
    bl, br = group.below(Order.LEFT), group.below(Order.RIGHT)
    return all(cp.poset.below[w] & ~(bl[w] & br[w]) == 0 for w in range(group.order))


def conjecture_report(group: CoxeterGroup, cp: CuttingPoset | None = None) -> dict:
    """Test (never assume) that the cutting poset is a meet-semilattice with
    distributive lattices as intervals."""
    cp = cp or cutting_poset(group)
    p = cp.poset
    semi, pair = p.is_meet_semilattice()
    bad_interval = None
    for w in range(group.order):
        for v in bits(p.below[w]):
            ok, reason = p.is_distributive_lattice(p.interval(v, w))
            if not ok:
                bad_interval = {"interval": [group.text(v), group.text(w)], "reason": reason}
                break
        if bad_interval:
            break
    report = {
        "group": str(group.descriptor),
        "meet_semilattice": semi,
        "intervals_distributive": bad_interval is None,
        "status": "PASS" if semi and bad_interval is None else "COUNTEREXAMPLE",
    }
    if pair is not None:
        report["no_meet"] = [group.text(pair[0]), group.text(pair[1])]
    if bad_interval is not None:
        report["bad_interval"] = bad_interval
    return report


# -- type A matrix blocks ----------------------------------------------------------

@dataclass(frozen=True)
class MatrixBlock:
    columns: tuple[int, int]   # inclusive 1-based interval of positions
    rows: tuple[int, int]      # inclusive interval of values
    permutation: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.columns[1] - self.columns[0] + 1

    @property
    def is_identity(self) -> bool:
        return self.permutation == tuple(range(1, self.size + 1))

    @property
    def is_connected(self) -> bool:
        """No proper prefix of the associated permutation is mapped onto an initial interval."""
        p = self.permutation
        return not any(max(p[:k]) == k for k in range(1, len(p)))


def _one_line(group: CoxeterGroup, w: int) -> tuple[int, ...]:
    if not group.is_type_a:
        raise DomainError("matrix blocks are only defined in type A")
    return group.keys[w]


def matrix_blocks_of(perm: tuple[int, ...]) -> list[MatrixBlock]:
    n = len(perm)
    out = []
    for a in range(n):
        lo = hi = perm[a]
        for b in range(a, n):
            lo, hi = min(lo, perm[b]), max(hi, perm[b])
            if hi - lo == b - a:
                std = tuple(x - lo + 1 for x in perm[a:b + 1])
                out.append(MatrixBlock((a + 1, b + 1), (lo, hi), std))
    return out


def matrix_blocks(group: CoxeterGroup, w: ElementLike) -> list[MatrixBlock]:
    """Every interval of positions mapped onto an interval of values (singletons included)."""
    return matrix_blocks_of(_one_line(group, group.idx(w)))


def is_simple_permutation(perm: tuple[int, ...]) -> bool:
    n = len(perm)
    return all(b.size in (1, n) for b in matrix_blocks_of(perm))


def _disjoint_families(blocks: list[MatrixBlock]):
    blocks = sorted(blocks, key=lambda b: b.columns)

    def rec(start: int, pos: int, chosen: list[MatrixBlock]):
        yield list(chosen)
        for k in range(start, len(blocks)):
            b = blocks[k]
            if b.columns[0] > pos:
                chosen.append(b)
                yield from rec(k + 1, b.columns[1], chosen)
                chosen.pop()

    yield from rec(0, 0, [])


def blocks_bijection_check(group: CoxeterGroup, w: ElementLike) -> tuple[bool, str | None]:
    """Match right blocks with disjoint unions of non-singleton matrix blocks.

    Also checks that trivial blocks come from unions of identity blocks and
    reduced blocks from unions of connected blocks.  Returns ``(ok, reason)``.
    """
    w = group.idx(w)
    perm = _one_line(group, w)
    mblocks = [b for b in matrix_blocks_of(perm) if b.size > 1]
    from_matrix: dict[int, tuple[int, list[MatrixBlock]]] = {}
    for fam in _disjoint_families(mblocks):
        K = J = 0
        for b in fam:
            K |= mask_of(range(b.columns[0] - 1, b.columns[1] - 1))
            J |= mask_of(range(b.rows[0] - 1, b.rows[1] - 1))
        if K in from_matrix:
            return False, f"two families of matrix blocks give K={group.format_subset(K)}"
        from_matrix[K] = (J, fam)
    blocks = {K: (J, v, red) for K, J, v, red in _blocks(group, w)}
    if set(blocks) != set(from_matrix):
        return False, (f"right blocks {sorted(map(group.format_subset, blocks))} vs matrix "
                       f"families {sorted(map(group.format_subset, from_matrix))}")
    for K, (J, v, red) in blocks.items():
        Jm, fam = from_matrix[K]
        if J != Jm:
            return False, f"left partner mismatch at K={group.format_subset(K)}"
        if (v == w) != all(b.is_identity for b in fam):
            return False, f"triviality mismatch at K={group.format_subset(K)}"
        if red != all(b.is_connected for b in fam):
            return False, f"reducedness mismatch at K={group.format_subset(K)}"
    return True, None
