"""Characters of the Borel submonoid on M-modules, and the decomposition matrix.

The simple M_1-modules are one-dimensional, one per w in W, and ``e_u`` acts
on the one indexed by v by 1 exactly when ``v <=_L u``.  Hence the traces of
the ``e_u`` on any module determine its composition multiplicities through a
unitriangular system over left weak order, which is solved with the Möbius
function of that order.
"""

from __future__ import annotations

from functools import lru_cache

from . import linalg
from .coxeter import CoxeterGroup, ElementLike, Order
from .errors import InvariantViolation
from .heckeops import e_idempotent
from .posets import bits
from .blocks import reduced_blocks
from .transmod import ModuleAction, simple_module_action, simple_quotient_action


def e_word(group: CoxeterGroup, w: ElementLike) -> list[str]:
    """Generator labels spelling ``e_w = pi_{w^-1 w0} pibar_{w0 w}``."""
    w = group.idx(w)
    a = group.mul(group.inverse[w], group.w0)
    b = group.mul(group.w0, w)
    return ([f"pi{i}" for i in group.reduced_word(a)]
            + [f"pibar{i}" for i in group.reduced_word(b)])


def idempotent_trace(group: CoxeterGroup, w: ElementLike, module: ModuleAction) -> int:
    m = module.word_matrix(e_word(group, w))
    if linalg.matmul(m, m) != m:
        raise InvariantViolation(f"e_{group.text(group.idx(w))} does not act idempotently")
    return linalg.normalize(linalg.trace(m))


@lru_cache(maxsize=None)
def check_simple_characters(group: CoxeterGroup) -> bool:
    """``v.e_u = v`` iff ``v <=_L u``, for all pairs; raises otherwise."""
    below = group.below(Order.LEFT)
    for u in range(group.order):
        e = e_idempotent(group, u).images
        for v in range(group.order):
            if (e[v] == v) != bool(below[u] >> v & 1):
                raise InvariantViolation(
                    f"e_{group.text(u)} fixes {group.text(v)} but the left order disagrees")
    return True


def invert_traces(group: CoxeterGroup, traces: list[int]) -> list[int]:
    """Solve ``traces[u] = sum_{v <=_L u} m[v]`` by Möbius inversion."""
    check_simple_characters(group)
    poset = group.poset(Order.LEFT)
    m = []
    for u in range(group.order):
        m.append(sum(poset.mobius(v, u) * traces[v] for v in bits(poset.below[u])))
    if any(x < 0 for x in m):
        raise InvariantViolation(f"negative multiplicity in {m}")
    return m


def m1_multiplicities(group: CoxeterGroup, module: ModuleAction) -> list[int]:
    """Multiplicity of the simple M_1-module of each v, in canonical order."""
    return invert_traces(group, [idempotent_trace(group, u, module) for u in range(group.order)])


def decomposition_matrix(group: CoxeterGroup, verify: bool = True) -> list[list[int]]:
    """Entry ``[u][w]``: multiplicity of the M_1-simple of u in the M-simple S_w.

    With S_w the top of T_w and the M_1-simples labelled by the elements
    they are fixed by, the matrix is unitriangular for right order after
    attaching the label ``w0 w^-1`` to S_w: a nonzero entry (u, w) forces
    ``w0 w^-1 <=_R u`` and the entry at ``u = w0 w^-1`` is 1.  ``verify``
    checks exactly this and the 0/1 property.
    """
    n = group.order
    cols = [m1_multiplicities(group, simple_module_action(group, w)) for w in range(n)]
    mat = [[cols[w][u] for w in range(n)] for u in range(n)]
    if verify:
        below = group.below(Order.RIGHT)
        for w in range(n):
            label = group.mul(group.w0, group.inverse[w])
            if mat[label][w] != 1:
                raise InvariantViolation(
                    f"S_{group.text(w)} contains the M_1-simple of {group.text(label)} "
                    f"{mat[label][w]} times")
            for u in range(n):
                if mat[u][w] not in (0, 1):
                    raise InvariantViolation(f"entry ({group.text(u)}, {group.text(w)}) = {mat[u][w]}")
                if mat[u][w] and not below[u] >> label & 1:
                    raise InvariantViolation(
                        f"entry ({group.text(u)}, {group.text(w)}) is nonzero "
                        f"but {group.text(label)} is not below {group.text(u)} in right order")
    return mat


def _relabellings(group: CoxeterGroup) -> dict[str, list[int]]:
    g, w0, inv = group, group.w0, group.inverse
    out = {}
    for name, f in [("u", lambda u: u), ("w0.u", lambda u: g.mul(w0, u)),
                    ("u.w0", lambda u: g.mul(u, w0)), ("u^-1", lambda u: inv[u]),
                    ("u^-1.w0", lambda u: g.mul(inv[u], w0)), ("w0.u^-1", lambda u: g.mul(w0, inv[u])),
                    ("w0.u.w0", lambda u: g.mul(g.mul(w0, u), w0)),
                    ("w0.u^-1.w0", lambda u: g.mul(g.mul(w0, inv[u]), w0))]:
        out[name] = [f(u) for u in range(group.order)]
    return out


def triangularity_conventions(group: CoxeterGroup, mat: list[list[int]]) -> list[tuple[str, str, str, str]]:
    """Every (row relabelling, column relabelling, order, direction) under which
    ``mat`` is unitriangular with 0/1 entries.  Direction "up" means a nonzero
    entry (r, c) forces r <= c."""
    maps = _relabellings(group)
    n = group.order
    found = []
    for rn, rm in maps.items():
        for cn, cm in maps.items():
            for order in (Order.RIGHT, Order.LEFT):
                below = group.below(order)
                for direction in ("up", "down"):
                    ok = True
                    for u in range(n):
                        for w in range(n):
                            x, r, c = mat[u][w], rm[u], cm[w]
                            if x not in (0, 1) or (r == c and x != 1):
                                ok = False
                            elif x:
                                lo, hi = (r, c) if direction == "up" else (c, r)
                                ok = bool(below[hi] >> lo & 1)
                            if not ok:
                                break
                        if not ok:
                            break
                    if ok:
                        found.append((rn, cn, order.value, direction))
    return found


def distinct_simple_characters(group: CoxeterGroup) -> bool:
    """The |W| simple quotients have pairwise distinct M_1-characters."""
    cols = {tuple(m1_multiplicities(group, simple_module_action(group, w))) for w in range(group.order)}
    return len(cols) == group.order


def filtration_multiplicities(group: CoxeterGroup, w: ElementLike) -> list[int]:
    """Sum of the multiplicity vectors of the subquotients S_J^(w) of T_w."""
    w = group.idx(w)
    total = [0] * group.order
    for K, J, v in reduced_blocks(group, w):
        sub = simple_quotient_action(group, w, J)
        if sub.dim:
            total = [a + b for a, b in zip(total, m1_multiplicities(group, sub))]
    return total
