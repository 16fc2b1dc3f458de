"""Translation modules T_w and the w-biHecke algebras.

``T_w`` has basis the right-order interval ``[1, w]_R`` (canonical index
order).  Matrices act on row vectors from the right: entry ``[a][b]`` is the
coefficient of basis vector ``b`` in ``(basis a).g``, so products of matrices
compose in the same order as the monoid acts.

The action used is

    u.pi_i    = u        if i in D_R(u)
              = u s_i    if u s_i in [1, w]_R
              = 0        otherwise
    u.pibar_i = u s_i    if i in D_R(u)
              = u        if u s_i in [1, w]_R
              = 0        otherwise

which is the one realised by the monoid elements spanning ``trans(f)`` (see
:func:`trans_of`) and the only one for which ``pi_i + pibar_i - 1`` acts by
``u -> u s_i`` or ``u -> -u``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .blocks import codescent_masks, cutting_poset, is_left_reduced, reduced_blocks
from .coxeter import CoxeterGroup, ElementLike, Order
from .errors import DomainError, InvariantViolation, ResourceError
from .heckeops import (FunctionTable, MonoidClosure, all_generators, analyze, function_type,
                       generator_labels)
from .posets import bits


@dataclass
class ModuleAction:
    group: CoxeterGroup
    basis: list[int]                       # element indices labelling the basis vectors
    matrices: dict[str, list[list]]        # generator label -> matrix
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self) -> list[str]:
        return list(self.matrices)

    def basis_text(self) -> list[str]:
        return [self.group.text(u) for u in self.basis]

    def word_matrix(self, labels) -> list[list]:
        m = linalg.identity(self.dim)
        for lab in labels:
            m = linalg.matmul(m, self.matrices[lab])
        return m

    def to_json(self) -> str:
        gens = {}
        for lab, m in self.matrices.items():
            gens[lab] = [[a, b, str(linalg.normalize(x))] for a, row in enumerate(m)
                         for b, x in enumerate(row) if x]
        return json.dumps({"name": self.name, "basis": self.basis_text(),
                           "generators": gens}, indent=1) + "\n"


def _interval(group: CoxeterGroup, w: int) -> list[int]:
    return bits(group.below(Order.RIGHT)[w])


@lru_cache(maxsize=None)
def _partial_maps(group: CoxeterGroup, w: int) -> tuple[list[int], dict[str, tuple[int, ...]]]:
    """Generator actions on T_w as partial maps of basis positions (-1 for zero)."""
    basis = _interval(group, w)
    pos = {u: k for k, u in enumerate(basis)}
    maps: dict[str, tuple[int, ...]] = {}
    for i in group.index_set:
        bit = 1 << (i - 1)
        up, down = [], []
        for u in basis:
            us = group.rs[i - 1][u]
            if group.dr[u] & bit:
                up.append(pos[u])
                down.append(pos[us])
            elif us in pos:
                up.append(pos[us])
                down.append(pos[u])
            else:
                up.append(-1)
                down.append(-1)
        maps[f"pi{i}"] = tuple(up)
        maps[f"pibar{i}"] = tuple(down)
    ordered = {lab: maps[lab] for lab in generator_labels(group)}
    return basis, ordered


def _map_matrix(m: tuple[int, ...]) -> list[list[int]]:
    d = len(m)
    out = [[0] * d for _ in range(d)]
    for a, b in enumerate(m):
        if b >= 0:
            out[a][b] = 1
    return out


def translation_module(group: CoxeterGroup, w: ElementLike) -> ModuleAction:
    w = group.idx(w)
    basis, maps = _partial_maps(group, w)
    return ModuleAction(group, list(basis), {lab: _map_matrix(m) for lab, m in maps.items()},
                        name=f"T_{group.text(w)}")


def s_matrix(module: ModuleAction, i: int) -> list[list]:
    """``s_i = pi_i + pibar_i - 1``."""
    return linalg.add(linalg.add(module.matrices[f"pi{i}"], module.matrices[f"pibar{i}"]),
                      linalg.identity(module.dim), -1)


def left_s_matrix(group: CoxeterGroup, w: ElementLike, i: int) -> list[list[int]]:
    """Left operator: ``u -> s_i u`` when that stays in [1, w]_R, else ``u -> -u``."""
    w = group.idx(w)
    basis = _interval(group, w)
    pos = {u: k for k, u in enumerate(basis)}
    d = len(basis)
    out = [[0] * d for _ in range(d)]
    for a, u in enumerate(basis):
        su = group.ls[i - 1][u]
        if su in pos:
            out[a][pos[su]] = 1
        else:
            out[a][a] = -1
    return out


# -- modules from actual monoid elements ---------------------------------------------

def trans_of(f: FunctionTable, monoid: MonoidClosure) -> ModuleAction:
    """``trans(f)``: the rank-preserving part of ``fM`` acted on by the generators.

    Basis vectors are the maps ``f_u`` (same fibers as f, ``1.f_u = u``)
    labelled by u.  Raises if the labels are not exactly ``[1, type(f)^-1 w0]_R``.
    """
    if f not in monoid:
        raise DomainError("map is not in the monoid")
    group = f.group
    r = analyze(f).rank
    by_one: dict[int, tuple[int, ...]] = {}
    for t in monoid.tables:
        h = tuple(t[x] for x in f.images)
        if len(set(h)) == r:
            if h[0] in by_one and by_one[h[0]] != h:
                raise InvariantViolation("two rank-preserving elements of fM agree at 1")
            by_one[h[0]] = h
    basis = sorted(by_one)
    w = group.mul(group.inverse[function_type(f)], group.w0)
    if basis != _interval(group, w):
        raise InvariantViolation("rank-preserving part of fM is not indexed by [1, type(f)^-1 w0]_R")
    pos = {u: k for k, u in enumerate(basis)}
    gens = all_generators(group)
    mats = {}
    for lab, g in zip(generator_labels(group), gens):
        m = [[0] * len(basis) for _ in basis]
        for u in basis:
            h = tuple(g.images[x] for x in by_one[u])
            if len(set(h)) == r:
                m[pos[u]][pos[h[0]]] = 1
        mats[lab] = m
    return ModuleAction(group, basis, mats, name=f"trans({f.text()})")


def is_monoid_representation(module: ModuleAction, monoid: MonoidClosure) -> bool:
    """Check that the generator matrices respect every relation of the monoid.

    Assigns a matrix to each monoid element along the Cayley graph and checks
    every edge for consistency; the labels of ``monoid`` must match the module's.
    """
    mats: dict[int, list[list]] = {0: linalg.identity(module.dim)}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for lab in monoid.labels:
            j = monoid.edges[i, lab]
            prod = linalg.matmul(mats[i], module.matrices[lab])
            if j in mats:
                if mats[j] != prod:
                    return False
            else:
                mats[j] = prod
                queue.append(j)
    return True


# -- antisymmetric submodules ------------------------------------------------------

@dataclass
class SubmoduleBasis:
    module: ModuleAction
    vectors: list[list]
    J: frozenset[int]
    stable: bool

    @property
    def dim(self) -> int:
        return len(self.vectors)


def left_operator(group: CoxeterGroup, w: ElementLike, x: ElementLike) -> list[list[int]]:
    """Partial left multiplication by x: ``u -> x u`` inside [1, w]_R, else ``(-1)^l(x) u``.

    For ``x = s_i`` this is :func:`left_s_matrix`.
    """
    w, x = group.idx(w), group.idx(x)
    basis = _interval(group, w)
    pos = {u: k for k, u in enumerate(basis)}
    sign = -1 if group.length[x] % 2 else 1
    d = len(basis)
    out = [[0] * d for _ in range(d)]
    for a, u in enumerate(basis):
        xu = group.mul(x, u)
        if xu in pos:
            out[a][pos[xu]] = 1
        else:
            out[a][a] = sign
    return out


def _p_vectors(group: CoxeterGroup, w: int, J: int) -> list[list]:
    """Vectors v with ``v(xu) = (-1)^l(x) v(u)`` whenever u, xu lie in [1, w]_R, x in W_J.

    Imposing this only for the generators ``x = s_i`` leaves too much room
    once the interval is not stable under left multiplication: for w = 231
    and J = {1, 2} the vector 231 would survive on its own although it is
    not a submodule generator.  The full parabolic condition is what makes
    P_J a submodule exactly for the reduced left blocks.
    """
    basis = _interval(group, w)
    d = len(basis)
    if not J:
        return linalg.identity(d)
    pos = {u: k for k, u in enumerate(basis)}
    rows = []
    for x in bits(group.parabolic_subgroup(J)):
        if x == 0:
            continue
        sign = -1 if group.length[x] % 2 else 1
        for u in basis:
            xu = group.mul(x, u)
            if xu in pos and pos[xu] > pos[u]:
                row = [0] * d
                row[pos[xu]] = 1
                row[pos[u]] -= sign
                rows.append(row)
    return linalg.nullspace(rows, d) if rows else linalg.identity(d)


def _is_stable(vectors: list[list], module: ModuleAction) -> bool:
    if not vectors:
        return True
    span = linalg.EchelonBasis()
    for v in vectors:
        span.add(v)
    return all(span.contains(linalg.vecmat(v, m)) for m in module.matrices.values() for v in vectors)


def p_submodule(group: CoxeterGroup, w: ElementLike, J) -> SubmoduleBasis:
    """``P_J^(w)``: vectors negated by every left operator indexed by J."""
    w = group.idx(w)
    mask = group.subset_mask(J)
    module = translation_module(group, w)
    vecs = _p_vectors(group, w, mask)
    return SubmoduleBasis(module, vecs, group.subset(mask), _is_stable(vecs, module))


# -- codescents, graph, dimensions ----------------------------------------------------

@dataclass
class CodescentGraph:
    group: CoxeterGroup
    vertices: list[int]
    edges: set[tuple[int, int]] = field(default_factory=set)

    def reachability(self) -> dict[int, int]:
        """Vertex -> bitmask of vertices reachable by a directed path (itself included)."""
        succ: dict[int, list[int]] = {u: [] for u in self.vertices}
        for u, v in self.edges:
            succ[u].append(v)
        out = {}
        for u in self.vertices:
            seen = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out[u] = sum(1 << y for y in seen)
        return out

    def to_dot(self) -> str:
        g = self.group
        lines = ["digraph G {"]
        for u in self.vertices:
            lines.append(f'  n{u} [label="{g.text(u)}"];')
        for u, v in sorted(self.edges):
            if (v, u) in self.edges:
                if u < v:
                    lines.append(f"  n{u} -> n{v} [dir=both];")
            else:
                lines.append(f"  n{u} -> n{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def codescent_graph(group: CoxeterGroup, w: ElementLike) -> CodescentGraph:
    """Edge ``u -> v`` when ``u = v s_i`` and ``J(u) ⊆ J(v)``."""
    w = group.idx(w)
    cod = codescent_masks(group, w)
    verts = _interval(group, w)
    graph = CodescentGraph(group, verts)
    for v in verts:
        for i in range(group.rank):
            u = group.rs[i][v]
            if u in cod and cod[u][1] & ~cod[v][1] == 0:
                graph.edges.add((u, v))
    return graph


def reachable_pair_count(graph: CodescentGraph) -> int:
    """Dimension of the digraph algebra of G^(w): pairs joined by a directed path."""
    return sum(bin(m).count("1") for m in graph.reachability().values())


def triangular_pairs(group: CoxeterGroup, w: ElementLike, limit: int = 10**6) -> set[tuple[int, int]]:
    """Pairs (u, v) admitting a (u, v)-triangular function for Bruhat order.

    The functions range over the monoid F generated by the pi_i, pibar_i and
    s_i acting on [1, w]_R, signs ignored (so s_i is ``u -> u s_i`` inside
    the interval and the identity otherwise).  f is (u, v)-triangular when v
    is the unique Bruhat-minimal element of its image and u the unique
    Bruhat-maximal element of the fiber over v.
    """
    w = group.idx(w)
    basis, maps = _partial_maps(group, w)
    d = len(basis)
    gens = list(maps.values())
    for i in group.index_set:
        up, down = maps[f"pi{i}"], maps[f"pibar{i}"]
        # exactly one of the two moves u, the other fixes it; both vanish when u s_i leaves
        gens.append(tuple(a if up[a] < 0 else (up[a] if up[a] != a else down[a]) for a in range(d)))
    bruhat = group.below(Order.BRUHAT)
    lt = [[a != b and bruhat[basis[b]] >> basis[a] & 1 for b in range(d)] for a in range(d)]
    start = tuple(range(d))
    seen = {start}
    queue = deque([start])
    pairs: set[tuple[int, int]] = set()
    while queue:
        f = queue.popleft()
        image = {b for b in f if b >= 0}
        lows = [b for b in image if not any(lt[c][b] for c in image)]
        if len(lows) == 1:
            v = lows[0]
            fiber = [a for a in range(d) if f[a] == v]
            highs = [a for a in fiber if not any(lt[a][c] for c in fiber)]
            if len(highs) == 1:
                pairs.add((basis[highs[0]], basis[v]))
        for g in gens:
            h = tuple(g[b] if b >= 0 else -1 for b in f)
            if h not in seen:
                if len(seen) >= limit:
                    raise ResourceError(f"more than {limit} functions in F", partial=len(seen))
                seen.add(h)
                queue.append(h)
    return pairs


def codescent_pairs(group: CoxeterGroup, w: ElementLike) -> set[tuple[int, int]]:
    """Pairs (u, v) in [1, w]_R with ``J(u) ⊆ J(v)``."""
    cod = codescent_masks(group, group.idx(w))
    return {(u, v) for u in cod for v in cod if cod[u][1] & ~cod[v][1] == 0}


def whecke_dim_count(group: CoxeterGroup, w: ElementLike) -> int:
    """Number of pairs (u, v) in [1, w]_R with ``J(u) ⊆ J(v)``."""
    return len(codescent_pairs(group, w))


def algebra_dimension(matrices: list[list[list]], bound: int = 64) -> int:
    """Dimension of the unital algebra generated by ``matrices`` (exact span closure).

    Products are explored breadth-first from the identity; only products that
    enlarge the span are multiplied further.
    """
    d = len(matrices[0]) if matrices else 0
    if d > bound:
        raise ResourceError(f"module dimension {d} exceeds bound {bound}", partial=d)

    def flat(m):
        return {a * d + b: Fraction(x) for a, row in enumerate(m) for b, x in enumerate(row) if x}

    span = linalg.EchelonBasis()
    start = linalg.identity(d)
    span.add(flat(start))
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in matrices:
            y = linalg.matmul(x, g)
            if span.add(flat(y)):
                queue.append(y)
    return len(span)


def _partial_map_algebra_dimension(maps: list[tuple[int, ...]], d: int) -> int:
    """Same as :func:`algebra_dimension` for 0/1 matrices given as partial maps."""
    span = linalg.EchelonBasis()
    start = tuple(range(d))
    seen = {start}
    span.add({a * d + a: Fraction(1) for a in range(d)})
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in maps:
            y = tuple(g[b] if b >= 0 else -1 for b in x)
            if y in seen:
                continue
            seen.add(y)
            if span.add({a * d + b: Fraction(1) for a, b in enumerate(y) if b >= 0}):
                queue.append(y)
    return len(span)


def whecke_dim_closure(group: CoxeterGroup, w: ElementLike, bound: int = 64) -> int:
    """Dimension of the algebra generated by the pi_i, pibar_i on T_w."""
    basis, maps = _partial_maps(group, group.idx(w))
    if len(basis) > bound:
        raise ResourceError(f"module dimension {len(basis)} exceeds bound {bound}",
                            partial=len(basis))
    return _partial_map_algebra_dimension(list(maps.values()), len(basis))


def stabilizer_dimension(group: CoxeterGroup, w: ElementLike, bound: int = 16) -> int:
    """Dimension of ``{X in End(T_w) : P_J X ⊆ P_J for every reduced left block J}``."""
    w = group.idx(w)
    d = len(_interval(group, w))
    if d > bound:
        raise ResourceError(f"module dimension {d} exceeds bound {bound}", partial=d)
    equations: list[list] = []
    for K, J, v in reduced_blocks(group, w):
        if not J:
            continue
        vecs = _p_vectors(group, w, J)
        # the annihilator of P_J: row vectors c with P_J c^T = 0
        annihilator = linalg.nullspace(vecs, d)
        for p in vecs:
            for c in annihilator:
                # sum_{a,b} p_a X_ab c_b = 0
                equations.append([p[a] * c[b] for a in range(d) for b in range(d)])
    if not equations:
        return d * d
    return d * d - linalg.rank(equations)


def simple_dims(group: CoxeterGroup, w: ElementLike) -> tuple[dict[frozenset[int], int], int]:
    """Sizes of the w-descent classes per reduced left block, plus the top dimension
    recomputed by Möbius inclusion-exclusion over the cutting poset."""
    w = group.idx(w)
    cod = codescent_masks(group, w)
    sizes = {J: 0 for K, J, v in reduced_blocks(group, w)}
    for K, J in cod.values():
        sizes[J] += 1
    cp = _cutting(group)
    below_r = group.below(Order.RIGHT)
    top = sum(cp.poset.mobius(v, w) * bin(below_r[v]).count("1") for v in bits(cp.poset.below[w]))
    if top != sizes[0]:
        raise InvariantViolation(f"top dimension of T_{group.text(w)}: class count {sizes[0]} "
                                 f"vs inclusion-exclusion {top}")
    return {group.subset(J): n for J, n in sizes.items()}, top


@lru_cache(maxsize=None)
def _cutting(group: CoxeterGroup):
    return cutting_poset(group, verify=False)


# -- quotients -------------------------------------------------------------------

def quotient_action(module: ModuleAction, sub: list[list], ambient: list[list] | None = None,
                    name: str = "") -> ModuleAction:
    """Action on ``ambient / sub`` (``ambient`` defaults to the whole module).

    Both spaces must be stable.  For the whole module the quotient basis is
    the unit vectors of the non-pivot columns of the row-reduced ``sub``; for
    a proper ambient space it is the rows of the row-reduced ``ambient`` that
    are independent modulo ``sub``, taken in order.  Each quotient basis
    vector is labelled by the basis element of its leading column.
    """
    d = module.dim
    red, piv = linalg.rref(sub) if sub else ([], [])
    if ambient is None:
        pivots = set(piv)
        comp = [[int(j == c) for j in range(d)] for c in range(d) if c not in pivots]
    else:
        span = linalg.EchelonBasis()
        for v in red:
            span.add(v)
        comp = [v for v in linalg.rref(ambient)[0] if span.add(v)]
    labels = [module.basis[next(j for j, x in enumerate(v) if x)] for v in comp]
    full = list(red) + comp
    ns = len(red)
    mats = {}
    for lab, m in module.matrices.items():
        q = []
        for v in comp:
            coords = linalg.solve_coordinates(full, linalg.vecmat(v, m))
            if coords is None:
                raise InvariantViolation("ambient space is not stable")
            q.append(coords[ns:])
        mats[lab] = q
    return ModuleAction(module.group, labels, mats, name)


def _sum_of_p(group: CoxeterGroup, w: int, larger_than: int) -> list[list]:
    vecs: list[list] = []
    for K, J, v in reduced_blocks(group, w):
        if J != larger_than and J & larger_than == larger_than:
            vecs.extend(_p_vectors(group, w, J))
    return vecs


def simple_module_action(group: CoxeterGroup, w: ElementLike) -> ModuleAction:
    """``T_w`` modulo the sum of the ``P_J^(w)``, J a nonempty reduced left block."""
    w = group.idx(w)
    module = translation_module(group, w)
    q = quotient_action(module, _sum_of_p(group, w, 0), name=f"S_{group.text(w)}")
    return q


def simple_quotient_action(group: CoxeterGroup, w: ElementLike, J) -> ModuleAction:
    """``S_J^(w) = P_J / sum of P_J'`` over reduced left blocks J' strictly containing J."""
    w = group.idx(w)
    mask = group.subset_mask(J)
    if mask not in {Jb for K, Jb, v in reduced_blocks(group, w)}:
        raise DomainError(f"{group.format_subset(mask)} is not a reduced left block")
    module = translation_module(group, w)
    return quotient_action(module, _sum_of_p(group, w, mask), _p_vectors(group, w, mask),
                           name=f"S^({group.text(w)})_{group.format_subset(mask)}")


def left_reduced_subsets(group: CoxeterGroup, w: int) -> list[int]:
    return [J for J in group.all_subsets() if is_left_reduced(group, w, J)]
