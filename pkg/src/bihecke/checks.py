"""Executable invariant suites, one group at a time.

Every check returns a :class:`CheckResult`; nothing here raises for a
failed property (exceptions raised by the library's own internal
assertions are caught and reported as failures).  The ``check`` CLI
subcommand and the acceptance tests are thin wrappers around
:func:`run_suite` and the property helpers.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from itertools import product

from . import blocks, borel, heckeops, reptheory, transmod
from .coxeter import CoxeterGroup, Order
from .errors import BiHeckeError, ResourceError
from .heckeops import FunctionTable, MonoidClosure
from .posets import bits


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    status: str            # "PASS", "FAIL", "SKIP" or "REPORT"
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{self.status:6} {self.module}.{self.name} ({self.seconds:.2f}s){tail}"


@dataclass
class Context:
    group: CoxeterGroup
    samples: int = 10**4
    seed: int = 0
    budget: int = 10**6
    dim_bound: int = 64
    _monoid: MonoidClosure | None = None
    _borel: borel.BorelClosure | None = None

    @property
    def monoid(self) -> MonoidClosure:
        if self._monoid is None:
            self._monoid = heckeops.bihecke_monoid(self.group, self.budget)
        return self._monoid

    @property
    def borel(self) -> borel.BorelClosure:
        if self._borel is None:
            self._borel = borel.borel_closure(self.group, self.budget)
        return self._borel


Outcome = tuple[bool, str]
_REGISTRY: list[tuple[str, str, Callable[[Context], Outcome], bool]] = []


def _check(module: str, report_only: bool = False):
    def register(fn):
        _REGISTRY.append((module, fn.__name__, fn, report_only))
        return fn
    return register


def _verdict(violations: Sequence, checked: int, what: str = "cases") -> Outcome:
    if violations:
        return False, f"{len(violations)} of {checked} {what} fail, first: {violations[0]}"
    return True, f"{checked} {what}"


def random_products(group: CoxeterGroup, count: int, seed: int = 0,
                    max_length: int | None = None) -> list[FunctionTable]:
    """``count`` products of uniformly random generators, of random lengths."""
    rng = random.Random(seed)
    gens = heckeops.all_generators(group)
    max_length = max_length or 4 * group.length[group.w0] + 1
    out = []
    for _ in range(count):
        f = heckeops.identity_table(group)
        for _ in range(rng.randint(1, max_length)):
            f = heckeops.compose(f, rng.choice(gens))
        out.append(f)
    return out


# -- per-map properties --------------------------------------------------------------

def _covers(group: CoxeterGroup, order: Order) -> list[tuple[int, int]]:
    return group.poset(order).hasse_edges()


def map_property_violations(group: CoxeterGroup, maps: Iterable[FunctionTable]) -> dict[str, list]:
    """Violations of the single-map properties of biHecke monoid elements."""
    maps = list(dict.fromkeys(maps))
    left_below = group.below(Order.LEFT)
    bruhat_below = group.below(Order.BRUHAT)
    left_covers = _covers(group, Order.LEFT)
    bruhat_covers = _covers(group, Order.BRUHAT)
    out: dict[str, list] = {k: [] for k in ("left order", "bruhat order", "contraction",
                                            "single step", "fiber contraction", "omega idempotent",
                                            "fiber+image")}
    seen: dict[tuple, tuple[int, ...]] = {}
    for f in maps:
        t = f.images
        if any(not left_below[t[b]] >> t[a] & 1 for a, b in left_covers):
            out["left order"].append(f.text())
        if any(not bruhat_below[t[b]] >> t[a] & 1 for a, b in bruhat_covers):
            out["bruhat order"].append(f.text())
        if t[0] == 0 and any(not bruhat_below[w] >> t[w] & 1 for w in range(group.order)):
            out["contraction"].append(f.text())
        for j, w in product(range(group.rank), range(group.order)):
            if t[group.ls[j][w]] not in (t[w], group.ls[j][t[w]]):
                out["single step"].append((f.text(), j + 1, group.text(w)))
                break
        image = set(t)
        contracted = {(t[a], t[b]) for a, b in left_covers if t[a] != t[b]}
        restricted = {(a, b) for a, b in left_covers if a in image and b in image}
        if contracted != restricted:
            out["fiber contraction"].append(f.text())
        try:
            om = heckeops.omega(f)
            if heckeops.compose(om, om) != om:
                out["omega idempotent"].append(f.text())
        except BiHeckeError as exc:
            out["omega idempotent"].append(f"{f.text()}: {exc}")
        key = (heckeops.fiber_key(f), frozenset(image))
        if key in seen and seen[key] != t:
            out["fiber+image"].append(f.text())
        seen[key] = t
    return out


def property_suite(group: CoxeterGroup, maps: Iterable[FunctionTable]) -> tuple[int, dict[str, list]]:
    maps = list(maps)
    return len(maps), map_property_violations(group, maps)


# -- coxeter ---------------------------------------------------------------------------

@_check("coxeter")
def weak_orders_refine_bruhat(ctx: Context) -> Outcome:
    g = ctx.group
    br = g.below(Order.BRUHAT)
    bad = [(g.text(u), g.text(v), side.value) for side in (Order.LEFT, Order.RIGHT)
           for v in range(g.order) for u in bits(g.below(side)[v]) if not br[v] >> u & 1]
    return _verdict(bad, 2 * g.order, "elements")


def _is_reduced_word(group: CoxeterGroup, word: Sequence[int]) -> bool:
    w = 0
    for i in word:
        nxt = group.rs[i - 1][w]
        if group.length[nxt] < group.length[w]:
            return False
        w = nxt
    return True


@_check("coxeter")
def length_subadditive(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for u, v in product(range(g.order), repeat=2):
        luv = g.length[g.mul(u, v)]
        reduced = _is_reduced_word(g, g.reduced_word(u) + g.reduced_word(v))
        if luv > g.length[u] + g.length[v] or (luv == g.length[u] + g.length[v]) != reduced:
            bad.append((g.text(u), g.text(v)))
    return _verdict(bad, g.order ** 2, "pairs")


@_check("coxeter")
def parabolic_bijection(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for J in g.all_subsets():
        sub = bits(g.parabolic_subgroup(J))
        reps = [x for x in range(g.order) if g.dl[x] & J == 0]
        prods = {g.mul(a, b) for a in sub for b in reps}
        if len(prods) != g.order or len(sub) * len(reps) != g.order:
            bad.append(g.format_subset(J))
        for w in range(g.order):
            rep = g.left_coset_rep(w, J)
            if g.dl[rep] & J or not g.parabolic_subgroup(J) >> g.mul(w, g.inverse[rep]) & 1:
                bad.append((g.format_subset(J), g.text(w)))
    return _verdict(bad, 2 ** g.rank, "subsets")


def subword_bruhat(group: CoxeterGroup, u: int, v: int) -> bool:
    """u <=_B v iff some subword of a reduced word of v multiplies to u."""
    word = group.reduced_word(v)
    reach = {0}
    for i in word:
        reach |= {group.rs[i - 1][x] for x in reach}
    return u in reach


@_check("coxeter")
def bruhat_subword_oracle(ctx: Context) -> Outcome:
    g = ctx.group
    bad = [(g.text(u), g.text(v)) for u, v in product(range(g.order), repeat=2)
           if g.bruhat_leq(u, v) != subword_bruhat(g, u, v)]
    return _verdict(bad, g.order ** 2, "pairs")


@_check("coxeter")
def interval_inverse_symmetry(ctx: Context) -> Outcome:
    g = ctx.group
    r, l = g.below(Order.RIGHT), g.below(Order.LEFT)
    bad = [g.text(w) for w in range(g.order)
           if bin(r[w]).count("1") != bin(l[g.inverse[w]]).count("1")]
    return _verdict(bad, g.order, "elements")


@_check("coxeter")
def orders_are_partial_orders(ctx: Context) -> Outcome:
    for order in Order:
        ctx.group.poset(order).check_partial_order()
    return True, f"{len(Order)} orders"


# -- heckeops -------------------------------------------------------------------------

@_check("heckeops")
def monoid_map_properties(ctx: Context) -> Outcome:
    n, viol = property_suite(ctx.group, ctx.monoid)
    bad = [f"{k}: {v[0]}" for k, v in viol.items() if v]
    return _verdict(bad, n, "closure elements")


@_check("heckeops")
def sampled_map_properties(ctx: Context) -> Outcome:
    maps = random_products(ctx.group, ctx.samples, ctx.seed)
    n, viol = property_suite(ctx.group, maps)
    bad = [f"{k}: {v[0]}" for k, v in viol.items() if v]
    ok, detail = _verdict(bad, n, "random products")
    return ok, f"{detail} ({len(set(maps))} distinct)"


@_check("heckeops")
def generator_relations(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for kind in (heckeops.ANTISORT, heckeops.SORT):
        gens = [heckeops.generator(g, kind, i) for i in g.index_set]
        for i, a in enumerate(gens):
            if a * a != a:
                bad.append((kind, i + 1, "idempotent"))
            for j, b in enumerate(gens[i + 1:], start=i + 1):
                m = _braid_length(g, i, j)
                lhs = heckeops.identity_table(g)
                rhs = heckeops.identity_table(g)
                for k in range(m):
                    lhs = lhs * (a if k % 2 == 0 else b)
                    rhs = rhs * (b if k % 2 == 0 else a)
                if lhs != rhs:
                    bad.append((kind, i + 1, j + 1, "braid"))
    return _verdict(bad, 2 * g.rank, "generators")


def _braid_length(group: CoxeterGroup, i: int, j: int) -> int:
    x, m = 0, 0
    while True:
        x = group.mul(x, group.mul(group.s(i + 1), group.s(j + 1)))
        m += 1
        if x == 0:
            return m


@_check("heckeops")
def e_w_suite(ctx: Context) -> Outcome:
    g = ctx.group
    below_b, below_l = g.below(Order.BRUHAT), g.below(Order.LEFT)
    bad = []
    for w in range(g.order):
        e = heckeops.e_idempotent(g, w)
        t = e.images
        if not e.is_idempotent() or t[0] != 0:
            bad.append((g.text(w), "idempotent/fixes 1"))
        if sum(1 << x for x in set(t)) != below_l[w]:
            bad.append((g.text(w), "image"))
        for u in range(g.order):
            cand = below_b[u] & below_l[w]
            maxima = [x for x in bits(cand) if not any(y != x and below_b[y] >> x & 1 for y in bits(cand))]
            if maxima != [t[u]]:
                bad.append((g.text(w), g.text(u), "bruhat max"))
                break
    return _verdict(bad, g.order, "elements")


@_check("heckeops")
def idempotent_transversal(ctx: Context) -> Outcome:
    g, mon = ctx.group, ctx.monoid
    ids = heckeops.idempotents(mon)
    images = {}
    for i in ids:
        images.setdefault(frozenset(mon.tables[i]), []).append(i)
    bad = []
    for w in range(g.order):
        e = heckeops.e_idempotent(g, w)
        if images.get(frozenset(e.images)) != [mon.index_of(e)]:
            bad.append((g.text(w), "not the unique idempotent with its image"))
    if len(mon) <= 100:
        classes = heckeops.idempotent_conjugacy_classes(mon)
    else:
        by_type: dict[int, list[int]] = {}
        for i in ids:
            by_type.setdefault(heckeops.interval_type(mon[i]), []).append(i)
        classes = list(by_type.values())
    if len(classes) != g.order:
        bad.append(f"{len(classes)} idempotent classes")
    reps = {heckeops.interval_type(mon[c[0]]) for c in classes}
    if reps != set(range(g.order)):
        bad.append("class types are not all of W")
    ok, detail = _verdict(bad, len(ids), "idempotents")
    return ok, f"{detail}, {len(classes)} classes"


# -- blocks --------------------------------------------------------------------------

@_check("blocks")
def block_lattice(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for w in range(g.order):
        Ks = {K for K, J, v, red in blocks._blocks(g, w)}
        for a, b in product(Ks, repeat=2):
            if a | b not in Ks or a & b not in Ks:
                bad.append(g.text(w))
                break
    return _verdict(bad, g.order, "elements")


@_check("blocks")
def tiling_characterizes_blocks(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    n = 0
    for w in range(g.order):
        left_blocks = {J for K, J, v, red in blocks._blocks(g, w)}
        for J in g.all_subsets():
            if blocks.is_left_reduced(g, w, J):
                n += 1
                if blocks.tiling_check(g, w, J) != (J in left_blocks):
                    bad.append((g.text(w), g.format_subset(J)))
    return _verdict(bad, n, "left-reduced pairs")


@_check("blocks")
def cutting_poset_structure(ctx: Context) -> Outcome:
    g = ctx.group
    cp = blocks.cutting_poset(g, verify=True)     # covers and Möbius against brute force
    ok = blocks.check_cutting_containment(g, cp)
    return ok, f"{g.order} elements" if ok else "a cutting point is not below in both weak orders"


@_check("blocks", report_only=True)
def cutting_conjecture(ctx: Context) -> Outcome:
    rep = blocks.conjecture_report(ctx.group)
    return rep["status"] == "PASS", f"{rep['status']}"


@_check("blocks")
def matrix_blocks_bijection(ctx: Context) -> Outcome:
    if ctx.group.descriptor.family != "A":
        return True, "SKIP: not type A"
    g = ctx.group
    bad = []
    for w in range(g.order):
        ok, reason = blocks.blocks_bijection_check(g, w)
        if not ok:
            bad.append((g.text(w), reason))
    return _verdict(bad, g.order, "permutations")


# -- transmod ------------------------------------------------------------------------

def _small_ws(ctx: Context) -> list[int]:
    below = ctx.group.below(Order.RIGHT)
    return [w for w in range(ctx.group.order) if bin(below[w]).count("1") <= ctx.dim_bound]


@_check("transmod")
def trans_matches_combinatorial_model(ctx: Context) -> Outcome:
    g, mon = ctx.group, ctx.monoid
    bad = []
    by_type: dict[int, dict] = {}
    for f in mon:
        t = transmod.trans_of(f, mon)
        w = g.mul(g.inverse[heckeops.function_type(f)], g.w0)
        if t.matrices != transmod.translation_module(g, w).matrices:
            bad.append(f.text())
        key = heckeops.function_type(f)
        if key in by_type and by_type[key] != t.matrices:
            bad.append(("same type, different module", f.text()))
        by_type.setdefault(key, t.matrices)
    # different types give different modules
    seen = {}
    for key, mats in by_type.items():
        frozen = repr(sorted(mats.items()))
        if frozen in seen:
            bad.append(("isomorphic across types", g.text(key), g.text(seen[frozen])))
        seen[frozen] = key
    return _verdict(bad, len(mon), "closure elements")


@_check("transmod")
def modules_respect_monoid_relations(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for w in _small_ws(ctx):
        T = transmod.translation_module(g, w)
        if not transmod.is_monoid_representation(T, ctx.monoid):
            bad.append(g.text(w))
        for i in g.index_set:
            s = transmod.s_matrix(T, i)
            if transmod.linalg.matmul(s, s) != transmod.linalg.identity(T.dim):
                bad.append((g.text(w), i, "s_i^2"))
            exp = [[0] * T.dim for _ in range(T.dim)]
            pos = {u: k for k, u in enumerate(T.basis)}
            for a, u in enumerate(T.basis):
                v = g.rs[i - 1][u]
                if v in pos:
                    exp[a][pos[v]] = 1
                else:
                    exp[a][a] = -1
            if s != exp:
                bad.append((g.text(w), i, "s_i action"))
    return _verdict(bad, len(_small_ws(ctx)), "modules")


@_check("transmod")
def whecke_dimension_formula(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for w in _small_ws(ctx):
        a, b = transmod.whecke_dim_count(g, w), transmod.whecke_dim_closure(g, w, ctx.dim_bound)
        c = transmod.reachable_pair_count(transmod.codescent_graph(g, w))
        if not a == b == c:
            bad.append((g.text(w), a, b, c))
    return _verdict(bad, len(_small_ws(ctx)), "elements")


@_check("transmod")
def triangular_family(ctx: Context) -> Outcome:
    g = ctx.group
    ws = [w for w in _small_ws(ctx) if bin(g.below(Order.RIGHT)[w]).count("1") <= 12]
    bad = [g.text(w) for w in ws if transmod.triangular_pairs(g, w) != transmod.codescent_pairs(g, w)]
    return _verdict(bad, len(ws), "elements")


@_check("transmod")
def antisymmetric_submodules(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    n = 0
    for w in _small_ws(ctx):
        reduced = {J for K, J, v in blocks.reduced_blocks(g, w)}
        for J in g.all_subsets():
            if not blocks.is_left_reduced(g, w, J):
                continue
            n += 1
            p = transmod.p_submodule(g, w, J)
            if p.stable != (J in reduced):
                bad.append((g.text(w), g.format_subset(J)))
    return _verdict(bad, n, "left-reduced pairs")


@_check("transmod")
def stabilizer_algebra(ctx: Context) -> Outcome:
    g = ctx.group
    ws = [w for w in range(g.order) if bin(g.below(Order.RIGHT)[w]).count("1") <= 8]
    bad = [g.text(w) for w in ws
           if transmod.stabilizer_dimension(g, w, 8) != transmod.whecke_dim_count(g, w)]
    return _verdict(bad, len(ws), "elements")


@_check("transmod")
def simple_dimensions(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for w in _small_ws(ctx):
        sizes, top = transmod.simple_dims(g, w)      # raises if the two counts disagree
        if sum(sizes.values()) != bin(g.below(Order.RIGHT)[w]).count("1"):
            bad.append((g.text(w), "classes do not partition"))
        S = transmod.simple_module_action(g, w)
        if S.dim != top:
            bad.append((g.text(w), "quotient dimension"))
        elif S.dim and transmod.algebra_dimension(list(S.matrices.values())) != S.dim ** 2:
            bad.append((g.text(w), "quotient not simple"))
        for K, J, v in blocks.reduced_blocks(g, w):
            if transmod.simple_quotient_action(g, w, J).dim != sizes[g.subset(J)]:
                bad.append((g.text(w), g.format_subset(J), "subquotient dimension"))
    return _verdict(bad, len(_small_ws(ctx)), "elements")


# -- borel --------------------------------------------------------------------------

@_check("borel")
def borel_routes_agree(ctx: Context) -> Outcome:
    direct = ctx.borel
    filtered = borel.borel_closure(ctx.group, ctx.budget, route="filtered")
    ok = direct.monoid.tables == filtered.monoid.tables
    return ok, f"|M_1| = {len(direct)}"


@_check("borel")
def j_trivial_order(ctx: Context) -> Outcome:
    B = ctx.borel
    elems = list(B)
    bad = []
    for f, h in product(elems, repeat=2):
        fh = f * h
        if not (borel.jorder_leq(fh, f) and borel.jorder_leq(fh, h)):
            bad.append((f.text(), h.text()))
        if f != h and borel.jorder_leq(f, h) and borel.jorder_leq(h, f):
            bad.append(("antisymmetry", f.text(), h.text()))
    return _verdict(bad, len(elems) ** 2, "pairs")


@_check("borel")
def fixers_and_cartan(ctx: Context) -> Outcome:
    B = ctx.borel
    g = ctx.group
    bad = []
    for w in range(g.order):
        p = borel.fixes(B.e[w], B)
        if p.lfix.index != w or p.rfix.index != w:
            bad.append(g.text(w))
    c = borel.cartan_matrix(B)                       # raises on non-upclosed fixer sets
    if sum(map(sum, c)) != len(B):
        bad.append("cartan sum")
    if any(c[w][w] < 1 for w in range(g.order)):
        bad.append("cartan diagonal")
    return _verdict(bad, len(B), "elements")


@_check("borel")
def minimal_generating_set(ctx: Context) -> Outcome:
    B = ctx.borel
    gens = sorted(B.generators)
    pred = sorted(B.idempotent_indices[w] for w in borel.predicted_generators(ctx.group))
    return gens == pred, f"{len(gens)} generators ({len([x for x in gens if x])} without identity)"


@_check("borel")
def idempotent_pairs(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for u, v in product(range(g.order), repeat=2):
        r = borel.idempotent_pair_relation(g, u, v)
        if not (r.uv_is_u == r.vu_is_u == r.u_leq_v):
            bad.append((g.text(u), g.text(v), "conditions"))
        if r.omega_index.index != g.left_meet(u, v).index:
            bad.append((g.text(u), g.text(v), "omega"))
    return _verdict(bad, g.order ** 2, "pairs")


# -- reptheory ---------------------------------------------------------------------

@_check("reptheory")
def decomposition(ctx: Context) -> Outcome:
    g = ctx.group
    reptheory.check_simple_characters(g)
    mat = reptheory.decomposition_matrix(g, verify=True)
    bad = []
    for w in range(g.order):
        if sum(mat[u][w] for u in range(g.order)) != transmod.simple_dims(g, w)[1]:
            bad.append(g.text(w))
    if not reptheory.distinct_simple_characters(g):
        bad.append("characters not distinct")
    return _verdict(bad, g.order, "simple modules")


@_check("reptheory")
def subquotients_and_filtration(ctx: Context) -> Outcome:
    g = ctx.group
    bad = []
    for w in _small_ws(ctx):
        if reptheory.m1_multiplicities(g, transmod.translation_module(g, w)) != \
                reptheory.filtration_multiplicities(g, w):
            bad.append((g.text(w), "filtration"))
        for K, J, v in blocks.reduced_blocks(g, w):
            a = reptheory.m1_multiplicities(g, transmod.simple_quotient_action(g, w, J))
            b = reptheory.m1_multiplicities(g, transmod.simple_module_action(g, g.left_coset_rep(w, J)))
            if a != b:
                bad.append((g.text(w), g.format_subset(J)))
    return _verdict(bad, len(_small_ws(ctx)), "elements")


# -- driver ----------------------------------------------------------------------------

MODULES = ("coxeter", "heckeops", "blocks", "transmod", "borel", "reptheory")


def check_names() -> list[str]:
    return [f"{m}.{n}" for m, n, f, r in _REGISTRY]


def run_suite(group: CoxeterGroup, modules: Sequence[str] | None = None, samples: int = 10**4,
              seed: int = 0, budget: int = 10**6, dim_bound: int = 64) -> list[CheckResult]:
    ctx = Context(group, samples, seed, budget, dim_bound)
    results = []
    for module, name, fn, report_only in _REGISTRY:
        if modules is not None and module not in modules:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn(ctx)
            if report_only:
                status = "REPORT"
            elif detail.startswith("SKIP"):
                status = "SKIP"
            else:
                status = "PASS" if ok else "FAIL"
        except ResourceError as exc:
            status, detail = "SKIP", f"resource limit: {exc}"
        except BiHeckeError as exc:
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(module, name, status, detail, time.perf_counter() - start))
    return results
