"""Batch command line for the bihecke toolkit.

Every subcommand writes one document (JSON, TSV or DOT) to stdout or to
``--out``.  Output depends only on the arguments, so reruns are
byte-identical.  Exit status: 0 success, 2 usage or parse error, 3 budget
exhausted, 4 an invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence

from . import blocks, borel, checks, heckeops, reptheory, transmod
from .coxeter import CoxeterGroup, Order, create_group
from .errors import BiHeckeError, InvariantViolation, ResourceError
from .posets import bits

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _subset(group: CoxeterGroup, mask: int) -> list[int]:
    return sorted(group.subset(mask))


def _tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _element(group: CoxeterGroup, args) -> int:
    if args.w is None:
        raise UsageError(f"{args.command} needs --w")
    return group.idx(args.w)


# -- subcommands -----------------------------------------------------------------

def cmd_group(group: CoxeterGroup, args) -> str:
    g = group
    if args.format == "dot":
        return g.poset_dot(Order.BRUHAT)
    rows = [(g.text(w), g.length[w], ",".join(map(str, _subset(g, g.dr[w]))),
             ",".join(map(str, _subset(g, g.dl[w])))) for w in range(g.order)]
    if args.format == "tsv":
        return _tsv(["element", "length", "right_descents", "left_descents"], rows)
    return _dump({"group": str(g.descriptor), "rank": g.rank, "order": g.order,
                  "w0": g.text(g.w0),
                  "elements": [{"element": e, "length": n, "right_descents": _subset(g, g.dr[w]),
                                "left_descents": _subset(g, g.dl[w])}
                               for w, (e, n, _, _) in enumerate(rows)]})


def cmd_monoid(group: CoxeterGroup, args) -> str:
    mon = heckeops.bihecke_monoid(group, args.budget, args.threads)
    if args.format == "tsv":
        return mon.dump_tsv()
    if args.format == "dot":
        return mon.cayley_dot()
    return _dump({"group": str(group.descriptor), "size": len(mon),
                  "fixing_identity": sum(mon.fixes_one), "diameter": mon.diameter,
                  "generators": mon.labels})


def cmd_borel(group: CoxeterGroup, args) -> str:
    cl = borel.borel_closure(group, args.budget, threads=args.threads)
    cartan = borel.cartan_matrix(cl)
    if args.format == "tsv":
        return borel.matrix_tsv(group, cartan, "lfix\\rfix")
    if args.format == "dot":
        raise UsageError("borel has no DOT output")
    gens = []
    for i in cl.generators:
        f = cl.monoid[i]
        w = f.images[group.w0]
        gens.append(f"e{group.text(w)}" if borel.e_idempotent(group, w) == f else f"m{i}")
    return _dump({"group": str(group.descriptor), "size": len(cl),
                  "minimal_generators": gens, "cartan": {
                      "rows": "lfix", "columns": "rfix",
                      "labels": [group.text(w) for w in range(group.order)],
                      "matrix": cartan}})


def cmd_blocks(group: CoxeterGroup, args) -> str:
    w = _element(group, args)
    recs = blocks.all_blocks(group, w)
    if args.format == "dot":
        raise UsageError("blocks has no DOT output")
    if args.format == "tsv":
        return _tsv(["K", "J", "cutting_point", "reduced", "trivial"],
                    [(group.format_subset(group.subset_mask(b.K)),
                      group.format_subset(group.subset_mask(b.J)), b.cutting_point,
                      int(b.reduced), int(not b.nontrivial)) for b in recs])
    reduced = [b for b in recs if b.reduced]
    payload = {"group": str(group.descriptor), "w": group.text(w),
               "blocks": [b.as_json() for b in recs],
               "reduced_blocks": [sorted(b.K) for b in reduced],
               "left_partners": [sorted(b.J) for b in reduced],
               "cutting_points": [str(b.cutting_point) for b in reduced]}
    if group.is_type_a:
        payload["matrix_blocks"] = [
            {"columns": list(b.columns), "rows": list(b.rows),
             "permutation": "".join(map(str, b.permutation))}
            for b in blocks.matrix_blocks(group, w) if 1 < b.size < group.rank + 1]
        payload["simple_permutation"] = blocks.is_simple_permutation(group.keys[w])
    return _dump(payload)


def cmd_cutting_poset(group: CoxeterGroup, args) -> str:
    cp = blocks.cutting_poset(group)
    if args.format == "dot":
        return cp.to_dot()
    pairs = [(v, w) for w in range(group.order) for v in bits(cp.poset.below[w])]
    if args.format == "tsv":
        return _tsv(["v", "w", "mobius"],
                    [(group.text(v), group.text(w), cp.mobius(v, w)) for v, w in pairs])
    return _dump({"group": str(group.descriptor),
                  "relation": [[group.text(v), group.text(w)] for v, w in pairs],
                  "mobius": [[group.text(v), group.text(w), cp.mobius(v, w)]
                             for v, w in pairs if cp.mobius(v, w)],
                  "conjecture": blocks.conjecture_report(group, cp)})


def cmd_transmod(group: CoxeterGroup, args) -> str:
    w = _element(group, args)
    if args.format == "dot":
        return transmod.codescent_graph(group, w).to_dot()
    module = transmod.translation_module(group, w)
    if module.dim > args.dim_bound:
        raise ResourceError(f"module dimension {module.dim} exceeds bound {args.dim_bound}",
                            partial=module.dim)
    if args.format == "tsv":
        rows = [(lab, a, b, x) for lab, m in module.matrices.items()
                for a, row in enumerate(m) for b, x in enumerate(row) if x]
        return _tsv(["generator", "row", "column", "value"], rows)
    return module.to_json()


def cmd_whecke(group: CoxeterGroup, args) -> str:
    w = _element(group, args)
    closure_dim = transmod.whecke_dim_closure(group, w, args.dim_bound)
    count_dim = transmod.whecke_dim_count(group, w)
    if closure_dim != count_dim:
        raise InvariantViolation(f"w-biHecke dimension of {group.text(w)}: closure {closure_dim}, "
                                 f"codescent count {count_dim}")
    sizes, top = transmod.simple_dims(group, w)
    classes = sorted(sizes.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    if args.format == "dot":
        raise UsageError("whecke has no DOT output")
    if args.format == "tsv":
        return _tsv(["J", "dimension"],
                    [(group.format_subset(group.subset_mask(J)), n) for J, n in classes])
    return _dump({"group": str(group.descriptor), "w": group.text(w),
                  "dimension_closure": closure_dim, "dimension_count": count_dim,
                  "top_simple_dimension": top,
                  "simple_dimensions": [{"J": sorted(J), "dimension": n} for J, n in classes]})


def cmd_decomposition(group: CoxeterGroup, args) -> str:
    mat = reptheory.decomposition_matrix(group)
    if args.format == "tsv":
        return borel.matrix_tsv(group, mat, "M1\\M")
    if args.format == "dot":
        raise UsageError("decomposition has no DOT output")
    return borel.matrix_json(group, mat, "decomposition")


def cmd_check(group: CoxeterGroup, args) -> tuple[str, int]:
    results = checks.run_suite(group, samples=args.samples, seed=args.seed,
                               budget=args.budget, dim_bound=args.dim_bound)
    failed = [r for r in results if not r.ok]
    if args.format == "json":
        text = _dump({"group": str(group.descriptor), "failed": len(failed),
                      "results": [{"check": f"{r.module}.{r.name}", "status": r.status,
                                   "detail": r.detail} for r in results]})
    else:
        # timings would make the output nondeterministic, so they are left out
        text = "".join(f"{r.status:6} {r.module}.{r.name}  {r.detail}\n" for r in results)
        text += f"{len(results) - len(failed)}/{len(results)} ok\n"
    return text, EXIT_VERIFY if failed else EXIT_OK


COMMANDS: dict[str, tuple[Callable, bool, str]] = {
    "group": (cmd_group, False, "order, longest element and descent tables"),
    "monoid": (cmd_monoid, False, "closure of M(W): size, TSV dump, Cayley graph"),
    "borel": (cmd_borel, False, "Borel submonoid: size, minimal generators, Cartan matrix"),
    "blocks": (cmd_blocks, True, "blocks and cutting points of --w"),
    "cutting-poset": (cmd_cutting_poset, False, "cutting poset relation and Möbius values"),
    "transmod": (cmd_transmod, True, "translation module of --w (DOT: codescent graph)"),
    "whecke": (cmd_whecke, True, "w-biHecke algebra dimension and simple dimensions"),
    "decomposition": (cmd_decomposition, False, "decomposition matrix over the Borel submonoid"),
    "check": (cmd_check, False, "run every invariant check for the group"),
}


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help='descriptor such as "A3" or "I2(5)"')
    common.add_argument("--w", help="element in one-line (type A) or dihedral notation")
    common.add_argument("--format", choices=("json", "tsv", "dot"), default="json")
    common.add_argument("--budget", type=_positive, default=10**6,
                        help="maximal number of monoid elements to enumerate")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--dim-bound", type=_positive, default=64,
                        help="largest module dimension to build matrices for")
    common.add_argument("--samples", type=_positive, default=10**4,
                        help="random products per sampled property check")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write here instead of stdout")
    parser = argparse.ArgumentParser(prog="bihecke", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    fn, _, _ = COMMANDS[args.command]
    status = EXIT_OK
    try:
        group = create_group(args.group)
        if args.w is not None:
            group.parse(args.w)
        result = fn(group, args)
        if isinstance(result, tuple):
            result, status = result
    except UsageError as exc:
        print(f"bihecke {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"bihecke {args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"bihecke {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except BiHeckeError as exc:
        print(f"bihecke {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return status


def main() -> None:
    sys.exit(run())
