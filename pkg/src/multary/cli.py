"""Command-line front end.

Exit codes: 0 success, 1 domain error (machine-readable JSON on stderr),
2 usage error.  Output is deterministic: identical invocations, seeds
included, produce byte-identical standard output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import FORMAT_VERSION, __version__
from .core import MultaryQuasigroup
from .designs import to_design, verify_design
from .errors import MultaryError, PreconditionFailed
from .factorization import compose, factorization_graph
from .generators import (
    SearchBudget,
    random_isotopy,
    random_quasigroup,
    search_irreducible,
    search_nongroup_binary,
    twisted_composition,
)
from .groups import catalog, catalog_name, is_iterated_group_isotope, iterated_group
from .io import read_mqt, write_mqt, write_td
from .structure import decompose_quasigroup

_GROUPS = catalog()


def _load(path: str) -> MultaryQuasigroup:
    with open(path, "r", encoding="utf-8") as fh:
        return read_mqt(fh.read())


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _jprint(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _group_arg(name: str):
    if name not in _GROUPS:
        raise PreconditionFailed(
            f"unknown group {name!r}; choose from {sorted(_GROUPS)}"
        )
    return _GROUPS[name]


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise PreconditionFailed(f"bad integer list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="multary",
        description="Multary quasigroup analysis: factorization graphs, "
        "decomposition, group recognition, transversal designs.",
    )
    p.add_argument(
        "--version",
        action="version",
        version=f"multary {__version__} (mq/td format v{FORMAT_VERSION})",
    )
    p.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="parallelism hint; results never depend on it",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an MQT file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("eval", help="evaluate the operation at one point")
    s.add_argument("file")
    s.add_argument("--args", required=True, metavar="X1,..,XK")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("factor-graph", help="print the factorization graph")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("decompose", help="block decomposition of the table")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--dot", action="store_true")

    s = sub.add_parser("recognize", help="iterated group isotope test")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("compose", help="substitute one table into another")
    s.add_argument("outer")
    s.add_argument("inner")
    s.add_argument("--at", type=int, required=True, metavar="POS")
    s.add_argument("-o", "--output")

    s = sub.add_parser("design", help="convert MQT to a transversal design")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--json", action="store_true")
    s.add_argument(
        "--from-td",
        action="store_true",
        help="treat the input as a TD file and verify it",
    )

    s = sub.add_parser("enumerate", help="stream every table of given shape")
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--count", action="store_true")
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--guard", type=int, default=10**6)

    g = sub.add_parser("generate", help="seeded corpus generators")
    gsub = g.add_subparsers(dest="kind", required=True)

    gs = gsub.add_parser("iterated-group", help="x1 * ... * xk in a group")
    gs.add_argument("--group", required=True)
    gs.add_argument("--arity", type=int, required=True)
    gs.add_argument("-o", "--output")

    gs = gsub.add_parser("scrambled", help="iterated group under a seeded isotopy")
    gs.add_argument("--group", required=True)
    gs.add_argument("--arity", type=int, required=True)
    gs.add_argument("--seed", type=int, required=True)
    gs.add_argument("-o", "--output")

    gs = gsub.add_parser("twisted", help="attach two group blocks by a bijection")
    gs.add_argument("--group1", required=True)
    gs.add_argument("--group2", required=True)
    gs.add_argument("--bijection", required=True, metavar="B0,..,B(g-1)")
    gs.add_argument("--position", type=int, required=True)
    gs.add_argument("-o", "--output")

    gs = gsub.add_parser("nongroup-binary", help="square failing the quadrangle criterion")
    gs.add_argument("--order", type=int, required=True)
    gs.add_argument("--seed", type=int, required=True)
    gs.add_argument("--max-candidates", type=int, default=10**6)
    gs.add_argument("-o", "--output")

    gs = gsub.add_parser("irreducible", help="search a chordless-graph table")
    gs.add_argument("--arity", type=int, required=True)
    gs.add_argument("--order", type=int, required=True)
    gs.add_argument("--seed", type=int, required=True)
    gs.add_argument("--max-candidates", type=int, default=10**6)
    gs.add_argument("-o", "--output")

    gs = gsub.add_parser("random", help="seeded random Latin hypercube")
    gs.add_argument("--arity", type=int, required=True)
    gs.add_argument("--order", type=int, required=True)
    gs.add_argument("--seed", type=int, required=True)
    gs.add_argument("-o", "--output")

    return p


def _cmd_validate(args) -> int:
    q = _load(args.file)
    if args.json:
        _jprint({"valid": True, "arity": q.arity, "order": q.order})
    else:
        print(f"valid: arity={q.arity} order={q.order}")
    return 0


def _cmd_eval(args) -> int:
    q = _load(args.file)
    point = _int_list(args.args)
    value = q.evaluate(point)
    if args.json:
        _jprint({"args": list(point), "value": value})
    else:
        print(value)
    return 0


def _cmd_factor_graph(args) -> int:
    graph = factorization_graph(_load(args.file))
    if args.dot:
        sys.stdout.write(graph.to_dot())
    elif args.json:
        _jprint(
            {
                "node_count": graph.node_count,
                "chords": [list(c) for c in graph.sorted_chords()],
                "complete": graph.is_complete(),
            }
        )
    else:
        print(graph.chord_line())
    return 0


def _cmd_decompose(args) -> int:
    tree = decompose_quasigroup(_load(args.file))
    if args.json:
        _jprint(tree.to_json())
    elif args.dot:
        sys.stdout.write(tree.to_dot())
    else:
        for idx, comp in enumerate(tree.components):
            nodes = ",".join(f"v{n}" for n in comp.block.nodes)
            if comp.witness is not None:
                name = catalog_name(comp.witness.group) or "group"
                detail = f"group {name}"
            else:
                detail = f"irreducible arity {comp.quasigroup.arity}"
            root = " (root)" if idx == tree.root else ""
            print(f"block {idx}: {comp.block.kind} {{{nodes}}} {detail}{root}")
        for a, b, (u, v) in tree.attachments:
            print(f"attachment: block {a} -- block {b} on {{v{u},v{v}}}")
    return 0


def _cmd_recognize(args) -> int:
    q = _load(args.file)
    witness = is_iterated_group_isotope(q)
    if witness is None:
        graph = factorization_graph(q)
        if args.json:
            _jprint(
                {
                    "iterated_group_isotope": False,
                    "chords": [list(c) for c in graph.sorted_chords()],
                }
            )
        else:
            print("not an iterated group isotope")
            print(graph.chord_line())
        return 0
    if args.json:
        payload = witness.to_json()
        payload["iterated_group_isotope"] = True
        _jprint(payload)
    else:
        name = catalog_name(witness.group) or f"order-{witness.group.order} group"
        print(f"iterated group isotope: {name}")
        for i, mp in enumerate(witness.isotopy.maps):
            print(f"alpha{i}: {' '.join(str(v) for v in mp)}")
    return 0


def _cmd_compose(args) -> int:
    outer = _load(args.outer)
    inner = _load(args.inner)
    result = compose(outer, inner, args.at)
    _emit(write_mqt(result), args.output)
    return 0


def _cmd_design(args) -> int:
    if args.from_td:
        from .io import read_td

        with open(args.file, "r", encoding="utf-8") as fh:
            design = read_td(fh.read())
        ok, counter = verify_design(design, design.strength, design.index)
        if not ok:
            raise PreconditionFailed(f"design verification failed at {counter}")
        if args.json:
            _jprint(
                {
                    "classes": design.class_count,
                    "points_per_class": design.points_per_class,
                    "blocks": len(design.blocks),
                    "strength": design.strength,
                    "index": design.index,
                    "verified": True,
                }
            )
        else:
            print(
                f"design: {design.class_count} classes, "
                f"{len(design.blocks)} blocks, strength {design.strength}, "
                f"index {design.index}, verified"
            )
        return 0
    q = _load(args.file)
    design = to_design(q)
    ok, counter = verify_design(design, design.strength, design.index)
    if not ok:
        raise PreconditionFailed(f"design verification failed at {counter}")
    comment = (
        f"from mq arity={q.arity} order={q.order}; verified strength="
        f"{design.strength} index={design.index}"
    )
    if args.json:
        _jprint(
            {
                "classes": design.class_count,
                "points_per_class": design.points_per_class,
                "blocks": len(design.blocks),
                "strength": design.strength,
                "index": design.index,
                "verified": True,
            }
        )
        return 0
    _emit(write_td(design, (comment,)), args.output)
    if args.output is not None:
        print(
            f"design: {design.class_count} classes, {len(design.blocks)} "
            f"blocks, strength {design.strength}, index {design.index}, "
            f"verified"
        )
    return 0


def _cmd_enumerate(args) -> int:
    from .core import enumerate_all

    count = 0
    for q in enumerate_all(args.arity, args.order, guard=args.guard):
        count += 1
        if not args.count:
            sys.stdout.write(write_mqt(q))
            sys.stdout.write("\n")
        if args.limit is not None and count >= args.limit:
            break
    if args.count:
        print(count)
    return 0


def _cmd_generate(args) -> int:
    if args.kind == "iterated-group":
        q = iterated_group(_group_arg(args.group), args.arity)
        note = f"generator: iterated-group group={args.group} arity={args.arity}"
    elif args.kind == "scrambled":
        base = iterated_group(_group_arg(args.group), args.arity)
        iso = random_isotopy(base.order, base.arity, args.seed)
        q = base.apply_isotopy(iso)
        note = (
            f"generator: scrambled group={args.group} arity={args.arity} "
            f"seed={args.seed}"
        )
    elif args.kind == "twisted":
        q = twisted_composition(
            _group_arg(args.group1),
            _group_arg(args.group2),
            _int_list(args.bijection),
            args.position,
        )
        note = (
            f"generator: twisted group1={args.group1} group2={args.group2} "
            f"bijection={','.join(str(v) for v in _int_list(args.bijection))} "
            f"position={args.position}"
        )
    elif args.kind == "nongroup-binary":
        q = search_nongroup_binary(
            args.order,
            SearchBudget(max_candidates=args.max_candidates, seed=args.seed),
        )
        note = (
            f"generator: nongroup-binary order={args.order} seed={args.seed}"
        )
    elif args.kind == "irreducible":
        q = search_irreducible(
            args.arity,
            args.order,
            SearchBudget(max_candidates=args.max_candidates, seed=args.seed),
        )
        note = (
            f"generator: irreducible arity={args.arity} order={args.order} "
            f"seed={args.seed}"
        )
    else:  # random
        q = random_quasigroup(args.arity, args.order, args.seed)
        note = (
            f"generator: random arity={args.arity} order={args.order} "
            f"seed={args.seed}"
        )
    _emit(write_mqt(q, (note,)), args.output)
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "eval": _cmd_eval,
    "factor-graph": _cmd_factor_graph,
    "decompose": _cmd_decompose,
    "recognize": _cmd_recognize,
    "compose": _cmd_compose,
    "design": _cmd_design,
    "enumerate": _cmd_enumerate,
    "generate": _cmd_generate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except MultaryError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 1
    except OSError as exc:
        sys.stderr.write(
            json.dumps(
                {"error": "IOError", "message": str(exc)}, sort_keys=True
            )
            + "\n"
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
