"""Command-line interface: ``quiver3 <subcommand> [quiver] [options]``."""
from __future__ import annotations

import argparse
import json
import random
import sys

from .classify import classify, discreteness, minimality_note
from .errors import DomainError
from .explore import explore, is_mutation_finite, table1, to_dot
from .generate import random_quiver
from .geometry import Kind, check_realization, isometry_info, mutate_realization, realize
from .quiver import (
    Quiver,
    canonical_form,
    markov_constant,
    mutate_word,
    parse_quiver,
    scalar_to_json,
    sink_source_class,
    triple_text,
)
from .render import render
from .search import find_acyclic

FORMATS = {
    "mutate": ("json", "text"),
    "classify": ("json", "text"),
    "invariant": ("json", "text"),
    "realize": ("json", "svg", "text"),
    "trace": ("json", "text"),
    "explore": ("json", "dot", "text"),
    "finite": ("json", "text"),
    "table1": ("json", "text"),
    "find-acyclic": ("json", "text"),
    "render": ("svg",),
    "discreteness": ("json", "text"),
}

EXACT_ONLY = ("finite", "discreteness")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _table(rows) -> str:
    """Two aligned columns."""
    rows = [(str(k), "" if v is None else (v if isinstance(v, str) else _dump(v))) for k, v in rows]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _parse_word(tokens) -> list:
    word = []
    for tok in tokens:
        for part in str(tok).replace(",", " ").split():
            try:
                k = int(part)
            except ValueError:
                raise DomainError(f"mutation vertex must be 1, 2 or 3, got {part!r}", code="bad_vertex")
            if k not in (1, 2, 3):
                raise DomainError(f"mutation vertex must be 1, 2 or 3, got {k}", code="bad_vertex")
            word.append(k)
    return word


def _find_quiver(obj, exact: bool, eps: float):
    """Locate a quiver inside any JSON object this CLI emits."""
    if isinstance(obj, list):
        for item in reversed(obj):
            found = _find_quiver(item, exact, eps)
            if found is not None:
                return found
        return None
    if not isinstance(obj, dict):
        return None
    if "b" in obj:
        return Quiver.from_json(obj, exact=exact, eps=eps)
    for key in ("input", "quiver", "seed"):
        value = obj.get(key)
        if isinstance(value, str):
            return parse_quiver(value, exact=exact, eps=eps)
        if isinstance(value, dict):
            found = _find_quiver(value, exact, eps)
            if found is not None:
                return found
    for key in ("steps",):
        if key in obj:
            return _find_quiver(obj[key][:1], exact, eps)
    return None


def _load_quiver(args) -> Quiver:
    exact, eps = args.exact, args.eps
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            return parse_quiver(text.strip(), exact=exact, eps=eps)
        Q = _find_quiver(data, exact, eps)
        if Q is None:
            raise DomainError("no quiver found in the input file", code="parse_error")
        return Q
    if args.quiver is not None:
        return parse_quiver(args.quiver, exact=exact, eps=eps)
    if args.seed is not None:
        Q, _, _ = random_quiver(random.Random(args.seed), exact=exact)
        return Q
    raise UsageError("a quiver, --input or --seed is required")


# ------------------------------------------------------------- subcommands


def cmd_mutate(args, Q):
    word = _parse_word(args.word)
    R = mutate_word(Q, word)
    if args.format == "text":
        return triple_text(R)
    return _dump({"input": Q.text(), "word": " ".join(map(str, word)), "quiver": R.text(),
                  "triple": triple_text(R), "b": R.to_json()["b"]})


def cmd_classify(args, Q):
    report = classify(Q)
    data = report.to_json()
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def cmd_invariant(args, Q):
    C = markov_constant(Q)
    cls = sink_source_class(Q)
    data = {
        "quiver": Q.text(),
        "C": scalar_to_json(C),
        "cyclic": Q.is_cyclic(),
        "weights": [scalar_to_json(x) for x in Q.weights()],
        "sink_source_class": cls.text(),
        "canonical_form": triple_text(canonical_form(Q)),
    }
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def cmd_realize(args, Q):
    R = realize(Q)
    if args.format == "svg":
        return render(R).rstrip("\n")
    data = R.to_json()
    data["space"] = R.space.name
    data["quiver"] = Q.text()
    problems = check_realization(R, Q)
    data["conditions_hold"] = not problems
    if R.kind is Kind.ROTATION:
        data["isometry"] = isometry_info(R).to_json()
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def _trace_steps(Q: Quiver, word):
    R = realize(Q)
    steps = []
    cur = Q
    for i in range(len(word) + 1):
        problems = check_realization(R, cur)
        steps.append({
            "step": i,
            "vertex": word[i - 1] if i else None,
            "quiver": cur.text(),
            "C": scalar_to_json(markov_constant(cur)),
            "gram": [[scalar_to_json(x) for x in row] for row in R.gram],
            "conditions_hold": not problems,
            "violations": problems,
        })
        if i < len(word):
            R = mutate_realization(R, cur, word[i])
            cur = cur.mutate(word[i])
    return steps, R


def cmd_trace(args, Q):
    word = _parse_word(args.word)
    steps, R = _trace_steps(Q, word)
    if args.format == "text":
        lines = [f"{s['step']:>3}  {str(s['vertex'] or '-'):>2}  {s['quiver']}  C={s['C']}  "
                 f"{'ok' if s['conditions_hold'] else 'VIOLATION'}" for s in steps]
        return "\n".join(lines)
    return _dump({"input": Q.text(), "kind": R.kind.value, "space": R.space.name,
                  "word": " ".join(map(str, word)), "steps": steps})


def cmd_explore(args, Q):
    G = explore(Q, max_nodes=args.max_nodes, max_weight=args.max_weight)
    if args.format == "dot":
        return to_dot(G).rstrip("\n")
    data = G.to_json()
    if args.format == "text":
        lines = [f"finiteness  {G.finiteness}",
                 f"nodes       {len(G.nodes)}",
                 f"classes     {len(G.sink_source_classes())}"]
        lines += [f"  {n['id']:>4}  {n['quiver']}" for n in data["nodes"]]
        return "\n".join(lines)
    return _dump(data)


def cmd_finite(args, Q):
    result = is_mutation_finite(Q, max_nodes=args.max_nodes, max_weight=args.max_weight)
    data = result.to_json()
    data["seed"] = Q.text()
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def cmd_table1(args, Q):
    data = table1(Q, max_nodes=args.max_nodes).to_json()
    data["seed"] = Q.text()
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def cmd_find_acyclic(args, Q):
    result = find_acyclic(Q, depth_cap=args.depth)
    data = result.to_json()
    data["triple"] = triple_text(result.quiver) if result.quiver is not None else None
    data["input"] = Q.text()
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


def cmd_render(args, Q):
    word = _parse_word(args.word)
    R = realize(Q)
    frames = [R]
    cur = Q
    for k in word:
        R = mutate_realization(R, cur, k)
        cur = cur.mutate(k)
        frames.append(R)
    return render(frames).rstrip("\n")


def cmd_discreteness(args, Q):
    report = discreteness(Q)
    data = report.to_json()
    data["quiver"] = Q.text()
    verdict = classify(Q)
    if verdict.verdict == "MutationCyclic":
        data["minimal_hint"] = minimality_note(Q, verdict)
    if args.format == "text":
        return _table(data.items())
    return _dump(data)


COMMANDS = {
    "mutate": (cmd_mutate, "apply a mutation word", True),
    "classify": (cmd_classify, "mutation-class verdict, geometry and realization type", False),
    "invariant": (cmd_invariant, "Markov constant and class keys", False),
    "realize": (cmd_realize, "realization by reflections or pi-rotations", False),
    "trace": (cmd_trace, "replay a word with per-step quiver, Gram and C", True),
    "explore": (cmd_explore, "exchange graph of the mutation class", False),
    "finite": (cmd_finite, "finite mutation type with family tag", False),
    "table1": (cmd_table1, "acyclic and cyclic classes of a spherical finite class", False),
    "find-acyclic": (cmd_find_acyclic, "mutation word to an acyclic representative", False),
    "render": (cmd_render, "SVG of a realization and its mutations", True),
    "discreteness": (cmd_discreteness, "discreteness of the realizing group", False),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiver3", description="Rank-3 quivers, mutation classes and their geometric realizations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")
    for name, (_, help_text, takes_word) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("quiver", nargs="?", help="cyc(p,q,r), acyc(p,q,r), signed(b12,b23,b31) or quiver JSON")
        if takes_word:
            p.add_argument("word", nargs="*", help="mutation vertices, e.g. 1 2 3 or '1 2 3'")
        p.add_argument("--exact", action="store_true", help="exact cyclotomic scalars instead of floats")
        p.add_argument("--eps", type=float, default=1e-9, help="float comparison tolerance")
        p.add_argument("--max-nodes", type=int, default=10_000)
        p.add_argument("--max-weight", type=float, default=1e6)
        p.add_argument("--depth", type=int, default=25, help="BFS depth cap for find-acyclic")
        p.add_argument("--jobs", type=int, default=1, help="worker count (runs serially)")
        p.add_argument("--format", default=FORMATS[name][0], choices=FORMATS[name])
        p.add_argument("--input", help="file with a quiver or any JSON emitted by this tool")
        p.add_argument("--seed", type=int, help="generate a random test quiver from this seed")
        if name in EXACT_ONLY:
            p.add_argument("--allow-float", action="store_true",
                           help="accept float weights; verdicts then carry a tolerance caveat")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.eps <= 0 or args.jobs < 1:
        parser.error("--eps must be positive and --jobs at least 1")
    if args.command in EXACT_ONLY and not args.exact and not args.allow_float:
        parser.error(f"{args.command} gives definitive verdicts only with --exact "
                     "(pass --allow-float to accept float weights)")
    handler, _, takes_word = COMMANDS[args.command]
    if takes_word and (args.input or args.seed is not None) and args.quiver is not None:
        # with --input or --seed the first positional is already part of the word
        args.word = [args.quiver] + list(args.word)
        args.quiver = None
    try:
        Q = _load_quiver(args)
        out = handler(args, Q)
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(_dump(exc.to_json()))
        return 1
    except OSError as exc:
        print(_dump({"error": "io_error", "message": str(exc)}))
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
