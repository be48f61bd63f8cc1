"""Command-line interface.

Exit codes: 0 success / Sat / verified, 1 Unsat / refuted, 2 usage error,
3 violated precondition (or an exhausted search budget).  Every command
writes one JSON document to stdout, except ``export --dot``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import choose5, discharging, gadgets, generators, girth5
from .core import from_document, make_lists, to_document, to_dot, verify_coloring
from .errors import (
    BudgetExceeded,
    Disconnected,
    GirthTooSmall,
    NotPlanar,
    PreconditionViolated,
    SignedGraphError,
    VerificationFailed,
)
from .planar import NotPlanarCertificate, embed, make_embedding, has_circuit_of_length, trace_faces
from .solver import solve

OK, REFUTED, USAGE, PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=repr)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def _read(path, stdin):
    text = stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"input is not JSON: {e}") from None
    try:
        g, lists, rotation = from_document(doc)
    except (KeyError, TypeError) as e:
        raise UsageError(f"input is not a graph document: missing {e}") from None
    return doc, g, lists, rotation


def _need_lists(lists):
    if lists is None:
        raise PreconditionViolated("lists", "the input document has no lists")
    return lists


def _embedding(g, rotation):
    if rotation is not None:
        return make_embedding(g, rotation)
    emb = embed(g)
    if isinstance(emb, NotPlanarCertificate):
        raise NotPlanar(f"Kuratowski subgraph with {len(emb.edges)} edges")
    return emb


# -- commands ---------------------------------------------------------------------


def cmd_solve(a, stdin, out):
    _, g, lists, _ = _read(a.input, stdin)
    lists = _need_lists(lists)
    r = solve(g, lists, budget=a.budget)
    doc = {"status": "SAT" if r.sat else "UNSAT", "nodes": r.nodes}
    if r.sat:
        doc["coloring"] = {str(v): r.coloring[v] for v in g.vertices}
    _emit(doc, out)
    return OK if r.sat else REFUTED


def _coloring_report(a, g, c, lists, claim, out):
    doc = {"status": "colored", "paper_claim": claim, "coloring": {str(v): c[v] for v in g.vertices}}
    code = OK
    if a.check:
        bad = verify_coloring(g, c, lists)
        doc["valid"] = not bad
        doc["violations"] = [{"kind": x.kind, "where": list(x.where)} for x in bad]
        code = OK if not bad else REFUTED
    _emit(doc, out)
    return code


def cmd_color5(a, stdin, out):
    _, g, lists, _ = _read(a.input, stdin)
    lists = _need_lists(lists)
    c = choose5.color_planar_5lists(g, lists)
    return _coloring_report(a, g, c, lists, "signed planar graphs are 5-choosable", out)


def cmd_color3(a, stdin, out):
    if not a.girth5:
        raise UsageError("color3: only --girth5 is supported")
    _, g, lists, _ = _read(a.input, stdin)
    lists = _need_lists(lists)
    c = girth5.color_girth5_3lists(g, lists)
    return _coloring_report(a, g, c, lists, "signed planar graphs of girth at least 5 are 3-choosable", out)


GADGETS = {
    "g3": gadgets.build_G3,
    "h": gadgets.build_H,
    "thm4": gadgets.build_theorem4_instance,
    "t": gadgets.build_T,
    "thm10": gadgets.build_theorem10_instance,
}


def cmd_gadget(a, stdin, out):
    inst = GADGETS[a.name]()
    doc = to_document(inst.graph, inst.lists or None, inst.embedding.rotation)
    doc["name"] = a.name
    doc["roles"] = {str(v): r for v, r in inst.roles.items()}
    if inst.special_faces:
        doc["special_faces"] = [list(f) for f in inst.special_faces]
    _emit(doc, out)
    return OK


def cmd_verify(a, stdin, out):
    if a.thm == "4":
        report = gadgets.verify_theorem4(seed=a.seed, strict=False)
    else:
        report = gadgets.verify_theorem10(seed=a.seed, strict=False)
    _emit(report, out)
    return OK if report["status"] == "pass" else REFUTED


def cmd_discharge(a, stdin, out):
    if a.what == "audit":
        _, g, _, rotation = _read(a.input, stdin)
        emb = _embedding(g, rotation)
        report = discharging.audit_minimal_counterexample(emb)
        report["ledger"] = discharging.apply_rules(emb).to_document()
        _emit(report, out)
        return OK
    if a.what == "claim2":
        if a.exhaustive and a.samples is not None:
            raise UsageError("discharge claim2: choose --exhaustive or --samples, not both")
        if a.samples is not None:
            mode = discharging.Randomized(seed=a.seed, samples=a.samples)
        else:
            mode = discharging.ExhaustiveSmall()
        report = discharging.check_claim2_reducible(mode)
    else:
        samples = 100_000 if a.samples is None else a.samples
        report = discharging.check_claim3_reducible(seed=a.seed, samples=samples)
    _emit(report, out)
    return OK if report["status"] == "pass" else REFUTED


def cmd_embed(a, stdin, out):
    _, g, _, _ = _read(a.input, stdin)
    emb = embed(g)
    if isinstance(emb, NotPlanarCertificate):
        _emit({"planar": False, "kuratowski_edges": [list(e) for e in emb.edges]}, out)
        return REFUTED
    doc = to_document(g, rotation=emb.rotation)
    doc["planar"] = True
    doc["faces"] = [list(f) for f in trace_faces(emb)]
    doc["outer_face"] = list(emb.outer_face() or [])
    _emit(doc, out)
    return OK


def cmd_export(a, stdin, out):
    if not a.dot:
        raise UsageError("export: only --dot is supported")
    _, g, _, _ = _read(a.input, stdin)
    out.write(to_dot(g))
    return OK


def cmd_random(a, stdin, out):
    rng = generators.make_rng(a.seed)
    lengths = tuple(a.k or (4,))
    for _ in range(100):
        if a.cls == "planar":
            g = generators.random_planar(a.n, rng, p_negative=a.p_negative)
        elif a.cls == "girth5":
            g = generators.random_girth5(a.n, rng, p_negative=a.p_negative)
        else:
            g = generators.random_avoiding(a.n, rng, lengths, p_negative=a.p_negative)
        checks = (3, 4) if a.cls == "girth5" else (lengths if a.cls == "no-k-circuit" else ())
        if all(has_circuit_of_length(g, k) is None for k in checks if k <= g.n):
            break
    else:
        raise PreconditionViolated("class", "no graph of the requested class after 100 draws")
    lists = None
    if a.lists:
        U = range(-a.universe, a.universe + 1)
        lists = make_lists(g, generators.random_lists(g, a.lists, U, rng))
    doc = to_document(g, lists)
    doc["class"] = a.cls
    doc["seed"] = a.seed
    _emit(doc, out)
    return OK


def build_parser():
    p = _Parser(prog="sigchoose", description="List coloring of signed planar graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", help="decide L-colorability exactly")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("color5", help="color a planar graph from lists of size >= 5")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--check", action="store_true", help="re-verify the coloring and list violations")
    s.set_defaults(func=cmd_color5)

    s = sub.add_parser("color3", help="color a planar graph of girth >= 5 from lists of size >= 3")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--girth5", action="store_true")
    s.add_argument("--check", action="store_true", help="re-verify the coloring and list violations")
    s.set_defaults(func=cmd_color3)

    s = sub.add_parser("gadget", help="emit a construction as a graph document")
    s.add_argument("--name", required=True, choices=sorted(GADGETS))
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("verify", help="verify a non-choosability construction")
    s.add_argument("--thm", required=True, choices=["4", "10"])
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("discharge", help="charges, audit and reducible configurations")
    s.add_argument("what", choices=["audit", "claim2", "claim3"])
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=42)
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("embed", help="planarity test and rotation system")
    s.add_argument("input", nargs="?", default="-")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("export", help="render a graph document")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("random", help="random graph document")
    s.add_argument("--class", dest="cls", required=True, choices=["planar", "no-k-circuit", "girth5"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k", type=int, action="append", help="forbidden circuit length (repeatable)")
    s.add_argument("--lists", type=int, default=0, help="attach random lists of this size")
    s.add_argument("--universe", type=int, default=7, help="list colors come from -U..U")
    s.add_argument("--p-negative", type=float, default=0.5)
    s.set_defaults(func=cmd_random)
    return p


def run(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr

    def fail(code, error, message, **extra):
        stderr.write(json.dumps({"error": error, "message": message, **extra}) + "\n")
        return code

    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 0:
            raise UsageError("--n must be non-negative")
        return args.func(args, stdin, stdout)
    except UsageError as e:
        return fail(USAGE, "usage", str(e))
    except OSError as e:
        return fail(USAGE, "usage", str(e))
    except PreconditionViolated as e:
        return fail(PRECONDITION, "precondition", str(e), condition=e.condition)
    except (NotPlanar, GirthTooSmall, Disconnected) as e:
        return fail(PRECONDITION, "precondition", str(e), condition=type(e).__name__)
    except BudgetExceeded as e:
        return fail(PRECONDITION, "budget", str(e))
    except VerificationFailed as e:
        return fail(REFUTED, "verification", str(e), stage=e.stage)
    except SignedGraphError as e:
        return fail(PRECONDITION, "invalid-input", str(e), kind=type(e).__name__)
    except SystemExit as e:  # --help
        return OK if e.code in (0, None) else USAGE


def main():
    sys.exit(run())
