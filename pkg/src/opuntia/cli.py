"""Command-line front end.

    opuntia validate --input amalgam.json
    opuntia query wordeq "a a" "b b b" --input amalgam.json
    opuntia query maxgroup "a" --input amalgam.json --dot out/
    opuntia batch --input manifest.json --report report.json

Exit codes: 0 ok, 1 expectation mismatch, 2 input error, 3 budget
exceeded.  Output is deterministic for fixed input and budgets; timing
is reported only under --timing so that default output stays
byte-identical across runs.
"""

import argparse
import json
import os
import sys
import time

from .errors import (OpuntiaError, InvalidDocument, BudgetExceeded,
                     DEFAULT_MAX_EDGES, DEFAULT_MAX_LOBES)
from .graphs import schutz_graph, graph_json, to_dot
from .semigroups import green, is_combinatorial
from .amalgams import (core, expand_to_depth, word_equal,
                       decomposition_json, decomposition_dot)
from .hosts import hosts, parasites, host_analysis_json, finiteness_report
from .bass_serre import (maximal_subgroup_presentation,
                         maximal_subgroup_json, quotient_graph, gog_dot)
from .hosts import host_region
from .documents import parse_amalgam, parse_semigroup, load_amalgam

OK, MISMATCH, INPUT_ERROR, BUDGET = 0, 1, 2, 3

_SEVERITY = {OK: 0, MISMATCH: 1, BUDGET: 2, INPUT_ERROR: 3}


def _worst(codes):
    return max(codes, key=_SEVERITY.__getitem__, default=OK)


# -- query execution -----------------------------------------------------------


class _Budgets:
    def __init__(self, args):
        self.max_edges = args.max_edges
        self.max_lobes = args.max_lobes
        self.depth = args.depth


def _factor(a, which):
    table = {"s1": a.s1, "s2": a.s2, "u": a.u}
    if which not in table:
        raise InvalidDocument(f"unknown factor {which!r}; use s1, s2 or u")
    return table[which]


def _need_args(sub, args, n):
    if len(args) != n:
        raise InvalidDocument(
            f"{sub} takes {n} argument{'s' if n != 1 else ''}, "
            f"got {len(args)}")


def _dot_out(dot_dir, name, text, payload):
    if dot_dir is None:
        payload.setdefault("dot", {})[name] = text
        return
    os.makedirs(dot_dir, exist_ok=True)
    path = os.path.join(dot_dir, name + ".dot")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    payload.setdefault("dotFiles", []).append(path)


def run_query(a, sub, args, budgets, dot_dir=None):
    """Dispatch one query subcommand; returns the payload dict."""
    if sub == "sgraph":
        _need_args(sub, args, 2)
        S = _factor(a, args[0])
        t = schutz_graph(S, S.parse_word(args[1]))
        return {"factor": args[0], "word": args[1],
                "initial": t.initial, "final": t.final,
                "graph": graph_json(t.graph)}
    if sub == "core":
        _need_args(sub, args, 1)
        _, d = core(a, a.parse_word(args[0]), budgets.max_edges)
        return {"word": args[0], "decomposition": decomposition_json(d)}
    if sub == "expand":
        if len(args) == 2:
            k = int(args[1])
        else:
            _need_args(sub, args, 1)
            k = budgets.depth
        _, d = core(a, a.parse_word(args[0]), budgets.max_edges)
        d = expand_to_depth(d, a, k, budgets.max_lobes)
        return {"word": args[0], "depth": k,
                "decomposition": decomposition_json(d)}
    if sub == "wordeq":
        _need_args(sub, args, 2)
        eq = word_equal(a, a.parse_word(args[0]), a.parse_word(args[1]),
                        budgets.max_edges, budgets.max_lobes)
        return {"words": [args[0], args[1]], "equal": eq}
    if sub == "hosts":
        _need_args(sub, args, 1)
        _, d = core(a, a.parse_word(args[0]), budgets.max_edges)
        h = hosts(d, a)
        payload = host_analysis_json(h, a)
        payload["word"] = args[0]
        payload["parasites"] = sorted(parasites(d, a))
        return payload
    if sub == "classify":
        _need_args(sub, args, 1)
        payload = finiteness_report(a, args[0], budgets.max_edges,
                                    budgets.max_lobes)
        payload["word"] = args[0]
        return payload
    if sub == "maxgroup":
        _need_args(sub, args, 1)
        res = maximal_subgroup_presentation(a, args[0], budgets.max_edges,
                                            budgets.max_lobes)
        payload = maximal_subgroup_json(res)
        if "gog" in res:
            _dot_out(dot_dir, "gog", gog_dot(res["gog"]), payload)
        return payload
    if sub == "export-dot":
        if not args:
            raise InvalidDocument(
                "export-dot needs an object: sgraph, core or gog")
        obj, rest = args[0], args[1:]
        payload = {"object": obj}
        if obj == "sgraph":
            _need_args("export-dot sgraph", rest, 2)
            S = _factor(a, rest[0])
            t = schutz_graph(S, S.parse_word(rest[1]))
            _dot_out(dot_dir, "sgraph",
                     to_dot(t.graph, t.initial, t.final, "SGraph"), payload)
        elif obj == "core":
            _need_args("export-dot core", rest, 1)
            _, d = core(a, a.parse_word(rest[0]), budgets.max_edges)
            _dot_out(dot_dir, "core", decomposition_dot(d), payload)
        elif obj == "gog":
            _need_args("export-dot gog", rest, 1)
            region = host_region(a, a.parse_word(rest[0]),
                                 budgets.max_edges, budgets.max_lobes)
            gog = quotient_graph(a, region)
            _dot_out(dot_dir, "gog", gog_dot(gog), payload)
        else:
            raise InvalidDocument(f"unknown export-dot object {obj!r}")
        return payload
    raise InvalidDocument(f"unknown query subcommand {sub!r}")


def _validate_payload(a, doc_name=None):
    def side(S):
        g = green(S)
        return {
            "elements": S.n,
            "idempotents": len(S.idempotents),
            "generators": [S.names[x] for x in S.generators],
            "dClasses": len(g.d_classes),
            "combinatorial": is_combinatorial(S),
        }

    return {
        "status": "valid",
        "name": a.name or doc_name,
        "s1": side(a.s1),
        "s2": side(a.s2),
        "u": side(a.u),
        "phi1": "embedding ok",
        "phi2": "embedding ok",
        "alphabet": [a.alphabet.letter_name(2 * i)
                     for i in range(len(a.alphabet))],
    }


# -- result wrapping -------------------------------------------------------------


def _execute(command_echo, fn, timing=False):
    """Run one command body, capturing domain errors as structured
    diagnostics; returns (result dict, exit code)."""
    started = time.perf_counter()
    result = {"command": command_echo, "status": "ok", "payload": None,
              "diagnostics": {}}
    code = OK
    try:
        result["payload"] = fn()
    except BudgetExceeded as exc:
        result["status"] = "budget-exceeded"
        result["diagnostics"] = {"type": type(exc).__name__,
                                 "message": str(exc)}
        code = BUDGET
    except OpuntiaError as exc:
        result["status"] = "error"
        result["diagnostics"] = {"type": type(exc).__name__,
                                 "message": str(exc)}
        code = INPUT_ERROR
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        result["status"] = "error"
        result["diagnostics"] = {"type": type(exc).__name__,
                                 "message": str(exc)}
        code = INPUT_ERROR
    if timing:
        result["timing"] = round(time.perf_counter() - started, 6)
    return result, code


def _emit(result, as_text, out=None):
    out = out or sys.stdout
    if not as_text:
        json.dump(result, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    out.write(f"command: {result['command']}\n")
    out.write(f"status: {result['status']}\n")
    for key, value in sorted((result.get("diagnostics") or {}).items()):
        out.write(f"{key}: {value}\n")
    payload = result.get("payload")
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            out.write(f"{key}: {value}\n")
    elif payload is not None:
        out.write(f"{payload}\n")
    if "timing" in result:
        out.write(f"timing: {result['timing']}\n")


# -- batch -------------------------------------------------------------------------


def _match(expect, payload):
    if not isinstance(expect, dict) or not isinstance(payload, dict):
        return expect == payload
    return all(key in payload and payload[key] == value
               for key, value in expect.items())


def run_batch(manifest, budgets, base_dir=".", timing=False):
    """Run every query in the manifest; returns (report, exit code)."""
    documents = manifest.get("documents", {})
    queries = manifest.get("queries")
    if queries is None or not isinstance(documents, dict) \
            or not isinstance(queries, list):
        raise InvalidDocument(
            "manifest needs a 'documents' object and a 'queries' list")
    cache = {}

    def doc(name):
        if name not in cache:
            if name not in documents:
                raise InvalidDocument(f"manifest references unknown "
                                      f"document {name!r}")
            spec = documents[name]
            if isinstance(spec, str):
                cache[name] = load_amalgam(os.path.join(base_dir, spec))
            else:
                cache[name] = parse_amalgam(spec)
        return cache[name]

    items = []
    codes = [OK]
    for idx, q in enumerate(queries):
        echo = f"[{idx}] {q.get('doc')} {q.get('command')} {q.get('args')}"

        def body(q=q):
            a = doc(q.get("doc"))
            return run_query(a, q.get("command"), list(q.get("args", [])),
                             budgets)

        result, code = _execute(echo, body, timing=timing)
        item = {"index": idx, "doc": q.get("doc"),
                "command": q.get("command"), "args": q.get("args", []),
                "status": result["status"], "payload": result["payload"],
                "diagnostics": result["diagnostics"]}
        if timing and "timing" in result:
            item["timing"] = result["timing"]
        if "expect" in q:
            item["expect"] = q["expect"]
            item["match"] = (result["status"] == "ok"
                             and _match(q["expect"], result["payload"]))
            if not item["match"] and code == OK:
                code = MISMATCH
        items.append(item)
        codes.append(code)

    report = {
        "items": items,
        "summary": {
            "total": len(items),
            "ok": sum(1 for it in items if it["status"] == "ok"
                      and it.get("match", True)),
            "mismatches": sum(1 for it in items if it.get("match") is False),
            "errors": sum(1 for it in items if it["status"] != "ok"),
        },
    }
    return report, _worst(codes)


# -- argument parsing ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True,
                        help="JSON document (amalgam, or manifest for batch)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_text", action="store_false",
                     default=False, help="JSON output (default)")
    fmt.add_argument("--text", dest="as_text", action="store_true",
                     help="line-oriented text output")
    common.add_argument("--dot", metavar="DIR", default=None,
                        help="directory for DOT exports")
    common.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    common.add_argument("--max-lobes", type=int, default=DEFAULT_MAX_LOBES)
    common.add_argument("--depth", type=int, default=1,
                        help="default expansion depth for `expand`")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timing in results")

    p = argparse.ArgumentParser(
        prog="opuntia",
        description="Schützenberger automata and maximal subgroups of "
                    "amalgams of finite inverse semigroups.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common],
                   help="validate an amalgam document")
    q = sub.add_parser("query", parents=[common],
                       help="run one query against an amalgam document")
    q.add_argument("subcommand",
                   help="sgraph | core | expand | wordeq | hosts | "
                        "classify | maxgroup | export-dot")
    q.add_argument("args", nargs="*")
    b = sub.add_parser("batch", parents=[common],
                       help="run a manifest of queries")
    b.add_argument("--report", metavar="FILE", default=None,
                   help="write the JSON report here instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    budgets = _Budgets(args)

    if args.command == "batch":
        def body():
            try:
                with open(args.input, "r", encoding="utf-8") as fh:
                    manifest = json.load(fh)
            except OSError as exc:
                raise InvalidDocument(f"cannot read {args.input}: {exc}")
            except json.JSONDecodeError as exc:
                raise InvalidDocument(f"not valid JSON: {exc}")
            return run_batch(manifest, budgets,
                             base_dir=os.path.dirname(args.input) or ".",
                             timing=args.timing)

        result, code = _execute(f"batch {args.input}", body,
                                timing=args.timing)
        if result["status"] == "ok":
            report, code = result["payload"]
            result["payload"] = report
        if args.report and result["payload"] is not None:
            with open(args.report, "w", encoding="utf-8") as fh:
                json.dump(result["payload"], fh, indent=2, sort_keys=True)
                fh.write("\n")
            result["payload"] = {"report": args.report,
                                 "summary": result["payload"]["summary"]}
        _emit(result, args.as_text)
        return code

    def body():
        a = load_amalgam(args.input)
        if args.command == "validate":
            return _validate_payload(a)
        return run_query(a, args.subcommand, args.args, budgets,
                         dot_dir=args.dot)

    echo = args.command
    if args.command == "query":
        echo = f"query {args.subcommand} {' '.join(args.args)}".rstrip()
    result, code = _execute(echo, body, timing=args.timing)
    _emit(result, args.as_text)
    return code


if __name__ == "__main__":
    sys.exit(main())
