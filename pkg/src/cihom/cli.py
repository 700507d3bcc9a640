"""Command-line interface: scripts, catalog examples, reports.

Exit codes: 0 all checks pass, 1 some expectation failed, 2 usage or parse
error, 3 an internal guardrail fired (oracle size caps and friends).
"""

from __future__ import annotations

import argparse
import os
import sys

from .catalog import UnknownExampleError, catalog_ids, run_example
from .constructions import InvalidSplitError, TorsionInputError, pushforward, quasi_lifting
from .dsl import ParseError, parse_session
from .homology import ext_profile, tor_profile
from .oracle import OracleTooLargeError
from .reports import emit_json, emit_text, make_document
from .resolutions import betti_table, detect_periodicity, module_complexity, resolve
from .rings import HypothesisMissingError
from .search import SearchConfig, counterexample_search
from .theorems import UnknownTheoremError, check_theorem


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cihom",
        description="Graded homological algebra over complete intersection "
                    "quotient rings: resolutions, Betti numbers, Tor/Ext, "
                    "pushforwards, statement checks.")
    ap.add_argument("--script", metavar="FILE", help="session script to execute")
    ap.add_argument("--example", metavar="ID",
                    help=f"run a catalog example ({', '.join(catalog_ids())})")
    ap.add_argument("--format", choices=["text", "json"],
                    default=os.environ.get("CIHOM_FORMAT", "text"),
                    help="output format (env CIHOM_FORMAT sets the default)")
    ap.add_argument("--field", default="f32003",
                    help="coefficient field tag: f32003 (default), fP, rational")
    ap.add_argument("--steps", type=int, default=None,
                    help="default resolution step bound")
    ap.add_argument("--tor-bound", type=int, default=6,
                    help="default Tor/Ext index bound")
    ap.add_argument("--degree-bound", type=int, default=8,
                    help="default graded Hilbert degree bound")
    ap.add_argument("--seed", type=int, default=1, help="default search seed")
    return ap


def _run_command(cmd: dict, session, defaults: dict) -> dict:
    kind = cmd["command"]
    tor_bound = cmd.get("bound", defaults["tor_bound"])
    degree_bound = cmd.get("degree_bound", defaults["degree_bound"])
    if kind == "example":
        data = run_example(cmd["id"], field_tag=defaults["field"],
                           bounds={"steps": defaults.get("steps"),
                                   "tor_bound": tor_bound,
                                   "degree_bound": degree_bound})
        return {"kind": "example", "title": cmd["id"], "data": data}
    if kind == "resolve":
        M = session.modules[cmd["module"]]
        steps = cmd.get("steps") or defaults.get("steps") or (
            2 * int(M.ring.dimension()) + 2 * M.ring.codim + 4)
        res = resolve(M, steps=steps, over=cmd.get("over", "quotient"))
        data = {"module": M.label, "ring": M.ring.label,
                "betti": betti_table(res).as_dict(),
                "terminated": res.terminated,
                "minimal": res.minimality_certificate()}
        if res.steps_computed() >= 6:
            data["periodicity"] = detect_periodicity(res)
        return {"kind": "resolve", "title": M.label, "data": data}
    if kind == "betti":
        M = session.modules[cmd["module"]]
        steps = cmd.get("steps") or defaults.get("steps") or (
            2 * int(M.ring.dimension()) + 2 * M.ring.codim + 4)
        res = resolve(M, steps=steps)
        cx = module_complexity(M, window=steps)
        return {"kind": "betti", "title": M.label,
                "data": {"module": M.label, "betti": betti_table(res).as_dict(),
                         "complexity": cx.as_dict()}}
    if kind == "tor":
        M = session.modules[cmd["module"]]
        N = session.modules[cmd["argument"]]
        prof = tor_profile(M, N, tor_bound, degree_bound,
                           side=cmd.get("side", "left"))
        return {"kind": "tor", "title": f"{M.label},{N.label}",
                "data": {"tor_profile": prof.as_dict()}}
    if kind == "ext":
        M = session.modules[cmd["module"]]
        N = session.modules[cmd["argument"]]
        entries = ext_profile(M, N, tor_bound, degree_bound)
        return {"kind": "ext", "title": f"{M.label},{N.label}",
                "data": {"module": M.label, "argument": N.label,
                         "entries": [e.as_dict() for e in entries]}}
    if kind == "profile":
        M = session.modules[cmd["module"]]
        prof = M.module_profile()
        bid = M.biduality_report()
        data = {"module": M.label, "ring": M.ring.label,
                "profile": prof.as_dict(),
                "torsion_free": bid.torsion_free, "reflexive": bid.reflexive,
                "nonfree_locus_codim": str(M.nonfree_locus_codim()),
                "maximal_cohen_macaulay": M.is_maximal_cohen_macaulay()}
        if M.ring.has_minimal_primes:
            data["rank_profile"] = M.rank_profile()
        return {"kind": "profile", "title": M.label, "data": data}
    if kind == "pushforward":
        M = session.modules[cmd["module"]]
        pf = pushforward(M)
        return {"kind": "pushforward", "title": M.label,
                "data": {**pf.as_dict(),
                         "pushforward_module": pf.M1.minimalize().describe()}}
    if kind == "quasilift":
        M = session.modules[cmd["module"]]
        ql = quasi_lifting(M, cmd["f"])
        return {"kind": "quasilift", "title": M.label, "data": ql.as_dict()}
    if kind == "check":
        mods = [session.modules[m] for m in cmd["modules"]]
        M = mods[0]
        N = mods[1] if len(mods) > 1 else None
        params = {k: v for k, v in cmd.items()
                  if k not in ("command", "id", "modules", "bound", "degree_bound")}
        rep = check_theorem(cmd["id"], M, N, tor_bound=tor_bound,
                            degree_bound=degree_bound, **params)
        return {"kind": "check", "title": cmd["id"],
                "data": {"theorem_reports": [rep.as_dict()]}}
    if kind == "search":
        ring = session.rings[cmd["ring"]]
        cfg = SearchConfig(ring, cmd["id"],
                           samples=cmd.get("samples", 20),
                           seed=cmd.get("seed", defaults["seed"]),
                           max_gens=cmd.get("max_gens", 2),
                           max_deg=cmd.get("max_deg", 2),
                           tor_bound=cmd.get("tor_bound", 5),
                           degree_bound=cmd.get("degree_bound", 6))
        log = counterexample_search(cfg)
        return {"kind": "search", "title": cmd["id"], "data": log}
    raise ValueError(f"unhandled command {kind!r}")


def main(argv=None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    if not args.script and not args.example:
        ap.print_usage(sys.stderr)
        print("cihom: provide --script FILE or --example ID", file=sys.stderr)
        return 2

    defaults = {"field": args.field, "steps": args.steps,
                "tor_bound": args.tor_bound, "degree_bound": args.degree_bound,
                "seed": args.seed}
    results = []
    failed = False
    try:
        if args.example:
            data = run_example(args.example, field_tag=args.field,
                               bounds={"steps": args.steps,
                                       "tor_bound": args.tor_bound,
                                       "degree_bound": args.degree_bound})
            results.append({"kind": "example", "title": args.example, "data": data})
            failed = failed or not data["pass"]
        if args.script:
            try:
                with open(args.script, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as err:
                print(f"cihom: cannot read script: {err}", file=sys.stderr)
                return 2
            session = parse_session(text)
            for cmd in session.commands:
                out = _run_command(cmd, session, defaults)
                results.append(out)
                data = out.get("data", {})
                if out["kind"] == "example" and not data.get("pass", True):
                    failed = True
                if out["kind"] == "check":
                    rep = data["theorem_reports"][0]
                    if (rep["conclusion"].get("verdict") == "fails"
                            and rep["asserted"] is False
                            and all(h["status"] in ("satisfied", "model-level")
                                    for h in rep["hypotheses"])):
                        failed = True
    except ParseError as err:
        print(f"cihom: parse error: {err}", file=sys.stderr)
        return 2
    except (UnknownExampleError, UnknownTheoremError, InvalidSplitError) as err:
        print(f"cihom: {err}", file=sys.stderr)
        return 2
    except (OracleTooLargeError,) as err:
        print(f"cihom: guardrail: {err}", file=sys.stderr)
        return 3
    except (TorsionInputError, HypothesisMissingError) as err:
        print(f"cihom: hypothesis missing: {err}", file=sys.stderr)
        return 3

    bounds = {"steps": args.steps, "tor_bound": args.tor_bound,
              "degree_bound": args.degree_bound, "seed": args.seed}
    document = make_document(results, args.field, bounds)
    if args.format == "json":
        sys.stdout.write(emit_json(document))
    else:
        sys.stdout.write(emit_text(document))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
