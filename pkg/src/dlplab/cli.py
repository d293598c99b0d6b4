"""Command-line front end: ``dlplab models|check|diff|fixtures|classical``.

Exit codes: 0 ok, 1 property or fixture failure, 2 usage, parse or
applicability error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import causal, classical, harness, semantic
from .errors import AlphabetTooLarge, ApplicabilityError, DlpLabError, NoStrategyConfigured, ParseError
from .fixtures import run_fixtures
from .models import sort_interpretations
from .parser import parse_dlp
from .registry import NAMES, compute_models
from .syntax import format_id

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split(value: str, allowed, what: str) -> list[str]:
    items = [v.strip().lower() for v in value.split(",") if v.strip()]
    if items == ["all"]:
        return list(allowed)
    bad = [v for v in items if v not in allowed]
    if bad or not items:
        raise UsageError(f"unknown {what}: {', '.join(bad) or value!r} (choose from {', '.join(allowed)})")
    return items


def _read_dlp(files: list[str]):
    texts = []
    for f in files:
        try:
            texts.append(Path(f).read_text())
        except OSError as e:
            raise UsageError(f"cannot read {f}: {e.strerror}") from e
    return parse_dlp(texts)


def _emit(args, data: dict, markdown: str) -> None:
    if args.md:
        sys.stdout.write(markdown if markdown.endswith("\n") else markdown + "\n")
    else:
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _show(m) -> str:
    return "{" + ", ".join(m) + "}"


def _gen_config(args) -> harness.GenConfig:
    return harness.GenConfig(atoms=args.atoms, layers=args.layers, rules_per_layer=args.rules,
                             strong_negation=not args.no_strong_negation,
                             default_heads=not args.no_default_heads,
                             tautology_free=args.tautology_free, acyclic=args.acyclic,
                             seed=args.seed)


def _instances(args):
    if args.files and args.random is not None:
        raise UsageError("give either files or --random N, not both")
    if args.files:
        return [_read_dlp(args.files)], {"source": "files", "files": args.files}
    n = 100 if args.random is None else args.random
    cfg = _gen_config(args)
    header = {"instances": n, "atoms": cfg.atoms, "layers": cfg.layers,
              "rules_per_layer": cfg.rules_per_layer, "seed": cfg.seed,
              "strong_negation": cfg.strong_negation, "default_heads": cfg.default_heads,
              "tautology_free": cfg.tautology_free, "acyclic": cfg.acyclic}
    return harness.random_dlps(cfg, n), header


# --- subcommands -------------------------------------------------------------

def cmd_models(args) -> int:
    dlp = _read_dlp(args.files)
    sem = _split(args.semantics, NAMES, "semantics")
    if len(sem) != 1:
        raise UsageError("models takes a single --semantics")
    s = sem[0]
    if args.explain and s not in causal.SEMANTICS:
        raise UsageError("--explain is available for ju, as, ds and rd")
    if args.emit_characterisation and s not in ("ea", "eb"):
        raise UsageError("--emit-characterisation is available for ea and eb")
    strategy = args.prx_strategy
    models = compute_models(s, dlp, prx_op=args.prx_op, prx_strategy=strategy)
    rows = sort_interpretations(models)
    data: dict = {"models": rows}
    md = [f"{s.upper()}-models: {len(rows)}", ""] + [f"- {_show(m)}" for m in rows]
    if args.explain:
        expl = []
        for j, ids in causal.explain(s, dlp):
            expl.append({"model": sorted(map(str, j)), "rejected": sorted(format_id(i) for i in ids)})
        expl.sort(key=lambda e: rows.index(e["model"]) if e["model"] in rows else len(rows))
        data["explain"] = expl
        md += ["", "Rejected rules per model:"]
        md += [f"- {_show(e['model'])}: {', '.join(e['rejected']) or 'none'}" for e in expl]
    if args.emit_characterisation:
        c = semantic.exception_fold(s[1], dlp)
        data["characterisation"] = c.to_json()
        md += ["", "Characterisation (one rule-base per line):", "", c.render()]
    _emit(args, data, "\n".join(md))
    return EXIT_OK


def cmd_check(args) -> int:
    props = _split(args.property, harness.PROPERTIES, "property")
    sems = _split(args.semantics, NAMES, "semantics")
    dlps, header = _instances(args)
    if args.files:
        verdicts = [harness.check_property(p, s, dlps[0]) for s in sems for p in props]
        ok = all(v.passed for v in verdicts)
        md = ["| property | semantics | verdict | counterexample |", "|---|---|---|---|"]
        for v in verdicts:
            cex = json.dumps(v.to_json().get("counterexample", ""), sort_keys=True) if not v.passed else ""
            md.append(f"| {v.property} | {v.semantics} | {'pass' if v.passed else 'FAIL'} | {cex} |")
        _emit(args, {"verdicts": [v.to_json() for v in verdicts], "pass": ok}, "\n".join(md))
        return EXIT_OK if ok else EXIT_FAIL
    report = harness.run_suite(props, sems, dlps, header)
    _emit(args, report.to_json(), report.to_markdown())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_diff(args) -> int:
    sems = _split(args.semantics, NAMES, "semantics")
    dlps, _ = _instances(args)
    report = harness.diff_semantics(sems, dlps)
    _emit(args, report.to_json(), report.to_markdown())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_fixtures(args) -> int:
    report = run_fixtures(args.only or None)
    _emit(args, report.to_json(), report.to_markdown())
    return EXIT_OK if report.ok else EXIT_FAIL


def _read_worlds(path: str) -> list[list[str]]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: not valid JSON ({e.msg})") from e
    if isinstance(data, dict) and "models" in data:
        data = data["models"]
    if not isinstance(data, list) or not all(isinstance(w, list) for w in data):
        raise UsageError(f"{path}: expected a JSON list of worlds, each a list of atom names")
    return data


def cmd_classical(args) -> int:
    if args.action == "update":
        if not args.phi or not args.mu:
            raise UsageError("classical update needs --phi and --mu")
        phi_w, mu_w = _read_worlds(args.phi), _read_worlds(args.mu)
        letters = sorted({a for w in phi_w + mu_w for a in w} | set(_letters(args.alphabet)))
        phi = classical.Formula.from_worlds(phi_w, letters)
        mu = classical.Formula.from_worlds(mu_w, letters)
        out = classical.winslett_update(phi, mu).to_json()
        md = [f"Winslett update over {{{', '.join(letters)}}}: {len(out)} worlds", ""]
        md += [f"- {_show(w)}" for w in out]
        _emit(args, {"models": out}, "\n".join(md))
        return EXIT_OK
    letters = _letters(args.alphabet) or ["p", "q"]
    check = (classical.check_update_postulates if args.suite.upper() == "U"
             else classical.check_revision_postulates)
    report = check(classical.winslett_update, letters, samples=args.samples, seed=args.seed)
    _emit(args, json.loads(report.to_json()), report.to_markdown())
    return EXIT_OK if report.passed() else EXIT_FAIL


def _letters(value: str | None) -> list[str]:
    return [a.strip() for a in (value or "").split(",") if a.strip()]


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dlplab", description="Update and revision semantics for answer-set programs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def output(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="JSON output (default)")
        g.add_argument("--md", action="store_true", help="Markdown output")

    def generation(sp):
        sp.add_argument("files", nargs="*", help="layer files of one DLP, in order")
        sp.add_argument("--random", type=int, metavar="N", help="check N generated DLPs instead")
        sp.add_argument("--atoms", type=int, default=3)
        sp.add_argument("--layers", type=int, default=2)
        sp.add_argument("--rules", type=int, default=3, help="maximum rules per layer")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--acyclic", action="store_true")
        sp.add_argument("--tautology-free", action="store_true")
        sp.add_argument("--no-strong-negation", action="store_true")
        sp.add_argument("--no-default-heads", action="store_true")

    m = sub.add_parser("models", help="compute the models of a DLP")
    m.add_argument("files", nargs="+", help="layer files, in order; '#update.' also separates layers")
    m.add_argument("--semantics", required=True, help=", ".join(NAMES))
    m.add_argument("--explain", action="store_true", help="list rejected rule ids per model")
    m.add_argument("--emit-characterisation", action="store_true",
                   help="dump the RE-model characterisation (ea, eb)")
    m.add_argument("--prx-op", type=int, default=2, choices=(0, 1, 2))
    m.add_argument("--prx-strategy", help="name of a registered preferred-model strategy")
    output(m)
    m.set_defaults(func=cmd_models)

    c = sub.add_parser("check", help="check properties of semantics")
    c.add_argument("--property", default="all", help=", ".join(harness.PROPERTIES) + " or all")
    c.add_argument("--semantics", required=True)
    generation(c)
    output(c)
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("diff", help="compare semantics and flag broken containments")
    d.add_argument("--semantics", default="as,ju,ds,rd")
    generation(d)
    output(d)
    d.set_defaults(func=cmd_diff)

    f = sub.add_parser("fixtures", help="run the golden examples")
    f.add_argument("--only", nargs="*", help="fixture name prefixes")
    output(f)
    f.set_defaults(func=cmd_fixtures)

    k = sub.add_parser("classical", help="Winslett update and postulate checks")
    k.add_argument("action", choices=("update", "postulates"))
    k.add_argument("--phi", help="JSON file with the worlds of the theory")
    k.add_argument("--mu", help="JSON file with the worlds of the new information")
    k.add_argument("--suite", default="U", choices=("U", "R", "u", "r"))
    k.add_argument("--alphabet", help="comma separated letters")
    k.add_argument("--samples", type=int, default=10_000)
    k.add_argument("--seed", type=int, default=0)
    output(k)
    k.set_defaults(func=cmd_classical)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command (models, check, diff, fixtures, classical)")
        return args.func(args)
    except UsageError as e:
        print(f"dlplab: usage error: {e}", file=sys.stderr)
    except ParseError as e:
        print(f"dlplab: parse error: {e}", file=sys.stderr)
    except ApplicabilityError as e:
        print(f"dlplab: not applicable: {e}", file=sys.stderr)
    except (AlphabetTooLarge, NoStrategyConfigured, DlpLabError) as e:
        print(f"dlplab: {e}", file=sys.stderr)
    except ValueError as e:
        print(f"dlplab: invalid input: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
