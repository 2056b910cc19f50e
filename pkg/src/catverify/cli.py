"""Command-line entry point: ``verify --suite NAME``."""

from __future__ import annotations

import argparse
import json
import sys

from .fincat import CategoryError
from .suites import SUITES, SuiteConfig, run_suite


def build_parser():
    ap = argparse.ArgumentParser(prog="verify", description="Run named verification suites.")
    ap.add_argument("--suite", required=True, help="one of: " + ", ".join(SUITES + ("all",)))
    ap.add_argument("--max-n", type=int, default=3, help="tuple-poset arity bound")
    ap.add_argument("--max-set-size", type=int, default=3, help="finite set cardinality bound")
    ap.add_argument("--max-dim", type=int, default=4, help="nerve truncation dimension")
    ap.add_argument("--chain-bound", type=int, default=3, help="simplicial degree bound L")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    ap.add_argument("--format", default="json", choices=("json", "text"))
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--timings", action="store_true", help="include wall times (not byte-stable)")
    return ap


def render_text(report):
    lines = []
    for r in report["records"]:
        params = " ".join(f"{k}={json.dumps(v)}" for k, v in r["params"].items())
        line = f"{r['verdict'].upper():4} [{r['suite']}] {r['anchor']}"
        if params:
            line += f" ({params})"
        if "time" in r:
            line += f" {r['time']:.3f}s"
        lines.append(line)
        for note in r["notes"]:
            lines.append(f"     note: {note}")
        if r["verdict"] == "fail":
            lines.append(f"     witness: {json.dumps(r['witness'], sort_keys=True)}")
    lines.append(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = SuiteConfig(args.suite, args.max_n, args.max_set_size, args.max_dim, args.chain_bound,
                         args.seed, args.jobs, args.format, args.timings)
    try:
        report = run_suite(config)
    except CategoryError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
