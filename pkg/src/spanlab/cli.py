"""Command line front end: build a spanner bundle, verify one, run sweeps."""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import List, Optional

from .errors import ParseError, SpanlabError
from .metric import (generate_points, load_metric, parse_generator_spec,
                     save_metric)
from .pipeline import RunConfig, run
from .verify import run_all, verify_hop_diameter, verify_stretch

SWEEP_SCHEMA = "spanlab-sweep v1"
SWEEP_COLUMNS = ["n", "rho", "eps", "mode", "edges", "max_degree", "lightness",
                 "stretch", "hop_h", "gamma", "levels", "build_ms", "status"]


def _parse_mode(mode: str):
    """"strict" or "explore:<gamma>"; bare "explore" uses the default gamma."""
    name, _, arg = mode.partition(":")
    name = name.strip().lower()
    if name == "strict":
        if arg:
            raise ParseError("strict mode takes no parameter")
        return "strict", 3
    if name == "explore":
        gamma = int(arg) if arg else 3
        return "explore", gamma
    raise ParseError(f"unknown mode {mode!r}")


def _load_points(spec: str, seed: int):
    if spec.startswith("gen:"):
        if "seed=" not in spec:
            spec = f"{spec},seed={seed}"
        return parse_generator_spec(spec)
    return load_metric(spec)


def _config_dict(args, mode: str, gamma: int) -> dict:
    return {"format": 1, "points": "points.txt", "rho": args.rho,
            "eps": args.eps, "t": args.t, "basic": args.basic,
            "mode": mode, "gamma": gamma, "seed": args.seed}


def _run_from_config(cfg_json: dict, metric):
    cfg = RunConfig(rho=cfg_json["rho"], eps=cfg_json["eps"], t=cfg_json["t"],
                    mode=cfg_json["mode"], gamma=cfg_json["gamma"],
                    basic=cfg_json["basic"], seed=cfg_json["seed"])
    return run(metric, cfg)


def cmd_build(args) -> int:
    metric = _load_points(args.points, args.seed)
    mode, gamma = _parse_mode(args.mode)
    cfg_json = _config_dict(args, mode, gamma)
    bundle = _run_from_config(cfg_json, metric)
    os.makedirs(args.out, exist_ok=True)
    save_metric(metric, os.path.join(args.out, "points.txt"))
    with open(os.path.join(args.out, "config.json"), "w") as fh:
        json.dump(cfg_json, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(os.path.join(args.out, "edges.txt"), "w") as fh:
        fh.write("\n".join(bundle.graph.edge_lines()))
        fh.write("\n")
    with open(os.path.join(args.out, "metrics.json"), "w") as fh:
        json.dump(bundle.metrics_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"built {args.out}: n={metric.n} edges={bundle.graph.num_edges} "
          f"max_degree={bundle.graph.max_degree()} levels={bundle.params.ell}")
    return 0


def cmd_verify(args) -> int:
    bundle_dir = args.bundle
    with open(os.path.join(bundle_dir, "config.json")) as fh:
        cfg_json = json.load(fh)
    metric = load_metric(os.path.join(bundle_dir, "points.txt"))
    bundle = _run_from_config(cfg_json, metric)
    report = run_all(bundle)
    with open(os.path.join(bundle_dir, "edges.txt")) as fh:
        stored = fh.read()
    rebuilt = "\n".join(bundle.graph.edge_lines()) + "\n"
    from .verify import CheckEntry
    entry = CheckEntry("bundle-integrity", "ANY",
                       "pass" if stored == rebuilt else "fail",
                       detail="stored edge list matches a deterministic rebuild"
                       if stored == rebuilt else
                       "stored edge list differs from a deterministic rebuild")
    report.add(entry)
    with open(os.path.join(bundle_dir, "report.json"), "w") as fh:
        fh.write(report.to_json())
        fh.write("\n")
    print(report.to_text())
    return 0 if report.ok else 1


def _sweep_value(entry) -> str:
    if entry.status in ("pass", "fail", "info") and entry.measured is not None:
        return repr(entry.measured)
    return ""


def cmd_sweep(args) -> int:
    mode_specs = [(_parse_mode(m), m) for m in args.mode]
    rows: List[List[str]] = []
    combos = itertools.product(args.n, args.rho, args.eps, args.basic,
                               mode_specs, range(args.reps))
    for n, rho, eps, basic, ((mode, gamma), mode_label), rep in combos:
        seed = args.seed_base + rep
        row = [str(n), str(rho), repr(eps), mode_label]
        try:
            metric = generate_points(args.gen, n=n, dim=args.dim, seed=seed)
            cfg = RunConfig(rho=rho, eps=eps, t=args.t, mode=mode, gamma=gamma,
                            basic=basic, seed=seed)
            bundle = run(metric, cfg)
            stretch = verify_stretch(bundle)
            hop = verify_hop_diameter(bundle)
            row += [str(bundle.graph.num_edges),
                    str(bundle.graph.max_degree()),
                    repr(bundle.metrics_dict()["lightness"]),
                    _sweep_value(stretch), _sweep_value(hop),
                    str(bundle.params.gamma), str(bundle.params.ell),
                    repr(round(bundle.timings["total_ms"], 3)), "ok"]
        except Exception as exc:  # sweep keeps going, row records the failure
            row += [""] * 8 + [type(exc).__name__]
        rows.append(row)
        print(",".join(row), file=sys.stderr)
    out = [f"# {SWEEP_SCHEMA}", ",".join(SWEEP_COLUMNS)]
    out += [",".join(r) for r in rows]
    text = "\n".join(out) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _int_list(s: str) -> List[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def _float_list(s: str) -> List[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def _str_list(s: str) -> List[str]:
    return [x.strip() for x in s.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spanlab",
                                 description="light low-degree spanners with "
                                             "small hop diameter")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a spanner bundle")
    b.add_argument("--points", required=True,
                   help="points file or gen:<family>:n=...,dim=...,seed=...")
    b.add_argument("--rho", type=int, required=True)
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--t", type=float, default=1.5)
    b.add_argument("--basic", default="greedy",
                   help="greedy | theta[:k] | complete")
    b.add_argument("--mode", default="strict", help="strict | explore[:gamma]")
    b.add_argument("--out", required=True, help="bundle directory")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-run and check a bundle")
    v.add_argument("--bundle", required=True, help="bundle directory")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="benchmark grid, CSV output")
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--rho", type=_int_list, default=[2])
    s.add_argument("--eps", type=_float_list, default=[0.5])
    s.add_argument("--basic", type=_str_list, default=["greedy"])
    s.add_argument("--mode", type=_str_list, default=["strict"])
    s.add_argument("--t", type=float, default=1.5)
    s.add_argument("--gen", default="uniform")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed-base", type=int, default=0)
    s.add_argument("--out", required=True, help="CSV path, - for stdout")
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SpanlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
