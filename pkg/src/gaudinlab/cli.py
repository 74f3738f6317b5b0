"""Command-line entry point: operator builds, verification suites, and
quasi-exponential space computations.

Exit codes: 0 on success (all checks passed, or hypotheses were unmet
and the run is reported as a warning), 1 on a violation / dependent
basis / internal identity failure, 2 on usage or input errors.
Reports are deterministic: the same config and seed produce
byte-identical files.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .rationals import QQ, format_rational, parse_rational
from .partitions import Partition
from .gaudin import (GaudinInstance, IdentityViolationError,
                     build_T_definitional, build_T_partial_trace,
                     build_T_jacobi_trudi, build_beta)
from .quasiexp import (DependentBasisError, PreconditionError, QuasiExpSpace,
                       dual_space, plucker_vector, poly_limit_family,
                       translate, wronskian)
from .spectral import (Tolerances, verify_psd_theorem,
                       verify_universal_coordinates, verify_positivity_pipeline)
from . import sampling, suites

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

DEFAULT_CONFIG = {
    "N": 2, "n": 2, "h": ["1/1", "2/1"], "z": ["1/1", "3/1"],
    "t": "0/1", "bound": 3, "truncation": 10, "seed": 7,
    "backend": "exact",
}


@dataclass
class RunConfig:
    """Run parameters parsed from a JSON config file; rationals are "p/q"."""
    N: int = 2
    n: int = 2
    h: tuple = (QQ(1), QQ(2))
    z: tuple = (QQ(1), QQ(3))
    t: object = QQ(0)
    bound: int = 3
    truncation: int = 10
    seed: int = 7
    backend: str = "exact"
    partition: Partition = field(default_factory=Partition)
    out: str = None
    tolerances: Tolerances = field(default_factory=Tolerances)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            raw = json.load(fh)
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw):
        cfg = cls()
        cfg.N = int(raw.get("N", cfg.N))
        cfg.n = int(raw.get("n", cfg.n))
        cfg.h = tuple(parse_rational(x) for x in raw.get("h", DEFAULT_CONFIG["h"]))
        cfg.z = tuple(parse_rational(x) for x in raw.get("z", DEFAULT_CONFIG["z"]))
        cfg.t = parse_rational(raw.get("t", "0/1"))
        cfg.bound = int(raw.get("bound", cfg.bound))
        cfg.truncation = int(raw.get("truncation", cfg.truncation))
        cfg.seed = int(raw.get("seed", cfg.seed))
        cfg.backend = raw.get("backend", cfg.backend)
        part = raw.get("partition", [])
        cfg.partition = Partition(part)
        cfg.out = raw.get("out")
        tols = raw.get("tolerances", {})
        cfg.tolerances = Tolerances(
            clustering=float(tols.get("clustering", 1e-7)),
            eigenvalue=float(tols.get("eigenvalue", 1e-8)),
            reconstruction=float(tols.get("reconstruction", 1e-6)))
        if cfg.backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {cfg.backend!r}")
        return cfg

    def instance(self):
        return GaudinInstance(self.N, self.n, self.h, self.z)


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, Partition):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return format_rational(obj)
    if hasattr(obj, "dump"):
        return _jsonable(obj.dump())
    return str(obj)


def _summarize(report):
    lines = [f"suite: {report.get('suite', report.get('command', '?'))}"]
    checks = report.get("checks", [])
    if checks:
        failed = [c for c in checks if not c.get("pass", True)]
        lines.append(f"checks: {len(checks)}  failed: {len(failed)}")
        for c in failed[:10]:
            lines.append("FAIL " + json.dumps(_jsonable(c), sort_keys=True))
    if report.get("warning"):
        lines.append(f"warning: {report['warning']}")
    lines.append("overall: " + ("PASS" if report.get("pass", True) else "FAIL"))
    return lines


def _emit(report, out_path):
    report = _jsonable(report)
    report["summary"] = _summarize(report)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    for line in report["summary"]:
        print(line)
    return report


BUILDERS = {
    "T-definitional": build_T_definitional,
    "T-trace": build_T_partial_trace,
    "T-jt": build_T_jacobi_trudi,
    "beta": build_beta,
}


def cmd_build(args):
    cfg = RunConfig.from_file(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.partition is not None:
        cfg.partition = Partition.parse(args.partition)
    builder = BUILDERS[args.kind]
    op_poly = builder(cfg.partition, cfg.instance())
    report = {"command": "build", "kind": args.kind,
              "partition": str(cfg.partition),
              "operator_polynomial": op_poly.dump(), "pass": True}
    _emit(report, args.out or cfg.out)
    return EXIT_OK


def _spaces_for_suite(cfg, count_poly=2, count_qexp=2):
    rng = sampling.seeded_rng("cli-spaces", cfg.seed)
    spaces = [sampling.random_polynomial_space(rng, max(cfg.N, 2))
              for _ in range(count_poly)]
    spaces += [sampling.random_quasiexp_space(rng, max(cfg.N, 2))
               for _ in range(count_qexp)]
    return spaces


def cmd_verify(args):
    cfg = RunConfig.from_file(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    inst = cfg.instance()
    suite = args.suite
    if suite == "routes":
        report = suites.suite_route_agreement(inst, max_size=cfg.bound)
    elif suite == "commute":
        report = suites.suite_commutation(inst, max_size=cfg.bound)
    elif suite == "beta-specialization":
        report = suites.suite_beta_specialization(inst, max_size=cfg.bound)
    elif suite == "trace-identities":
        report = suites.suite_trace_identities(
            cfg.N, cfg.h, max_L=min(4, max(cfg.bound, 1)), max_K=2)
    elif suite in ("jt", "dual-jt"):
        report = suites.suite_jacobi_trudi(
            _spaces_for_suite(cfg), max_size=min(cfg.bound, 4), t=cfg.t)
        report["suite"] = suite
    elif suite == "translation":
        report = suites.suite_translation(
            _spaces_for_suite(cfg), t=cfg.t, bound=cfg.bound + 2)
    elif suite == "psd":
        report = verify_psd_theorem(inst, cfg.t, cfg.bound)
    elif suite == "universal":
        report = verify_universal_coordinates(
            inst, cfg.t, cfg.bound, cfg.truncation,
            tol=cfg.tolerances, seed=cfg.seed)
    elif suite == "positivity":
        report = verify_positivity_pipeline(
            inst, cfg.t, bound=max(cfg.bound, 6),
            truncation=cfg.truncation + 4, tol=cfg.tolerances, seed=cfg.seed)
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_USAGE
    report.setdefault("suite", suite)
    report["seed"] = cfg.seed
    _emit(report, args.out or cfg.out)
    if not report.get("pass", False):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_space(args):
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    with open(args.space) as fh:
        data = json.load(fh)
    space = QuasiExpSpace.load(data)
    t = parse_rational(args.t) if args.t is not None else cfg.t
    if args.action == "wronskian":
        w = wronskian(space)
        report = {"command": "space", "action": "wronskian",
                  "wronskian": w.dump(), "pass": True}
    elif args.action == "plucker":
        bound = args.bound if args.bound is not None else cfg.bound
        pv = plucker_vector(space, t, bound)
        report = {"command": "space", "action": "plucker", "t": t,
                  "bound": bound, "plucker": pv.dump(), "pass": True}
    elif args.action == "translate":
        report = {"command": "space", "action": "translate", "t": t,
                  "space": translate(space, t).dump(), "pass": True}
    elif args.action == "dual":
        M = args.M if args.M is not None else args.bound
        if M is None:
            raise PreconditionError("dual needs --M (ambient degree bound + 1)")
        report = {"command": "space", "action": "dual", "M": M,
                  "space": dual_space(space, M).dump(), "pass": True}
    elif args.action == "limit-family":
        k = args.k or 10
        report = {"command": "space", "action": "limit-family", "k": k,
                  "space": poly_limit_family(space, k).dump(), "pass": True}
    else:  # pragma: no cover
        return EXIT_USAGE
    _emit(report, args.out or cfg.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gaudinlab",
        description="exact verification lab for commuting Hamiltonian "
                    "families and quasi-exponential spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build an operator polynomial dump")
    p_build.add_argument("kind", choices=sorted(BUILDERS))
    p_build.add_argument("--config", required=True)
    p_build.add_argument("--partition", help="partition literal, e.g. [2,1]")
    p_build.add_argument("--seed", type=int)
    p_build.add_argument("--out")
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=[
        "routes", "commute", "jt", "dual-jt", "translation",
        "beta-specialization", "trace-identities", "psd", "universal",
        "positivity"])
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--backend", choices=["exact", "float"])
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)

    p_space = sub.add_parser("space", help="compute with a space file")
    p_space.add_argument("action", choices=[
        "wronskian", "plucker", "translate", "dual", "limit-family"])
    p_space.add_argument("--space", required=True)
    p_space.add_argument("--config")
    p_space.add_argument("--t")
    p_space.add_argument("--bound", type=int)
    p_space.add_argument("--M", type=int)
    p_space.add_argument("--k", type=int)
    p_space.add_argument("--out")
    p_space.set_defaults(func=cmd_space)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        if isinstance(exc, DependentBasisError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VIOLATION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityViolationError as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
