"""Command-line front end.

Exit codes: 0 separable or success, 10 entangled (not PPT), 2 bad input,
3 decomposition failure, 4 generator exhausted.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import __version__
from .decomposition import NotPptError, RankOneFailure, decompose
from .generator import GeneratorConfig, GeneratorExhausted, generate, sweep
from .ppt import ANALYTIC_TOL, ppt_analytic, ppt_numeric
from .serialization import ParamsFormatError, corpus_lines, dumps, format_float, params_from_dict, parse_instances
from .states import GeneralShiftParams, ShiftStateParams, build_density, build_density_general

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CONSTRUCTION = 3
EXIT_EXHAUSTED = 4
EXIT_ENTANGLED = 10


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    tol: float = ANALYTIC_TOL
    seed: int = 0
    count: int = 1
    steps: int = 100
    mode: str = "random"
    format: str = "json"
    phase_twist: bool = False

    def validate(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.command in ("check", "decompose", "sweep") and not self.input_path:
            raise UsageError(f"{self.command} requires --input")
        if self.command == "sample":
            if self.count < 1:
                raise UsageError("--count must be >= 1")
            if self.mode not in ("random", "ppt"):
                raise UsageError("--mode must be random or ppt")
            if self.seed < 0:
                raise UsageError("--seed must be non-negative")
        if self.command == "sweep" and self.steps < 1:
            raise UsageError("--steps must be >= 1")
        if self.command in ("check", "decompose", "sample") and self.format != "json":
            raise UsageError(f"{self.command} only supports --format json")


def _read_input(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_params(config: CliConfig) -> list:
    return [params_from_dict(obj) for obj in parse_instances(_read_input(config.input_path))]


def _check_one(params, tol: float) -> tuple[dict, bool]:
    if isinstance(params, GeneralShiftParams):
        ok, lo = ppt_numeric(build_density_general(params), params.d, params.d)
        # no separability theorem beyond d = 3
        return {"d": params.d, "is_ppt": ok, "min_eigenvalue": lo, "verdict": "PPT" if ok else "EntangledDistillable"}, ok
    report = ppt_analytic(params, tol)
    numeric_ok, _ = ppt_numeric(build_density(params))
    out = report.to_dict()
    out["numeric_is_ppt"] = numeric_ok
    out["verdict"] = "Separable" if report.is_ppt else "EntangledDistillable"
    return out, report.is_ppt


def cmd_check(config: CliConfig) -> tuple[int, list[str]]:
    lines, code = [], EXIT_OK
    for params in _load_params(config):
        out, ok = _check_one(params, config.tol)
        lines.append(dumps(out))
        if not ok:
            code = EXIT_ENTANGLED
    return code, lines


def cmd_decompose(config: CliConfig) -> tuple[int, list[str]]:
    lines, code = [], EXIT_OK
    for params in _load_params(config):
        if not isinstance(params, ShiftStateParams):
            raise UsageError("decompose only supports the 3x3 family")
        try:
            dec = decompose(params, config.tol)
        except NotPptError as exc:
            lines.append(dumps({"verdict": "EntangledDistillable", "minEigenvalue": exc.min_eigenvalue}))
            code = EXIT_ENTANGLED
            continue
        lines.append(dumps({"verdict": "Separable", **dec.to_dict()}))
    return code, lines


def cmd_sample(config: CliConfig) -> tuple[int, list[str]]:
    gen = GeneratorConfig(config.seed, config.mode, config.count, config.phase_twist)
    extra = {"phase_twist": True} if config.phase_twist else {}
    return EXIT_OK, corpus_lines(generate(gen), config.seed, config.mode, **extra)


def cmd_sweep(config: CliConfig) -> tuple[int, list[str]]:
    docs = parse_instances(_read_input(config.input_path))
    if len(docs) != 1 or not isinstance(docs[0], dict):
        raise ParamsFormatError("<root>", "expected one object with 'start' and 'end'")
    ends = []
    for key in ("start", "end"):
        if key not in docs[0]:
            raise ParamsFormatError(key, "missing")
        try:
            p = params_from_dict(docs[0][key])
        except ParamsFormatError as exc:
            raise ParamsFormatError(f"{key}.{exc.field}", str(exc)) from exc
        if not isinstance(p, ShiftStateParams):
            raise ParamsFormatError(key, "sweep only supports the 3x3 family")
        ends.append(p)
    records = sweep(ends[0], ends[1], config.steps, config.tol)
    if config.format == "json":
        return EXIT_OK, [dumps([r.__dict__ for r in records])]
    lines = ["t,min_eigenvalue_pt,verdict,magnitude_spread"]
    for r in records:
        if r.skipped:
            lines.append(f"# skipped t={format_float(r.t)}: zero amplitude")
            continue
        lines.append(",".join((format_float(r.t), format_float(r.min_eigenvalue_pt), r.verdict, format_float(r.magnitude_spread))))
    return EXIT_OK, lines


COMMANDS = {"check": cmd_check, "decompose": cmd_decompose, "sample": cmd_sample, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftppt", description="PPT and separability for 3x3 cyclic-shift states")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("check", "closed-form and numeric PPT test"),
        ("decompose", "explicit separable decomposition"),
        ("sample", "write a JSON-lines corpus of instances"),
        ("sweep", "classify points on a path between two instances"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", dest="input_path")
        p.add_argument("--output", dest="output_path")
        p.add_argument("--tol", type=float, default=ANALYTIC_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--count", type=int, default=1)
        p.add_argument("--steps", type=int, default=100)
        p.add_argument("--mode", default="random")
        p.add_argument("--format", choices=("json", "csv"), default="csv" if name == "sweep" else "json")
        p.add_argument("--phase-twist", action="store_true")
    return parser


def run(config: CliConfig) -> tuple[int, list[str]]:
    config.validate()
    return COMMANDS[config.command](config)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    config = CliConfig(**vars(args))
    try:
        code, lines = run(config)
    except (UsageError, ParamsFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except RankOneFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dumps({"error": str(exc), "diagnostics": exc.diagnostics}), file=sys.stderr)
        return EXIT_CONSTRUCTION
    except GeneratorExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    text = "\n".join(lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
