"""Command-line front end.

    wavefactor factor 35 --sum gauss
    wavefactor scan 21 --sum gauss --terms 4 --threshold 0.70 --format csv
    wavefactor simulate setup.cfg --setup pulses --format json
    wavefactor sweep setup.cfg --setup faraday --trials 3,4,5 --out out.csv
    wavefactor compare numbers.txt --threshold 0.75 --allow-unseparated

Exit codes: 0 success, 2 validation error (one-line diagnostic on stderr),
3 when a comparison hits a persistent ghost that no truncation separates.
Setup files are plain `key = value` text mirroring the optics config
fields, SI units, decimal notation.  WAVEFACTOR_PARALLEL in the
environment overrides --parallel.
"""

from __future__ import annotations

import argparse
import datetime
import math
import os
import statistics
import sys
from typing import Sequence

from .factorizer import (
    NotSeparatedError,
    ScanParams,
    choose_truncation,
    factorize,
    min_discriminating_terms,
    scan,
)
from .optics import (
    SWEEP_VARIABLES,
    BeatConfig,
    FaradayConfig,
    InterferometerConfig,
    PulseTrainConfig,
    beat_reading,
    faraday_reading,
    map_to_canonical,
    mzi_reading,
    pulse_train_reading,
    sweep,
)
from .report import emit_json, emit_report
from .sums import FOURIER, GAUSS, KUMMER, TermSelection, parse_kind

COMPARE_KINDS = (FOURIER, GAUSS, KUMMER)


class CliError(Exception):
    """Validation failure with a one-line diagnostic (exit status 2)."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavefactor",
        description="factor integers with truncated interference sums",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, setups: bool = False) -> None:
        p.add_argument("--sum", default="gauss", metavar="KIND",
                       help="fourier|gauss|kummer|powerk:<k>|selfexp")
        p.add_argument("--terms", default="auto", metavar="M",
                       help="truncation, or 'auto' for max(4, ceil(N^(1/4)))")
        p.add_argument("--selection", default="all", choices=("all", "odd"))
        p.add_argument("--threshold", type=float, default=0.75)
        p.add_argument("--format", default="csv", dest="fmt",
                       choices=("csv", "json", "plot-svg"))
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--parallel", default="1", metavar="N",
                       help="worker count, or 'auto' (env WAVEFACTOR_PARALLEL wins)")
        p.add_argument("--stamp", action="store_true",
                       help="add a timestamp to report metadata (non-deterministic)")
        if setups:
            p.add_argument("--setup", required=True,
                           choices=("mzi", "pulses", "beats", "faraday"))
            p.add_argument("--config", default=None, metavar="PATH",
                           help="setup file (alternative to the positional path)")

    p_factor = sub.add_parser("factor", help="full prime factorization")
    p_factor.add_argument("number", metavar="N")
    common(p_factor)
    # The factorization result is a document, not a row table.
    p_factor.set_defaults(fmt="json")

    p_scan = sub.add_parser("scan", help="classify every trial factor")
    p_scan.add_argument("number", metavar="N")
    p_scan.add_argument("--range", default=None, metavar="LO:HI", dest="trial_range")
    common(p_scan)

    p_sim = sub.add_parser("simulate", help="one detector reading for a setup")
    p_sim.add_argument("config_path", nargs="?", default=None, metavar="CONFIG")
    common(p_sim, setups=True)

    p_sweep = sub.add_parser("sweep", help="readings at integer trial points")
    p_sweep.add_argument("config_path", nargs="?", default=None, metavar="CONFIG")
    p_sweep.add_argument("--trials", default=None, metavar="L1,L2,...")
    common(p_sweep, setups=True)

    p_cmp = sub.add_parser("compare", help="terms needed per sum kind (medians)")
    p_cmp.add_argument("numbers_path", metavar="N_LIST")
    p_cmp.add_argument("--cap", type=int, default=10_000)
    p_cmp.add_argument("--allow-unseparated", action="store_true",
                       help="score unseparated numbers at the cap instead of failing")
    common(p_cmp)
    return parser


def _parse_number(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise CliError(f"N must be an integer, got {text!r}") from None
    if n < 2:
        raise CliError("N must be >= 2")
    return n


def _parse_terms(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        m = int(text)
    except ValueError:
        raise CliError(f"--terms must be an integer or 'auto', got {text!r}") from None
    if m < 1:
        raise CliError("--terms must be >= 1")
    return m


def _parse_threshold(value: float) -> float:
    if not 0.0 < value < 1.0:
        raise CliError("--threshold must be strictly between 0 and 1")
    return value


def _parse_parallel(text: str) -> int:
    text = os.environ.get("WAVEFACTOR_PARALLEL", text)
    if text == "auto":
        return os.cpu_count() or 1
    try:
        n = int(text)
    except ValueError:
        raise CliError(f"--parallel must be an integer or 'auto', got {text!r}") from None
    if n < 1:
        raise CliError("--parallel must be >= 1")
    return n


def _parse_range(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"--range expects LO:HI, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise CliError(f"--range expects integers, got {text!r}") from None
    if lo < 2:
        raise CliError("--range lower bound must be >= 2")
    return lo, hi


def _parse_trials(text: str | None) -> list[int]:
    if not text:
        raise CliError("--trials is required for sweep")
    try:
        trials = [int(t) for t in text.split(",") if t]
    except ValueError:
        raise CliError(f"--trials expects comma-separated integers, got {text!r}") from None
    if not trials or any(t < 1 for t in trials):
        raise CliError("--trials must list integers >= 1")
    return trials


def _parse_sum(text: str):
    try:
        return parse_kind(text)
    except ValueError as exc:
        raise CliError(f"--sum: {exc}") from None


_SELECTIONS = {"all": TermSelection.ALL, "odd": TermSelection.ODD_ONLY}

_SETUP_FIELDS = {
    "mzi": {
        "arm_count": int, "arm_length": float, "wavelength": float,
        "index_offset": float, "index_scale": float, "exponent": int,
        "base_amplitude": float,
    },
    "pulses": {
        "pulse_count": int, "unit_delay": float, "optical_frequency": float,
        "exponent": int, "base_amplitude": float,
    },
    "beats": {
        "mode_count": int, "base_frequency": float, "exponent": int,
        "selection": str, "base_amplitude": float, "detection_time": float,
    },
    "faraday": {
        "path_count": int, "path_length": float, "verdet_scale": float,
        "base_field": float, "exponent": int, "base_amplitude": float,
    },
}

_SETUP_TYPES = {
    "mzi": InterferometerConfig,
    "pulses": PulseTrainConfig,
    "beats": BeatConfig,
    "faraday": FaradayConfig,
}

_READINGS = {
    "mzi": mzi_reading,
    "pulses": pulse_train_reading,
    "faraday": faraday_reading,
}


def _load_setup(setup: str, path: str):
    """Parse a key=value setup file into a config plus extras (detection_time)."""
    fields = _SETUP_FIELDS[setup]
    values: dict[str, object] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"--config: cannot read {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, _, text = line.partition("=")
        key, text = key.strip(), text.strip()
        if key not in fields:
            raise CliError(f"{path}:{lineno}: unknown key {key!r} for setup {setup!r}")
        caster = fields[key]
        try:
            values[key] = caster(text)
        except ValueError:
            raise CliError(
                f"{path}:{lineno}: bad value {text!r} for {key!r}"
            ) from None
    extras = {}
    if setup == "beats":
        if "detection_time" in values:
            extras["detection_time"] = values.pop("detection_time")
        if "selection" in values:
            sel = str(values["selection"]).lower()
            if sel not in _SELECTIONS:
                raise CliError(f"{path}: selection must be all|odd, got {sel!r}")
            values["selection"] = _SELECTIONS[sel]
    try:
        config = _SETUP_TYPES[setup](**values)
    except (TypeError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from None
    return config, extras


def _iso_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _finish(args, rows, threshold=None, allow_empty=False) -> bytes:
    if args.stamp:
        when = _iso_now()
        rows = [{**row, "timestamp": when} for row in rows]
    return emit_report(rows, args.fmt, threshold=threshold, allow_empty=allow_empty)


def _cmd_factor(args) -> bytes:
    number = _parse_number(args.number)
    params = ScanParams(
        truncation=_parse_terms(args.terms),
        kind=_parse_sum(args.sum),
        selection=_SELECTIONS[args.selection],
        threshold=_parse_threshold(args.threshold),
    )
    result = factorize(number, params, parallel=_parse_parallel(args.parallel))
    if args.fmt == "csv":
        counts: dict[int, int] = {}
        for p in result.prime_factors:
            counts[p] = counts.get(p, 0) + 1
        rows = [{"prime": p, "multiplicity": c} for p, c in sorted(counts.items())]
        return _finish(args, rows)
    if args.fmt == "plot-svg":
        raise CliError("--format plot-svg applies to scan and sweep reports")
    doc = {
        "n": number,
        "primes": result.prime_factors,
        "kind": str(params.kind),
        "terms_used_per_level": result.terms_used_per_level,
        "threshold": params.threshold,
    }
    if args.stamp:
        doc["timestamp"] = _iso_now()
    return emit_json([doc])


def _cmd_scan(args) -> bytes:
    number = _parse_number(args.number)
    kind = _parse_sum(args.sum)
    params = ScanParams(
        truncation=_parse_terms(args.terms),
        kind=kind,
        selection=_SELECTIONS[args.selection],
        threshold=_parse_threshold(args.threshold),
        trial_range=_parse_range(args.trial_range),
    )
    try:
        rows = scan(number, params, parallel=_parse_parallel(args.parallel))
    except ValueError as exc:
        raise CliError(f"--range: {exc}") from None
    truncation = params.truncation or choose_truncation(number, kind)
    report_rows = [
        {
            "l": r.trial,
            "magnitude": r.magnitude,
            "verdict": r.verdict.value,
            "complement": r.complement,
            "kind": str(kind),
            "M": truncation,
            "threshold": params.threshold,
        }
        for r in rows
    ]
    return _finish(args, report_rows, threshold=params.threshold, allow_empty=True)


def _resolve_config_path(args) -> str:
    path = args.config or args.config_path
    if not path:
        raise CliError("--config (or a positional config path) is required")
    if args.config and args.config_path and args.config != args.config_path:
        raise CliError("--config conflicts with the positional config path")
    return path


def _cmd_simulate(args) -> bytes:
    config, extras = _load_setup(args.setup, _resolve_config_path(args))
    if args.fmt == "plot-svg":
        raise CliError("--format plot-svg applies to scan and sweep reports")
    if args.setup == "beats":
        if "detection_time" not in extras:
            raise CliError("beats simulate needs detection_time in the setup file")
        t = extras["detection_time"]
        reading = beat_reading(config, t)
        mapping = map_to_canonical(config, detection_time=t)
    else:
        reading = _READINGS[args.setup](config)
        mapping = map_to_canonical(config)
    row = {
        "setup": args.setup,
        "normalized_magnitude": reading.normalized_magnitude,
        "raw_intensity": reading.raw_intensity,
        "terms": reading.terms,
        "effective_number": mapping.effective_number,
        "effective_trial": mapping.effective_trial,
        "ratio": mapping.ratio,
        "kind": str(mapping.kind),
        "M": mapping.truncation,
    }
    return _finish(args, [row])


def _cmd_sweep(args) -> bytes:
    config, _extras = _load_setup(args.setup, _resolve_config_path(args))
    trials = _parse_trials(args.trials)
    variable = SWEEP_VARIABLES[type(config)]
    points = sweep(config, variable, trials, parallel=_parse_parallel(args.parallel))
    kind = _kind_label(config)
    rows = [
        {
            "l": l,
            "magnitude": mag,
            "setup": args.setup,
            "kind": kind,
            "M": _term_count(config),
        }
        for l, mag in points
    ]
    return _finish(args, rows, threshold=_parse_threshold(args.threshold))


def _kind_label(config) -> str:
    k = config.exponent
    return {1: "fourier", 2: "gauss", 3: "kummer"}.get(k) or f"powerk:{k}"


def _term_count(config) -> int:
    for attr in ("arm_count", "pulse_count", "mode_count", "path_count"):
        if hasattr(config, attr):
            return getattr(config, attr)
    raise TypeError(f"not an optical setup: {config!r}")


def _cmd_compare(args) -> bytes:
    threshold = _parse_threshold(args.threshold)
    if args.cap < 1:
        raise CliError("--cap must be >= 1")
    try:
        with open(args.numbers_path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read {args.numbers_path!r}: {exc.strerror}") from None
    numbers = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            n = int(text)
        except ValueError:
            raise CliError(f"{args.numbers_path}:{lineno}: not an integer: {text!r}") from None
        if n < 2:
            raise CliError(f"{args.numbers_path}:{lineno}: N must be >= 2")
        numbers.append(n)
    if not numbers:
        raise CliError(f"{args.numbers_path}: no numbers to compare")
    if args.fmt == "plot-svg":
        raise CliError("--format plot-svg applies to scan and sweep reports")
    rows = []
    for kind in COMPARE_KINDS:
        values = []
        separated = 0
        for n in numbers:
            try:
                values.append(min_discriminating_terms(n, kind, threshold, cap=args.cap))
                separated += 1
            except NotSeparatedError:
                if not args.allow_unseparated:
                    raise
                values.append(args.cap)
        rows.append(
            {
                "kind": str(kind),
                "median_min_terms": float(statistics.median(values)),
                "separated": separated,
                "samples": len(numbers),
                "threshold": threshold,
                "cap": args.cap,
            }
        )
    return _finish(args, rows)


_COMMANDS = {
    "factor": _cmd_factor,
    "scan": _cmd_scan,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def run_command(arguments: Sequence[str]) -> tuple[int, bytes]:
    """Run one CLI invocation; returns (exit status, bytes for stdout).

    When --out is given the report goes to that file and stdout stays
    empty.  Diagnostics are printed to stderr.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(list(arguments))
    except SystemExit as exc:
        return (int(exc.code or 0), b"")
    try:
        payload = _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return (2, b"")
    except NotSeparatedError as exc:
        print(f"not separated: {exc}", file=sys.stderr)
        return (3, b"")
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: --out: cannot write {args.out!r}: {exc.strerror}",
                  file=sys.stderr)
            return (2, b"")
        return (0, b"")
    return (0, payload)


def main(argv: Sequence[str] | None = None) -> int:
    status, payload = run_command(sys.argv[1:] if argv is None else argv)
    if payload:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return status


if __name__ == "__main__":
    raise SystemExit(main())
