"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 bad input or arguments,
3 state invariant violated, 4 closed-form ratio undefined for the Bloch vector.
"""
import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import channels
from .decomposition import tilde_decompose
from .errors import BadParameter, InvalidState, SingularRatio, TradeoffError
from .measures import report
from .states import FanoForm, TwoQubitState, from_fano
from .verify import all_passed, run_verification

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_SINGULAR = 4

COMMANDS = ("analyze", "decompose", "channel", "figure1", "verify")


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    command: str
    input_path: str | None = None
    bloch: tuple | None = None
    kind: channels.ChannelKind | None = None
    steps: int = channels.DEFAULT_STEPS
    samples: int = 10000
    seed: int = 42
    output_path: str | None = None
    format: str | None = None


def _parse_bloch(text):
    try:
        parts = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse Bloch vector {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("Bloch vector needs exactly three components a1,a2,a3")
    return parts


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coherence-tradeoff",
        description="Concurrence, first-order coherence and intrinsic concurrence of two-qubit states.",
    )
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--input", dest="input_path", help="state JSON (or Fano JSON) file")
    parser.add_argument("--bloch", type=_parse_bloch, help="Bloch vector of qubit A as a1,a2,a3")
    parser.add_argument("--kind", choices=[k.value for k in channels.ChannelKind])
    parser.add_argument("--steps", type=int, default=channels.DEFAULT_STEPS)
    parser.add_argument("--samples", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", dest="output_path", help="output file (figure1: file prefix)")
    parser.add_argument("--format", choices=("json", "csv"))
    return parser


def config_from_args(args):
    cfg = CommandConfig(
        command=args.command,
        input_path=args.input_path,
        bloch=args.bloch,
        kind=channels.ChannelKind.parse(args.kind) if args.kind else None,
        steps=args.steps,
        samples=args.samples,
        seed=args.seed,
        output_path=args.output_path,
        format=args.format,
    )
    if cfg.steps < 2:
        raise UsageError("--steps must be at least 2")
    if cfg.samples < 1:
        raise UsageError("--samples must be at least 1")
    if cfg.command in ("analyze", "decompose") and not cfg.input_path:
        raise UsageError(f"--input is required for {cfg.command}")
    if cfg.command in ("channel", "figure1") and cfg.bloch is None:
        raise UsageError(f"--bloch is required for {cfg.command}")
    if cfg.command == "channel" and cfg.kind is None:
        raise UsageError("--kind is required for channel")
    return cfg


def dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def load_state(path):
    """Read a state from the state JSON or the Fano JSON format.

    Raises ``ValueError`` on anything unparsable and :class:`InvalidState`
    when the matrix is not a density matrix.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: expected a JSON object")
    try:
        if "a" in obj and "t" in obj:
            return from_fano(FanoForm.from_dict(obj))
        return TwoQubitState.from_dict(obj)
    except InvalidState as exc:
        if exc.invariant in ("shape", "finite"):
            raise ValueError(str(exc)) from None
        raise
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: malformed state ({exc!r})") from None


def _emit(text, path, out):
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def cmd_analyze(cfg, out):
    rep = report(load_state(cfg.input_path))
    if cfg.format == "csv":
        d = rep.to_dict()
        lambdas = d.pop("lambdas")
        header = list(d) + ["lambda1", "lambda2", "lambda3", "lambda4"]
        values = [channels.fmt(v) if isinstance(v, float) else str(v) for v in d.values()]
        values += [channels.fmt(v) for v in lambdas]
        _emit(",".join(header) + "\n" + ",".join(values) + "\n", cfg.output_path, out)
    else:
        _emit(dump_json(rep.to_dict()), cfg.output_path, out)
    return EXIT_OK


def cmd_decompose(cfg, out):
    if cfg.format == "csv":
        raise UsageError("decompose only writes JSON")
    ens = tilde_decompose(load_state(cfg.input_path))
    _emit(dump_json(ens.to_dict()), cfg.output_path, out)
    return EXIT_OK


def cmd_channel(cfg, out):
    sw = channels.sweep(cfg.kind, cfg.bloch, cfg.steps)
    text = dump_json(sw.summary()) if cfg.format == "json" else sw.to_csv()
    _emit(text, cfg.output_path, out)
    return EXIT_OK


def figure1_paths(prefix):
    base = prefix[:-4] if prefix.endswith(".csv") else prefix
    return {kind: f"{base}_{kind.value}.csv" for kind in channels.ChannelKind}


def cmd_figure1(cfg, out):
    """One sweep CSV per channel; the (C, D) columns trace the four curves."""
    if cfg.format == "json":
        raise UsageError("figure1 only writes CSV")
    sweeps = [channels.sweep(kind, cfg.bloch, cfg.steps) for kind in channels.ChannelKind]
    if cfg.output_path:
        paths = figure1_paths(cfg.output_path)
        for sw in sweeps:
            Path(paths[sw.kind]).write_text(sw.to_csv())
    else:
        for sw in sweeps:
            out.write(f"# channel: {sw.kind.value}\n")
            out.write(sw.to_csv())
    return EXIT_OK


def cmd_verify(cfg, out):
    if cfg.format == "csv":
        raise UsageError("verify only writes JSON")
    summary = run_verification(cfg.samples, cfg.seed)
    _emit(dump_json({"seed": cfg.seed, "suites": summary}), cfg.output_path, out)
    return EXIT_OK if all_passed(summary) else EXIT_FAILED


HANDLERS = {
    "analyze": cmd_analyze,
    "decompose": cmd_decompose,
    "channel": cmd_channel,
    "figure1": cmd_figure1,
    "verify": cmd_verify,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return HANDLERS[cfg.command](cfg, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except InvalidState as exc:
        err.write(f"error: invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except SingularRatio as exc:
        err.write(f"error: singular ratio on axis {exc.axis}: {exc}\n")
        return EXIT_SINGULAR
    except (ValueError, BadParameter) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except TradeoffError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
