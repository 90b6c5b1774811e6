"""Command-line entry point: analyze WAV files and report their keys.

Exit codes: 0 all inputs analyzed (silence counts as analyzed), 1 at least
one input failed (unreadable, malformed, too short), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .audio_io import WavDecodeError
from .chroma import write_chromagram_csv
from .notation import key_name, to_camelot
from .pipeline import Analysis, analyze_file
from .profiles import KeyProfileSet, build_profile_set, default_profile_set, load_profiles_file
from .spectral import InputTooShortError, StftConfig, write_spectrogram_csv

__all__ = ["build_parser", "run", "main"]


def _power_of_two(text: str) -> int:
    value = int(text)
    if value < 1 or value & (value - 1):
        raise argparse.ArgumentTypeError(f"{value} is not a power of two")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keyscope",
        description="Estimate the musical key of WAV recordings.",
    )
    parser.add_argument("paths", nargs="+", metavar="WAV", help="input WAV files")
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    parser.add_argument(
        "--frame-length",
        type=_power_of_two,
        default=4096,
        help="analysis frame length in samples (power of two, default 4096)",
    )
    parser.add_argument(
        "--hop-length",
        type=_positive_int,
        default=512,
        help="hop between frame starts in samples (default 512)",
    )
    parser.add_argument(
        "--camelot",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="include Camelot wheel codes (default on)",
    )
    parser.add_argument("--dump-chroma", metavar="PATH.csv", help="write the chromagram as CSV")
    parser.add_argument(
        "--dump-spectrogram", metavar="PATH.csv", help="write the magnitude spectrogram as CSV"
    )
    parser.add_argument(
        "--profiles", metavar="FILE", help="override the base major/minor key profiles"
    )
    parser.add_argument(
        "--verbose", action="store_true", help="include all 24 correlation scores"
    )
    parser.add_argument(
        "--jobs", type=_positive_int, default=1, help="analyze files in parallel (default 1)"
    )
    return parser


def _load_profiles(parser: argparse.ArgumentParser, path: str | None) -> KeyProfileSet:
    if path is None:
        return default_profile_set()
    try:
        major, minor = load_profiles_file(path)
        return build_profile_set(major, minor)
    except (OSError, ValueError) as exc:
        parser.error(f"--profiles: {exc}")


def _score_labels(profiles: KeyProfileSet) -> list[str]:
    return [key_name(p.tonic, p.mode).text for p in profiles]


def _json_report(path: str, outcome, args, parameters, profiles) -> dict:
    report = {
        "file": path,
        "key": None,
        "camelot": None,
        "correlation": None,
        "margin": None,
        "parameters": parameters,
    }
    if isinstance(outcome, Exception):
        report["error"] = str(outcome)
        return report
    estimate = outcome.estimate
    if estimate is not None:
        report["key"] = key_name(estimate.tonic, estimate.mode).text
        if args.camelot:
            report["camelot"] = to_camelot(estimate.tonic, estimate.mode)
        report["correlation"] = estimate.correlation
        report["margin"] = estimate.margin
        if args.verbose:
            report["scores"] = {
                label: float(score)
                for label, score in zip(_score_labels(profiles), estimate.scores)
            }
    return report


def _text_report(path: str, outcome, args, profiles) -> str:
    if isinstance(outcome, Exception):
        return f"{path}: error: {outcome}"
    estimate = outcome.estimate
    if estimate is None:
        return f"{path}: none (silence)"
    name = key_name(estimate.tonic, estimate.mode).text
    detail = f"corr {estimate.correlation:.4f}, margin {estimate.margin:.4f}"
    if args.camelot:
        detail = f"camelot {to_camelot(estimate.tonic, estimate.mode)}, " + detail
    lines = [f"{path}: {name} ({detail})"]
    if args.verbose:
        lines += [
            f"  {label}: {score:.4f}"
            for label, score in zip(_score_labels(profiles), estimate.scores)
        ]
    return "\n".join(lines)


def _analyze_one(path: str, config: StftConfig, profiles: KeyProfileSet):
    """Analysis on success, the exception object on per-file failure."""
    try:
        return analyze_file(path, config=config, profiles=profiles)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        return exc
    except (WavDecodeError, InputTooShortError) as exc:
        return exc


def run(argv: list[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    out = stdout if stdout is not None else sys.stdout
    try:
        args = parser.parse_args(argv)
        if args.hop_length > args.frame_length:
            parser.error(
                f"--hop-length {args.hop_length} exceeds --frame-length {args.frame_length}"
            )
        if (args.dump_chroma or args.dump_spectrogram) and len(args.paths) != 1:
            parser.error("--dump-chroma/--dump-spectrogram require exactly one input file")
        profiles = _load_profiles(parser, args.profiles)
    except SystemExit as exc:
        return int(exc.code or 0)

    config = StftConfig(frame_length=args.frame_length, hop_length=args.hop_length)
    parameters = {
        "frame_length": config.frame_length,
        "hop_length": config.hop_length,
        "window": config.window,
    }

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(lambda p: _analyze_one(p, config, profiles), args.paths))
    else:
        outcomes = [_analyze_one(path, config, profiles) for path in args.paths]

    for path, outcome in zip(args.paths, outcomes):
        if isinstance(outcome, Analysis):
            if args.dump_chroma:
                write_chromagram_csv(outcome.chromagram, args.dump_chroma)
            if args.dump_spectrogram:
                write_spectrogram_csv(outcome.spectrogram, args.dump_spectrogram)

    if args.format == "json":
        reports = [
            _json_report(path, outcome, args, parameters, profiles)
            for path, outcome in zip(args.paths, outcomes)
        ]
        payload = reports[0] if len(reports) == 1 else reports
        print(json.dumps(payload, indent=2), file=out)
    else:
        for path, outcome in zip(args.paths, outcomes):
            print(_text_report(path, outcome, args, profiles), file=out)

    return 1 if any(isinstance(o, Exception) for o in outcomes) else 0


def main() -> None:
    sys.exit(run())
