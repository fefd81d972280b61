"""Command-line pipeline: saliency, smooth, decode, evaluate, profile, synth.

Every subcommand is a thin wrapper over a library function and speaks
files: score JSON in, JSON or JSON-lines out, so stages compose through
the shell. Exit codes: 0 success, 1 validation error (including usage),
2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .decoder import ExecutionPath, PathPrediction, decode_clip
from .metrics import (
    RankedPredictionList,
    accumulate,
    average_precision,
    format_percent,
    precision_recall_f1,
)
from .profiles import SCHEMES, ProfileError, build_profile, load_meta_csv
from .saliency import read_pgm_stream, select_salient
from .score_model import ScoreFileError, parse_score_file, serialize_score_series
from .smoothing import smooth
from .synth import generate_clip, min_duration

PATH_NAMES = tuple(p.value for p in ExecutionPath)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems count as validation errors (exit 1), not
    # argparse's default exit 2, which is reserved for I/O failures
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_saliency(args: argparse.Namespace) -> int:
    frames = read_pgm_stream(_read_bytes(args.frames))
    indices = select_salient(frames, tau=args.tau)
    _write_text(args.out, json.dumps(indices))
    return 0


def _cmd_smooth(args: argparse.Namespace) -> int:
    series = parse_score_file(_read_bytes(args.score_file))
    smoothed = smooth(series, window_seconds=args.window_seconds)
    _write_text(args.out, serialize_score_series(smoothed))
    return 0


def _prediction_line(pred: PathPrediction) -> str:
    return json.dumps(
        {
            "video_id": pred.video_id,
            "path": pred.path.value,
            "confidence": pred.confidence,
            "match": None if pred.match is None else [pred.match.start, pred.match.end],
        }
    )


def _cmd_decode(args: argparse.Namespace) -> int:
    def decode_file(path: str) -> str:
        return _prediction_line(decode_clip(parse_score_file(_read_bytes(path))))

    jobs = args.jobs or min(len(args.score_files), os.cpu_count() or 1)
    if jobs > 1 and len(args.score_files) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            lines = list(pool.map(decode_file, args.score_files))
    else:
        lines = [decode_file(p) for p in args.score_files]
    _write_text(args.out, "\n".join(lines))
    return 0


def _load_truth_csv(text: str) -> list[tuple[str, str]]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"video_id", "path"}.issubset(
        reader.fieldnames
    ):
        raise ValueError(
            f"truth CSV needs columns ['video_id', 'path'], got {reader.fieldnames}"
        )
    rows = []
    for row in reader:
        path = ExecutionPath.from_name(row["path"])
        rows.append((row["video_id"], path.value))
    return rows


def _load_predictions_jsonl(text: str) -> dict[str, tuple[str, float]]:
    preds: dict[str, tuple[str, float]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"predictions line {lineno}: malformed JSON: {exc}")
        try:
            video_id = doc["video_id"]
            path = ExecutionPath.from_name(doc["path"]).value
            confidence = float(doc.get("confidence", 0.0))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"predictions line {lineno}: {exc}") from None
        preds[video_id] = (path, confidence)
    return preds


def _evaluate_ap(
    truth_pairs: list[tuple[str, str]],
    preds: dict[str, tuple[str, float]],
) -> dict[str, float | None]:
    """Detection-style AP per class over the emitted predictions."""
    ap: dict[str, float | None] = {}
    for name in PATH_NAMES:
        entries = [
            (conf, truth == name)
            for (vid, truth) in truth_pairs
            for (pred, conf) in [preds[vid]]
            if pred == name
        ]
        positives = sum(1 for _, truth in truth_pairs if truth == name)
        if not entries or positives == 0:
            ap[name] = None
        else:
            ap[name] = average_precision(
                RankedPredictionList(tuple(entries), positives)
            )
    return ap


def _cmd_evaluate(args: argparse.Namespace) -> int:
    truth_pairs = _load_truth_csv(_read_text(args.truth))
    preds = _load_predictions_jsonl(_read_text(args.pred))
    missing = [vid for vid, _ in truth_pairs if vid not in preds]
    if missing:
        raise ValueError(f"no prediction for video(s): {missing[:5]}")
    extra = set(preds) - {vid for vid, _ in truth_pairs}
    if extra:
        raise ValueError(f"prediction(s) without truth: {sorted(extra)[:5]}")

    pairs = [(truth, preds[vid][0]) for vid, truth in truth_pairs]
    cm = accumulate(pairs, PATH_NAMES)
    per_class = precision_recall_f1(cm)

    if args.ap_values:
        published = json.loads(_read_text(args.ap_values))
        ap = {
            name: (
                float(published[name]) / 100.0 if name in published else None
            )
            for name in PATH_NAMES
        }
    else:
        ap = _evaluate_ap(truth_pairs, preds)
    defined = [v for v in ap.values() if v is not None]
    mean_ap = sum(defined) / len(defined) if len(defined) == len(PATH_NAMES) else None

    lines = ["confusion matrix (rows = truth, columns = predicted)"]
    header = " ".join(f"{name:>9}" for name in PATH_NAMES)
    lines.append(f"{'':>9} {header}")
    for i, name in enumerate(PATH_NAMES):
        row = " ".join(f"{int(v):>9}" for v in cm.counts[i])
        lines.append(f"{name:>9} {row}")
    lines.append("")
    lines.append(
        f"{'class':>9} {'precision':>10} {'recall':>8} {'f1':>8} {'AP':>8}"
    )
    for name in PATH_NAMES:
        m = per_class[name]
        lines.append(
            f"{name:>9} {format_percent(m.precision):>10} "
            f"{format_percent(m.recall):>8} {format_percent(m.f1):>8} "
            f"{format_percent(ap[name]):>8}"
        )
    lines.append("")
    lines.append(f"mAP: {format_percent(mean_ap)}%" if mean_ap is not None else "mAP: n/a")
    _write_text(None, "\n".join(lines))

    if args.json_out:
        doc = {
            "labels": list(PATH_NAMES),
            "confusion": [[int(v) for v in row] for row in cm.counts],
            "metrics": {
                name: {
                    "precision": per_class[name].precision,
                    "recall": per_class[name].recall,
                    "f1": per_class[name].f1,
                }
                for name in PATH_NAMES
            },
            "ap": ap,
            "map": mean_ap,
        }
        Path(args.json_out).write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return 0


def _cmd_profile(args: argparse.Namespace) -> int:
    preds_raw = _load_predictions_jsonl(_read_text(args.pred))
    meta = load_meta_csv(_read_text(args.meta))
    predictions = [
        PathPrediction(
            path=ExecutionPath(path), match=None, confidence=conf, video_id=vid
        )
        for vid, (path, conf) in preds_raw.items()
    ]
    profile = build_profile(predictions, meta, scheme=args.scheme)
    _write_text(args.out, json.dumps(profile.to_dict(), indent=2))
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = ExecutionPath.from_name(args.path)
    if args.frames < min_duration(args.fps):
        raise ValueError(
            f"--frames {args.frames} too short at {args.fps} fps; "
            f"need at least {min_duration(args.fps)}"
        )
    manifest_rows = []
    for i in range(args.count):
        series, truth = generate_clip(
            path, args.fps, args.frames, noise=args.noise, seed=args.seed + i
        )
        clip_path = out_dir / f"{series.video_id}.json"
        clip_path.write_text(serialize_score_series(series), encoding="utf-8")
        manifest_rows.append((series.video_id, truth.value))
    manifest = out_dir / "manifest.csv"
    with manifest.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["video_id", "path"])
        writer.writerows(manifest_rows)
    _write_text(
        None,
        json.dumps(
            {"clips": args.count, "out": str(out_dir), "manifest": str(manifest)}
        ),
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tutorprof",
        description="Mine user execution paths and usage profiles from "
        "tutorial-video classifier scores.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("saliency", help="select salient frames from a PGM stream")
    p.add_argument("frames", help="concatenated binary PGM (P5) file, or - for stdin")
    p.add_argument("--tau", type=float, default=0.02, help="difference threshold")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_saliency)

    p = sub.add_parser("smooth", help="average-smooth a score file")
    p.add_argument("score_file", help="score JSON file, or - for stdin")
    p.add_argument("--window-seconds", type=float, default=1.0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("decode", help="decode score files to execution paths")
    p.add_argument("score_files", nargs="+", help="score JSON files")
    p.add_argument("--jobs", type=int, default=0, help="max parallel decodes")
    p.add_argument("--out", help="output path for JSON lines (default stdout)")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("evaluate", help="score predictions against ground truth")
    p.add_argument("--truth", required=True, help="CSV with video_id,path")
    p.add_argument("--pred", required=True, help="JSON-lines decode output")
    p.add_argument(
        "--ap-values",
        help="JSON file of published per-class AP percentages to use "
        "instead of recomputing AP from the predictions",
    )
    p.add_argument("--json-out", help="also write metrics as JSON to this path")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("profile", help="build a usage profile from predictions")
    p.add_argument("--pred", required=True, help="JSON-lines decode output")
    p.add_argument("--meta", required=True, help="CSV with video_id,views,rating")
    p.add_argument("--scheme", choices=SCHEMES, default="views")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("synth", help="generate synthetic ground-truth clips")
    p.add_argument("--path", required=True, help=f"one of {PATH_NAMES}")
    p.add_argument("--fps", type=float, required=True)
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="clips to generate")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ScoreFileError, ProfileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
