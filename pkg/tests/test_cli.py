import json
from pathlib import Path

import numpy as np
import pytest

from tutorprof.cli import main
from tutorprof.saliency import write_pgm_stream
from tutorprof.score_model import parse_score_file, serialize_score_series
from tutorprof.smoothing import smooth
from tutorprof.synth import generate_clip
from tutorprof.decoder import ExecutionPath

FIXTURES = Path(__file__).parent / "fixtures"


def write_clip(tmp_path, path=ExecutionPath.GAMMA, seed=7, name=None):
    series, _ = generate_clip(path, 2, 24, noise=0.0, seed=seed)
    target = tmp_path / (name or f"{series.video_id}.json")
    target.write_text(serialize_score_series(series))
    return target, series


def test_no_arguments_prints_usage_and_exits_1(capsys):
    assert main([]) == 1
    err = capsys.readouterr().err
    assert "usage:" in err


def test_unknown_subcommand_exits_1(capsys):
    assert main(["frobnicate"]) == 1
    assert "usage:" in capsys.readouterr().err


def test_unknown_flag_exits_1(capsys):
    assert main(["decode", "--wat", "x.json"]) == 1
    assert "usage:" in capsys.readouterr().err


def test_missing_file_is_io_error(capsys):
    assert main(["decode", "does-not-exist.json"]) == 2
    assert "i/o error" in capsys.readouterr().err


def test_invalid_score_file_is_validation_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"video_id": "v", "fps": 2}')
    assert main(["decode", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_decode_gamma_clip(tmp_path, capsys):
    clip, _ = write_clip(tmp_path)
    assert main(["decode", str(clip)]) == 0
    line = json.loads(capsys.readouterr().out.strip())
    assert line["path"] == "gamma"
    assert line["match"] is not None
    assert line["confidence"] > 0.9


def test_decode_many_files_preserves_order(tmp_path, capsys):
    paths = [ExecutionPath.ALPHA, ExecutionPath.EPSILON, ExecutionPath.DELTA]
    files = [str(write_clip(tmp_path, p, seed=i)[0]) for i, p in enumerate(paths)]
    assert main(["decode", "--jobs", "3", *files]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.strip().splitlines()]
    assert [l["path"] for l in lines] == ["alpha", "epsilon", "delta"]


def test_smooth_command_round_trip(tmp_path, capsys):
    clip, series = write_clip(tmp_path)
    assert main(["smooth", str(clip), "--window-seconds", "1.0"]) == 0
    out = parse_score_file(capsys.readouterr().out)
    assert out == smooth(series, 1.0)


def test_saliency_command(tmp_path, capsys):
    rng = np.random.default_rng(3)
    frames = np.stack(
        [
            np.zeros((4, 4), dtype=np.uint8),
            np.zeros((4, 4), dtype=np.uint8),
            np.full((4, 4), 200, dtype=np.uint8),
        ]
    )
    pgm = tmp_path / "frames.pgm"
    pgm.write_bytes(write_pgm_stream(frames))
    assert main(["saliency", str(pgm), "--tau", "0.1"]) == 0
    assert json.loads(capsys.readouterr().out) == [0, 2]


def test_synth_writes_clips_and_manifest(tmp_path, capsys):
    out_dir = tmp_path / "clips"
    code = main(
        [
            "synth",
            "--path", "gamma",
            "--fps", "2",
            "--frames", "24",
            "--seed", "7",
            "--count", "3",
            "--out", str(out_dir),
        ]
    )
    assert code == 0
    manifest = (out_dir / "manifest.csv").read_text().strip().splitlines()
    assert manifest[0] == "video_id,path"
    assert len(manifest) == 4
    for row in manifest[1:]:
        vid, path = row.split(",")
        assert path == "gamma"
        series = parse_score_file((out_dir / f"{vid}.json").read_bytes())
        assert series.video_id == vid


def test_synth_accepts_greek_alias(tmp_path):
    out_dir = tmp_path / "clips"
    assert (
        main(
            [
                "synth",
                "--path", "γ",
                "--fps", "2",
                "--frames", "24",
                "--out", str(out_dir),
            ]
        )
        == 0
    )
    assert "gamma" in (out_dir / "manifest.csv").read_text()


def test_end_to_end_synth_decode_evaluate_profile(tmp_path, capsys):
    out_dir = tmp_path / "clips"
    for i, name in enumerate(["alpha", "beta", "gamma", "delta", "epsilon"]):
        assert (
            main(
                [
                    "synth",
                    "--path", name,
                    "--fps", "3",
                    "--frames", "30",
                    "--seed", str(100 + i),
                    "--out", str(out_dir / name),
                ]
            )
            == 0
        )
    capsys.readouterr()

    clip_files = sorted(str(p) for p in out_dir.glob("*/synth-*.json"))
    preds_path = tmp_path / "preds.jsonl"
    assert main(["decode", *clip_files, "--out", str(preds_path)]) == 0

    truth_path = tmp_path / "truth.csv"
    rows = ["video_id,path"]
    for sub in sorted(out_dir.iterdir()):
        rows.extend((sub / "manifest.csv").read_text().strip().splitlines()[1:])
    truth_path.write_text("\n".join(rows) + "\n")

    assert main(["evaluate", "--truth", str(truth_path), "--pred", str(preds_path)]) == 0
    text = capsys.readouterr().out
    assert "confusion matrix" in text
    assert "100.00" in text  # noise-free decode is perfect

    meta_path = tmp_path / "meta.csv"
    meta_rows = ["video_id,views,rating"]
    for row in rows[1:]:
        vid = row.split(",")[0]
        meta_rows.append(f"{vid},10,")
    meta_path.write_text("\n".join(meta_rows) + "\n")
    assert (
        main(
            [
                "profile",
                "--pred", str(preds_path),
                "--meta", str(meta_path),
                "--scheme", "views",
            ]
        )
        == 0
    )
    profile = json.loads(capsys.readouterr().out)
    assert profile["scheme"] == "views"
    assert sum(profile["weights"].values()) == pytest.approx(1.0)
    assert profile["weights"]["gamma"] == pytest.approx(0.2)


def make_table_fixture_files(tmp_path):
    doc = json.loads((FIXTURES / "video_level_confusion.json").read_text())
    labels = doc["labels"]
    truth_rows = ["video_id,path"]
    pred_lines = []
    k = 0
    for i, truth_label in enumerate(labels):
        for j, pred_label in enumerate(labels):
            for _ in range(doc["counts"][i][j]):
                vid = f"clip{k:03d}"
                truth_rows.append(f"{vid},{truth_label}")
                pred_lines.append(
                    json.dumps(
                        {
                            "video_id": vid,
                            "path": pred_label,
                            "confidence": 0.9,
                            "match": None,
                        }
                    )
                )
                k += 1
    truth = tmp_path / "truth.csv"
    truth.write_text("\n".join(truth_rows) + "\n")
    preds = tmp_path / "preds.jsonl"
    preds.write_text("\n".join(pred_lines) + "\n")
    ap_values = tmp_path / "ap.json"
    ap_values.write_text(json.dumps(dict(zip(labels, doc["ap"]))))
    return truth, preds, ap_values, doc


def test_evaluate_reproduces_published_video_table(tmp_path, capsys):
    truth, preds, ap_values, doc = make_table_fixture_files(tmp_path)
    json_out = tmp_path / "metrics.json"
    code = main(
        [
            "evaluate",
            "--truth", str(truth),
            "--pred", str(preds),
            "--ap-values", str(ap_values),
            "--json-out", str(json_out),
        ]
    )
    assert code == 0
    text = capsys.readouterr().out
    assert "mAP: 94.42%" in text
    assert "98.67" in text and "97.37" in text and "98.01" in text

    saved = json.loads(json_out.read_text())
    assert saved["map"] == pytest.approx(0.9442, abs=1e-4)
    for i, label in enumerate(doc["labels"]):
        got = saved["metrics"][label]
        assert 100 * got["recall"] == pytest.approx(doc["recall"][i], abs=0.01)
        assert 100 * got["precision"] == pytest.approx(doc["precision"][i], abs=0.01)
    assert saved["confusion"] == doc["counts"]


def test_evaluate_rejects_missing_predictions(tmp_path, capsys):
    truth = tmp_path / "truth.csv"
    truth.write_text("video_id,path\nv1,alpha\n")
    preds = tmp_path / "preds.jsonl"
    preds.write_text("")
    assert main(["evaluate", "--truth", str(truth), "--pred", str(preds)]) == 1
    assert "no prediction" in capsys.readouterr().err


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
