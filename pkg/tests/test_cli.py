from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from circle_reps.cli import main
from circle_reps.io.codecs import family_to_dict
from circle_reps.model.blocks import WeightMultiset
from circle_reps.model.space import OrderedSpace
from circle_reps.spectral.family import sample_family
from circle_reps.utils.logging_utils import configure_logging

ROOT = Path(__file__).parents[1]
SAMPLES = ROOT / "data" / "samples"


@pytest.fixture(autouse=True)
def _repo_cwd(monkeypatch: pytest.MonkeyPatch) -> None:
    # 既定設定とログ設定は相対パスで解決される
    monkeypatch.chdir(ROOT)


def run(capsys: pytest.CaptureFixture[str], *argv: str | Path) -> tuple[int, Any]:
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_classify_worked_example(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "classify", "--weights", SAMPLES / "worked_weights.json")
    assert code == 0
    assert report["fixed_dim"] == 1
    entries = {
        (tuple(e["kappa"]), e["layer"]): [a["tuple"] for a in e["measure"]["atoms"]]
        for e in report["presentation"]["entries"]
    }
    assert entries == {
        ((1,), 1): [["a"]],
        ((1,), 2): [["a"]],
        ((1, 1), 1): [["a", "b"]],
    }


def test_classify_csv_matches_json(capsys: pytest.CaptureFixture[str]) -> None:
    _, from_json = run(capsys, "classify", "--weights", SAMPLES / "worked_weights.json")
    _, from_csv = run(capsys, "classify", "--weights", SAMPLES / "worked_weights.csv")
    assert from_csv == from_json


def test_classify_output_is_a_valid_presentation(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    out = tmp_path / "classified.json"
    code, _ = run(capsys, "-o", out, "classify", "--weights", SAMPLES / "worked_weights.json")
    assert code == 0
    assert out.exists()

    code, report = run(capsys, "check-presentation", out)
    assert code == 0
    assert report["validation"]["valid"] is True

    code, report = run(capsys, "minimal-measure", out)
    assert code == 0
    assert [a["tuple"] for a in report["atoms"]] == [["a"], ["b"]]


def test_classify_writes_layer_table(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    table = tmp_path / "layers.csv"
    code, _ = run(
        capsys, "classify", "--weights", SAMPLES / "worked_weights.json", "--table", table
    )
    assert code == 0
    assert table.exists()


def test_classify_at_depth(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "classify", "--weights", SAMPLES / "dyadic_weights.json", "--depth", "2"
    )
    assert code == 0
    assert report["fixed_dim"] == 0
    assert report["presentation"]["depth"] == 2


def test_classify_from_homomorphism(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys,
        "classify",
        "--from-homomorphism",
        SAMPLES / "integral_operator.json",
        "--nu",
        SAMPLES / "nu_uvw.json",
    )
    assert code == 0
    assert report["fixed_dim"] == 0
    kappas = sorted(tuple(e["kappa"]) for e in report["presentation"]["entries"])
    assert kappas == [(-1, 1), (1,), (1, 1)]


def test_classify_from_homomorphism_requires_nu() -> None:
    with pytest.raises(SystemExit) as info:
        main(["classify", "--from-homomorphism", str(SAMPLES / "integral_operator.json")])
    assert info.value.code == 2


def test_check_presentation_reports_chain_violation(
    capsys: pytest.CaptureFixture[str],
) -> None:
    code, report = run(capsys, "check-presentation", SAMPLES / "chain_violation.json")
    assert code == 1
    assert report["validation"]["valid"] is False
    assert report["error"]["witness"] == {
        "condition": "A4",
        "kappa": [1],
        "layer": 2,
        "atom": ["q"],
    }


def test_check_presentation_continuous_labels(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "check-presentation", SAMPLES / "chain_violation.json", "--continuous"
    )
    assert code == 1
    assert report["error"]["witness"]["condition"] == "B3"


def test_compare_ignores_densities(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    first = tmp_path / "first.json"
    run(capsys, "-o", first, "classify", "--weights", SAMPLES / "worked_weights.json")
    doc = json.loads(first.read_text(encoding="utf-8"))
    for entry in doc["presentation"]["entries"]:
        for atom in entry["measure"]["atoms"]:
            atom["weight"] = "7/3"
    second = tmp_path / "second.json"
    second.write_text(json.dumps(doc), encoding="utf-8")

    code, report = run(capsys, "compare", first, second)
    assert code == 0
    assert report == {"equivalent": True}


def test_compare_reports_witness(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "compare", SAMPLES / "chain_violation.json", SAMPLES / "chain_violation.json"
    )
    # 不正な presentation は比較前に拒否される
    assert code == 1
    assert report["error"]["type"] == "ConditionViolationError"


def test_normalize_chain(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "normalize-chain", "--measures", SAMPLES / "unchained_measures.json"
    )
    assert code == 0
    assert report["chain"] is True
    first, second = report["measures"]
    assert first["atoms"] == [
        {"tuple": ["a"], "weight": "1/1"},
        {"tuple": ["b"], "weight": "1/2"},
    ]
    assert second["atoms"] == []


def test_kwapien_collapse_non_integral(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "kwapien-collapse", SAMPLES / "half_operator.json")
    assert code == 1
    assert report["integral"] is False
    assert report["rows"] == {"y": {"a": "1/2", "b": "1/2"}}
    assert report["error"]["witness"] == {"y": "y", "indicator": ["a"], "value": "1/2"}


def test_kwapien_collapse_integral(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "kwapien-collapse", SAMPLES / "integral_operator.json")
    assert code == 0
    assert report["integral"] is True
    assert report["matrix"] == {
        "rows": ["u", "v", "w"],
        "columns": ["a", "b", "c"],
        "matrix": [[1, 0, 1], [1, 0, 0], [0, 1, -1]],
    }


def test_diagonalize_planted_weights(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys,
        "diagonalize",
        "--from-weights",
        SAMPLES / "worked_weights.json",
        "--seed",
        "3",
    )
    assert code == 0
    assert report["family"]["ok"] is True
    assert report["diagonalization"]["dim"] == 4
    assert report["weights"]["vectors"] == [
        {"m": [0, 0], "multiplicity": 1},
        {"m": [1, 0], "multiplicity": 2},
        {"m": [1, 1], "multiplicity": 1},
    ]


def test_diagonalize_needs_one_source() -> None:
    with pytest.raises(SystemExit) as info:
        main(["diagonalize"])
    assert info.value.code == 2


def test_invalid_tolerance_option() -> None:
    with pytest.raises(SystemExit):
        main(
            [
                "diagonalize",
                "--from-weights",
                str(SAMPLES / "worked_weights.json"),
                "--tol",
                "speed=1",
            ]
        )


def test_coarsen_dyadic_weights(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "coarsen", "--weights", SAMPLES / "dyadic_weights.json", "--depth", "1"
    )
    assert code == 0
    assert report == {
        "space": ["0", "1"],
        "depth": 1,
        "vectors": [
            {"m": [0, 0], "multiplicity": 1},
            {"m": [1, 1], "multiplicity": 1},
            {"m": [2, 0], "multiplicity": 2},
        ],
    }


def test_coarsen_to_finer_depth_is_a_domain_error(
    capsys: pytest.CaptureFixture[str],
) -> None:
    code, report = run(
        capsys, "coarsen", "--weights", SAMPLES / "dyadic_weights.json", "--depth", "3"
    )
    assert code == 1
    assert report["error"]["type"] == "SpaceMismatchError"


def test_missing_input_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "classify", "--weights", tmp_path / "nope.json")
    assert code == 2
    assert report["error"]["type"] == "FileNotFoundError"


def test_malformed_input(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text('{"space": ["a"], "vectors": [{"m": [0.5]}]}', encoding="utf-8")
    code, report = run(capsys, "classify", "--weights", bad)
    assert code == 2
    assert report["error"]["type"] == "InputFormatError"


def test_classify_rejects_mismatched_depth(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(
        capsys, "classify", "--weights", SAMPLES / "dyadic_weights.json", "--depth", "3"
    )
    assert code == 2
    assert report["error"]["type"] == "InputFormatError"


def test_classify_from_unitaries_with_plot(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    weights = WeightMultiset(
        space=OrderedSpace(points=("a", "b")),
        entries={(1, 0): 2, (1, 1): 1, (0, 0): 1},
    )
    family = sample_family(weights, 64, 16, np.random.default_rng(5))
    path = tmp_path / "family.json"
    path.write_text(json.dumps(family_to_dict(family)), encoding="utf-8")
    plots = tmp_path / "plots"

    code, report = run(
        capsys, "classify", "--from-unitaries", path, "--seed", "1", "--plot-dir", plots
    )
    assert code == 0
    assert report["fixed_dim"] == 1
    entries = {
        (tuple(e["kappa"]), e["layer"]): [a["tuple"] for a in e["measure"]["atoms"]]
        for e in report["presentation"]["entries"]
    }
    assert entries == {
        ((1,), 1): [["a"]],
        ((1,), 2): [["a"]],
        ((1, 1), 1): [["a", "b"]],
    }
    assert (plots / "layer_profile.png").exists()


def test_diagonalize_writes_phase_plot(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    plots = tmp_path / "plots"
    code, _ = run(
        capsys,
        "diagonalize",
        "--from-weights",
        SAMPLES / "worked_weights.json",
        "--seed",
        "3",
        "--plot-dir",
        plots,
    )
    assert code == 0
    assert (plots / "phase_spectrum.png").exists()


def test_log_level_lowers_handlers() -> None:
    config = Path("config/logging.yaml")
    configure_logging(config, level="DEBUG")
    try:
        pkg = logging.getLogger("circle_reps")
        assert pkg.level == logging.DEBUG
        assert pkg.handlers
        assert all(h.level == logging.DEBUG for h in pkg.handlers)
    finally:
        configure_logging(config)
