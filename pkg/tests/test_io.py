from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from circle_reps.classification.classifier import classify
from circle_reps.config_loader import load_config, resolve_config
from circle_reps.errors import InputFormatError
from circle_reps.io.codecs import (
    classification_to_dict,
    family_from_dict,
    family_to_dict,
    matrix_from_dict,
    matrix_to_dict,
    measures_from_doc,
    operator_from_dict,
    operator_to_dict,
    presentation_from_dict,
    presentation_to_dict,
    weights_from_dict,
)
from circle_reps.io.readers import read_json, read_weights
from circle_reps.io.writers import weights_to_table, write_report, write_table
from circle_reps.model.blocks import WeightMultiset
from circle_reps.model.space import DyadicSpace, OrderedSpace
from circle_reps.operators.kwapien import (
    HomomorphismMatrix,
    KwapienOperator,
    KwapienTerm,
    collapse,
)
from circle_reps.spectral.family import UnitaryFamily
from circle_reps.utils.rationals import format_rational, parse_rational

SAMPLES = Path(__file__).parents[1] / "data" / "samples"
AB = OrderedSpace(points=("a", "b"))
WORKED = WeightMultiset(space=AB, entries={(1, 0): 2, (1, 1): 1, (0, 0): 1})


def test_read_weights_json_and_csv_agree() -> None:
    from_json = read_weights(SAMPLES / "worked_weights.json")
    from_csv = read_weights(SAMPLES / "worked_weights.csv")
    assert from_json == WORKED
    assert from_csv == WORKED


def test_read_weights_dyadic_document() -> None:
    w = read_weights(SAMPLES / "dyadic_weights.json")
    assert isinstance(w.space, DyadicSpace)
    assert w.space.depth == 2
    assert w.entries == {(0, 1, 0, 1): 1, (1, -1, 0, 0): 1, (2, 0, 0, 0): 2}


def test_weights_table_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "weights.parquet"
    write_table(weights_to_table(WORKED), path)
    assert read_weights(path) == WORKED

    csv_path = tmp_path / "weights.csv"
    write_table(weights_to_table(WORKED), csv_path)
    assert read_weights(csv_path) == WORKED


def test_read_weights_table_without_multiplicity(tmp_path: Path) -> None:
    path = tmp_path / "plain.csv"
    path.write_text("x,y\n1,2\n1,2\n0,0\n", encoding="utf-8")
    w = read_weights(path)
    assert w.space.points == ("x", "y")
    assert w.entries == {(0, 0): 1, (1, 2): 2}


def test_read_weights_rejects_bad_tables(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,x\n", encoding="utf-8")
    with pytest.raises(InputFormatError):
        read_weights(path)

    with pytest.raises(InputFormatError, match="Unsupported"):
        read_weights(tmp_path / "weights.xlsx")


def test_weights_document_errors() -> None:
    # 指数は整数のみ
    with pytest.raises(InputFormatError):
        weights_from_dict({"space": ["a"], "vectors": [{"m": [1.5]}]})
    with pytest.raises(InputFormatError):
        weights_from_dict({"space": ["a", "b"], "vectors": [{"m": [1]}]})
    with pytest.raises(InputFormatError):
        weights_from_dict({"space": ["a"], "vectors": [{"m": {"z": 1}}]})
    with pytest.raises(InputFormatError, match="missing"):
        weights_from_dict({"vectors": []})


def test_read_json_reports_invalid_json(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputFormatError):
        read_json(path)


def test_presentation_round_trip() -> None:
    result = classify(WORKED)
    doc = classification_to_dict(result)
    assert doc["fixed_dim"] == 1
    assert presentation_from_dict(doc) == result.canonical
    assert presentation_from_dict(presentation_to_dict(result.canonical)) == result.canonical


def test_presentation_documents_errors() -> None:
    with pytest.raises(InputFormatError, match="declare its space"):
        presentation_from_dict({"entries": []})
    assert presentation_from_dict({"space": ["a"], "entries": []}).entries == {}

    entry = {
        "kappa": [1],
        "layer": 1,
        "measure": {"arity": 1, "atoms": [{"tuple": ["a"], "weight": "1/1"}]},
    }
    with pytest.raises(InputFormatError, match="twice"):
        presentation_from_dict({"space": ["a"], "entries": [entry, entry]})
    with pytest.raises(InputFormatError):
        presentation_from_dict({"space": ["a"], "entries": [{**entry, "kappa": [2, 1]}]})
    with pytest.raises(InputFormatError):
        presentation_from_dict({"space": ["a"], "entries": [{**entry, "kappa": [1, 1]}]})


def test_measure_weights_must_be_exact() -> None:
    doc = {"space": ["a"], "arity": 1, "atoms": [{"tuple": ["a"], "weight": 0.5}]}
    with pytest.raises(InputFormatError):
        measures_from_doc([doc])
    negative = {"space": ["a"], "arity": 1, "atoms": [{"tuple": ["a"], "weight": "-1/2"}]}
    with pytest.raises(InputFormatError):
        measures_from_doc({"measures": [negative]})


def test_sample_measure_list() -> None:
    measures = measures_from_doc(read_json(SAMPLES / "unchained_measures.json"))
    assert [sorted(m.support) for m in measures] == [[("a",)], [("b",)]]


def test_operator_codec_round_trip() -> None:
    op = operator_from_dict(read_json(SAMPLES / "integral_operator.json"))
    assert collapse(op) == {
        "u": {"a": 1, "c": 1},
        "v": {"a": 1},
        "w": {"b": 1, "c": -1},
    }
    again = operator_from_dict(operator_to_dict(op))
    assert collapse(again) == collapse(op)

    with pytest.raises(InputFormatError):
        operator_from_dict(
            {"X": ["a"], "Y": ["y"], "terms": [{"g": {"y": "1/2"}, "sigma": {}}]}
        )


def test_operator_to_dict_formats_rationals() -> None:
    op = KwapienOperator(
        domain=AB,
        codomain=OrderedSpace(points=("y",)),
        terms=(KwapienTerm(g={"y": Fraction(-3, 4)}, sigma={"y": "b"}),),
    )
    assert operator_to_dict(op)["terms"] == [{"g": {"y": "-3/4"}, "sigma": {"y": "b"}}]


def test_matrix_codec() -> None:
    matrix = HomomorphismMatrix(
        rows=OrderedSpace(points=("u", "v")), columns=AB, entries=((1, -2), (0, 3))
    )
    assert matrix_from_dict(matrix_to_dict(matrix)) == matrix
    with pytest.raises(InputFormatError):
        matrix_from_dict({"rows": ["u"], "columns": ["a", "b"], "matrix": [[1]]})


def test_family_codec() -> None:
    u = np.diag(np.exp(2j * np.pi * np.array([0.25, 0.5])))
    family = UnitaryFamily(
        space=OrderedSpace(points=("a",)), matrices=(u,), sample_denominator=8, weight_bound=3
    )
    doc = family_to_dict(family)
    assert doc["header"] == {"space": ["a"], "q": 8, "B": 3}
    again = family_from_dict(doc)
    assert again.dim == 2
    assert np.allclose(again.matrices[0], u)

    with pytest.raises(InputFormatError):
        family_from_dict({"header": {"space": ["a"], "q": 8, "B": 3}, "matrices": [[1, 0]]})
    with pytest.raises(InputFormatError, match="missing"):
        family_from_dict({"header": {"space": ["a"]}, "matrices": []})


def test_parse_rational() -> None:
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2 ") == -2
    assert parse_rational(5) == 5
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)
    for bad in ["0.5", "1e3", "", "1/0", "x", 0.5, True, None]:
        with pytest.raises(InputFormatError):
            parse_rational(bad)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(2)) == "2/1"


def test_write_report(tmp_path: Path) -> None:
    path = tmp_path / "nested" / "report.json"
    write_report({"fixed_dim": 1}, path)
    assert read_json(path) == {"fixed_dim": 1}


def test_resolve_config_merges_sections(tmp_path: Path) -> None:
    cfg_path = tmp_path / "config.yaml"
    cfg_path.write_text(
        "spectral:\n  seed: 7\ntolerances:\n  cluster_tol: 1.0e-6\nextra: 3\n",
        encoding="utf-8",
    )
    cfg = resolve_config(cfg_path)
    assert cfg["spectral"]["seed"] == 7
    assert cfg["spectral"]["sample_denominator"] == 64
    assert cfg["tolerances"]["cluster_tol"] == pytest.approx(1e-6)
    assert cfg["tolerances"]["rounding_tol"] == pytest.approx(1e-6)
    assert cfg["extra"] == 3


def test_load_config_requires_mapping(tmp_path: Path) -> None:
    cfg_path = tmp_path / "config.yaml"
    cfg_path.write_text("- just\n- a list\n", encoding="utf-8")
    with pytest.raises(ValueError, match="mapping"):
        load_config(cfg_path)
