from __future__ import annotations

from contextlib import contextmanager
from typing import Any, Iterator, Mapping

import numpy as np

from ..classification.classifier import ClassificationResult
from ..errors import DomainError, InputFormatError
from ..model.blocks import Presentation, Signature, WeightMultiset
from ..model.measure import AtomicMeasure
from ..model.space import DyadicSpace, OrderedSpace
from ..operators.kwapien import HomomorphismMatrix, KwapienOperator, KwapienTerm
from ..spectral.family import UnitaryFamily
from ..utils.rationals import format_rational, parse_rational
from .validators import require_int, require_keys, require_list, require_mapping


@contextmanager
def _parsing(kind: str) -> Iterator[None]:
    try:
        yield
    except (InputFormatError, DomainError):
        raise
    except (ValueError, TypeError, KeyError) as exc:
        msg = f"Invalid {kind} document: {exc}"
        raise InputFormatError(msg) from exc


# spaces


def space_from_doc(points: Any, depth: Any = None) -> OrderedSpace:
    points = require_list(points, "space")
    with _parsing("space"):
        if depth is not None:
            return DyadicSpace(points=tuple(str(p) for p in points), depth=int(depth))
        return OrderedSpace(points=tuple(str(p) for p in points))


def _space_fields(space: OrderedSpace) -> dict[str, Any]:
    data: dict[str, Any] = {"space": list(space.points)}
    if isinstance(space, DyadicSpace):
        data["depth"] = space.depth
    return data


# measures


def measure_to_dict(measure: AtomicMeasure) -> dict[str, Any]:
    return {
        **_space_fields(measure.space),
        "arity": measure.arity,
        "atoms": [
            {"tuple": list(atom), "weight": format_rational(weight)}
            for atom, weight in measure.atoms.items()
        ],
    }


def measure_from_dict(doc: Any, space: OrderedSpace | None = None) -> AtomicMeasure:
    doc = require_mapping(doc, "measure")
    require_keys(doc, ["arity", "atoms"], "measure")
    if space is None:
        require_keys(doc, ["space"], "measure")
        space = space_from_doc(doc["space"], doc.get("depth"))
    elif "space" in doc and list(doc["space"]) != list(space.points):
        msg = "Measure space differs from the enclosing document's space."
        raise InputFormatError(msg)
    arity = require_int(doc["arity"], "arity")
    atoms: dict[tuple[str, ...], Any] = {}
    for item in require_list(doc["atoms"], "atoms"):
        item = require_mapping(item, "atom")
        require_keys(item, ["tuple", "weight"], "atom")
        atom = tuple(str(p) for p in require_list(item["tuple"], "tuple"))
        if atom in atoms:
            msg = f"Atom {atom} is listed twice."
            raise InputFormatError(msg)
        atoms[atom] = parse_rational(item["weight"])
    with _parsing("measure"):
        return AtomicMeasure(space=space, arity=arity, atoms=atoms)


def measures_from_doc(doc: Any) -> list[AtomicMeasure]:
    if isinstance(doc, Mapping):
        require_keys(doc, ["measures"], "measure list")
        doc = doc["measures"]
    return [measure_from_dict(item) for item in require_list(doc, "measures")]


def measures_to_doc(measures: list[AtomicMeasure]) -> dict[str, Any]:
    return {"measures": [measure_to_dict(m) for m in measures]}


# presentations


def presentation_to_dict(presentation: Presentation) -> dict[str, Any]:
    return {
        **_space_fields(presentation.space),
        "base": (
            measure_to_dict(presentation.base) if presentation.base is not None else None
        ),
        "entries": [
            {
                "kappa": list(kappa.exponents),
                "layer": layer,
                "measure": measure_to_dict(measure),
            }
            for (kappa, layer), measure in presentation.entries.items()
        ],
    }


def presentation_from_dict(doc: Any) -> Presentation:
    """Accepts a presentation document or a classification report wrapping one."""
    doc = require_mapping(doc, "presentation")
    if "presentation" in doc and "entries" not in doc:
        doc = require_mapping(doc["presentation"], "presentation")
    require_keys(doc, ["entries"], "presentation")
    entries_doc = require_list(doc["entries"], "entries")

    if "space" in doc:
        space = space_from_doc(doc["space"], doc.get("depth"))
    elif doc.get("base") is not None:
        space = measure_from_dict(doc["base"]).space
    elif entries_doc:
        first = require_mapping(entries_doc[0], "entry")
        space = measure_from_dict(first.get("measure")).space
    else:
        msg = "Empty presentation must declare its space."
        raise InputFormatError(msg)

    base = None
    if doc.get("base") is not None:
        base = measure_from_dict(doc["base"], space)

    entries: dict[tuple[Signature, int], AtomicMeasure] = {}
    for item in entries_doc:
        item = require_mapping(item, "entry")
        require_keys(item, ["kappa", "layer", "measure"], "entry")
        with _parsing("entry"):
            kappa = Signature(tuple(int(k) for k in require_list(item["kappa"], "kappa")))
        layer = require_int(item["layer"], "layer")
        if (kappa, layer) in entries:
            msg = f"Entry ({kappa}, {layer}) is listed twice."
            raise InputFormatError(msg)
        entries[(kappa, layer)] = measure_from_dict(item["measure"], space)
    with _parsing("presentation"):
        return Presentation(space=space, entries=entries, base=base)


def classification_to_dict(result: ClassificationResult) -> dict[str, Any]:
    return {
        "fixed_dim": result.fixed_dim,
        "presentation": presentation_to_dict(result.canonical),
    }


# weight multisets


def weights_to_dict(weights: WeightMultiset) -> dict[str, Any]:
    return {
        **_space_fields(weights.space),
        "vectors": [
            {"m": list(vector), "multiplicity": count}
            for vector, count in weights.items()
        ],
    }


def weights_from_dict(doc: Any) -> WeightMultiset:
    doc = require_mapping(doc, "weights")
    require_keys(doc, ["space", "vectors"], "weights")
    space = space_from_doc(doc["space"], doc.get("depth"))
    rows: list[tuple[dict[str, int], int]] = []
    for item in require_list(doc["vectors"], "vectors"):
        item = require_mapping(item, "vector")
        require_keys(item, ["m"], "vector")
        count = require_int(item.get("multiplicity", 1), "multiplicity")
        raw = item["m"]
        if isinstance(raw, Mapping):
            weights = {str(p): require_int(m, "weight") for p, m in raw.items()}
        else:
            values = [require_int(m, "weight") for m in require_list(raw, "m")]
            if len(values) != len(space):
                msg = f"Weight vector {values} has {len(values)} entries for {len(space)} points"
                raise InputFormatError(msg)
            weights = dict(zip(space.points, values))
        rows.append((weights, count))
    with _parsing("weights"):
        return WeightMultiset.from_mappings(space, rows)


# operators and matrices


def operator_from_dict(doc: Any) -> KwapienOperator:
    doc = require_mapping(doc, "operator")
    require_keys(doc, ["X", "Y", "terms"], "operator")
    domain = space_from_doc(doc["X"])
    codomain = space_from_doc(doc["Y"])
    terms: list[KwapienTerm] = []
    for item in require_list(doc["terms"], "terms"):
        item = require_mapping(item, "term")
        require_keys(item, ["g", "sigma"], "term")
        g = {str(y): parse_rational(v) for y, v in require_mapping(item["g"], "g").items()}
        sigma = {
            str(y): str(x) for y, x in require_mapping(item["sigma"], "sigma").items()
        }
        terms.append(KwapienTerm(g=g, sigma=sigma))
    with _parsing("operator"):
        return KwapienOperator(domain=domain, codomain=codomain, terms=tuple(terms))


def operator_to_dict(operator: KwapienOperator) -> dict[str, Any]:
    return {
        "X": list(operator.domain.points),
        "Y": list(operator.codomain.points),
        "terms": [
            {
                "g": {y: format_rational(v) for y, v in term.g.items()},
                "sigma": dict(term.sigma),
            }
            for term in operator.terms
        ],
    }


def matrix_to_dict(matrix: HomomorphismMatrix) -> dict[str, Any]:
    return {
        "rows": list(matrix.rows.points),
        "columns": list(matrix.columns.points),
        "matrix": [list(row) for row in matrix.entries],
    }


def matrix_from_dict(doc: Any) -> HomomorphismMatrix:
    doc = require_mapping(doc, "matrix")
    require_keys(doc, ["rows", "columns", "matrix"], "matrix")
    rows = [
        [require_int(v, "matrix entry") for v in require_list(row, "matrix row")]
        for row in require_list(doc["matrix"], "matrix")
    ]
    with _parsing("matrix"):
        return HomomorphismMatrix(
            rows=space_from_doc(doc["rows"]),
            columns=space_from_doc(doc["columns"]),
            entries=tuple(tuple(r) for r in rows),
        )


# unitary families


def family_from_dict(doc: Any) -> UnitaryFamily:
    doc = require_mapping(doc, "unitary family")
    require_keys(doc, ["header", "matrices"], "unitary family")
    header = require_mapping(doc["header"], "header")
    require_keys(header, ["space", "q", "B"], "header")
    space = space_from_doc(header["space"], header.get("depth"))
    matrices: list[np.ndarray] = []
    for raw in require_list(doc["matrices"], "matrices"):
        with _parsing("matrix"):
            pairs = np.asarray(raw, dtype=float)
            if pairs.ndim != 3 or pairs.shape[2] != 2:
                msg = f"Matrix must be rows of [re, im] pairs, got shape {pairs.shape}"
                raise InputFormatError(msg)
            matrices.append(pairs[..., 0] + 1j * pairs[..., 1])
    with _parsing("unitary family"):
        return UnitaryFamily(
            space=space,
            matrices=tuple(matrices),
            sample_denominator=require_int(header["q"], "q"),
            weight_bound=require_int(header["B"], "B"),
        )


def family_to_dict(family: UnitaryFamily) -> dict[str, Any]:
    return {
        "header": {
            **_space_fields(family.space),
            "q": family.sample_denominator,
            "B": family.weight_bound,
        },
        "matrices": [
            np.stack([m.real, m.imag], axis=-1).tolist() for m in family.matrices
        ],
    }
