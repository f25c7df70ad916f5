from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest

from circle_reps.classification.layering import layer_normalize, multiplicity_layers
from circle_reps.errors import SpaceMismatchError
from circle_reps.measures.algebra import abs_continuous, mutually_equivalent
from circle_reps.model.measure import AtomicMeasure
from circle_reps.model.space import OrderedSpace
from strategies import random_measure, random_space

AB = OrderedSpace(points=("a", "b"))


def m1(atoms: dict[str, int | Fraction]) -> AtomicMeasure:
    return AtomicMeasure(space=AB, arity=1, atoms={(p,): w for p, w in atoms.items()})


def support_multiset(measures: list[AtomicMeasure]) -> Counter:
    counts: Counter = Counter()
    for m in measures:
        counts.update(m.support)
    return counts


def test_layer_normalize_unchained_pair() -> None:
    layers = layer_normalize([m1({"a": 1}), m1({"b": 1})])
    assert layers == [m1({"a": 1, "b": Fraction(1, 2)}), AtomicMeasure.zero(AB, 1)]


def test_layer_normalize_keeps_a_chain() -> None:
    chain = [m1({"a": 2, "b": 1}), m1({"a": 5})]
    layers = layer_normalize(chain)
    assert all(mutually_equivalent(x, y) for x, y in zip(layers, chain))


def test_layer_normalize_single_measure_unchanged() -> None:
    m = m1({"a": Fraction(3, 7), "b": 2})
    assert layer_normalize([m]) == [m]
    assert layer_normalize([]) == []


def test_layer_normalize_rejects_mixed_arity() -> None:
    pair = AtomicMeasure(space=AB, arity=2, atoms={("a", "b"): 1})
    with pytest.raises(SpaceMismatchError):
        layer_normalize([m1({"a": 1}), pair])


def test_multiplicity_layers_pads_to_input_length() -> None:
    layers = multiplicity_layers([m1({"a": 1}), m1({"a": 3, "b": 1}), m1({"b": 2})])
    both = m1({"a": 1, "b": 1})
    assert layers == [both, both, AtomicMeasure.zero(AB, 1)]


def test_layer_normalize_corpus() -> None:
    rng = random.Random(4)
    for _ in range(300):
        space = random_space(rng, max_size=5)
        arity = rng.randint(1, 2)
        measures = [
            random_measure(rng, space, arity=arity, max_atoms=20)
            for _ in range(rng.randint(1, 6))
        ]
        layers = layer_normalize(measures)

        assert len(layers) == len(measures)
        for upper, lower in zip(layers, layers[1:]):
            assert abs_continuous(lower, upper)
        assert support_multiset(layers) == support_multiset(measures)
        for x, y in zip(layers, multiplicity_layers(measures)):
            assert mutually_equivalent(x, y)
