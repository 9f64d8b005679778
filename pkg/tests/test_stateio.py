import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from helpers import KET0, KET1, PLUS, product
from symsep import families, stateio
from symsep.mixed import Ensemble
from symsep.state import ProductState, PureState
from symsep.stateio import StateFileError

BELL_FILE = """{
  "schema_version": 1,
  "kind": "pure",
  "dims": [2, 2],
  "payload": [
    [0.7071067811865475, 0.0],
    [0.0, 0.0],
    [0.0, 0.0],
    [0.7071067811865475, 0.0]
  ]
}
"""


def test_golden_bell_file():
    psi = stateio.loads(BELL_FILE)
    assert isinstance(psi, PureState)
    assert_allclose(psi.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert stateio.dumps(psi) == BELL_FILE


@pytest.mark.parametrize(
    "family,n,d,k",
    [
        ("ghz", 3, 2, None),
        ("w", 3, 2, None),
        ("dicke", 4, 2, 2),
        ("random-symmetric", 4, 2, None),
        ("random-product", 3, 3, None),
        ("slater", 3, 4, None),
        ("translation-eigenstate", 4, 2, 1),
    ],
)
def test_family_round_trip(family, n, d, k):
    text = stateio.dumps(families.generate(family, n, d, k, seed=7))
    assert stateio.dumps(stateio.loads(text)) == text
    json.loads(text)


def test_product_round_trip():
    phi = product(KET0, PLUS, KET1)
    back = stateio.loads(stateio.dumps(phi))
    assert isinstance(back, ProductState)
    for a, b in zip(back.factors, phi.factors):
        assert np.array_equal(a, b)


def test_ensemble_round_trip():
    e = Ensemble((0.25, 0.75), (product(KET0, KET1), product(PLUS, PLUS)))
    text = stateio.dumps(e)
    back = stateio.loads(text)
    assert isinstance(back, Ensemble) and back.weights == e.weights
    assert stateio.dumps(back) == text


@pytest.mark.parametrize(
    "doc",
    [
        {"schema_version": 2, "kind": "pure", "dims": [2], "payload": [[1, 0], [0, 0]]},
        {"schema_version": 1, "kind": "mixed", "dims": [2], "payload": []},
        {"schema_version": 1, "kind": "pure", "dims": [2, 2], "payload": [[1, 0]]},
        {"schema_version": 1, "kind": "pure", "dims": [2], "payload": [[1, 0, 0], [0, 0]]},
        {"schema_version": 1, "kind": "pure", "dims": ["2"], "payload": [[1, 0], [0, 0]]},
        {"schema_version": 1, "kind": "product", "dims": [2, 2], "payload": [[[1, 0], [0, 0]]]},
        {"schema_version": 1, "kind": "product", "dims": [2], "payload": [[[1, 0], [1, 0]]]},
        {"schema_version": 1, "kind": "ensemble", "dims": [2], "payload": [
            {"weight": 0.5, "kind": "pure", "payload": [[1, 0], [0, 0]]}]},
    ],
)
def test_malformed(doc):
    with pytest.raises(StateFileError):
        stateio.from_document(doc)


def test_invalid_json():
    with pytest.raises(StateFileError):
        stateio.loads("{not json")


def test_missing_file(tmp_path):
    with pytest.raises(StateFileError):
        stateio.load(tmp_path / "absent.json")
