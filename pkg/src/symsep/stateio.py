"""JSON state files.

Every file carries ``schema_version`` (currently 1), a ``kind`` of
``"pure"``, ``"product"`` or ``"ensemble"``, the local ``dims`` and a
``payload``.  Complex numbers are ``[re, im]`` pairs.  Pure amplitudes follow
the party-0-slowest ordering of :mod:`symsep.state`; for two qubits::

    {
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

is ``(|00> + |11>) / sqrt(2)``.  A product payload is one list of pairs per
party; an ensemble payload is a list of ``{"weight", "kind", "payload"}``
members.  :func:`dumps` writes this canonical layout, and parsing then
re-serializing a canonical file reproduces it byte for byte.
"""

import json
from math import prod

import numpy as np

from .errors import StateError
from .mixed import Ensemble
from .state import ProductState, PureState

SCHEMA_VERSION = 1
KINDS = ("pure", "product", "ensemble")


class StateFileError(StateError):
    """Malformed or inconsistent state file."""


def _pairs(vec):
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec, dtype=complex)]


def _member_payload(state):
    if isinstance(state, ProductState):
        return "product", [_pairs(f) for f in state.factors]
    return "pure", _pairs(state.amplitudes)


def to_document(state):
    """Plain-JSON document for a pure state, product state or ensemble."""
    if isinstance(state, Ensemble):
        members = []
        for p, s in zip(state.weights, state.states):
            kind, payload = _member_payload(s)
            members.append({"weight": float(p), "kind": kind, "payload": payload})
        kind, payload = "ensemble", members
    else:
        kind, payload = _member_payload(state)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "dims": [int(d) for d in state.dims],
        "payload": payload,
    }


def _compact(obj):
    return json.dumps(obj, separators=(", ", ": "), allow_nan=False)


def dumps_document(doc):
    head = [
        f'  "schema_version": {_compact(doc["schema_version"])}',
        f'  "kind": {_compact(doc["kind"])}',
        f'  "dims": {_compact(doc["dims"])}',
    ]
    items = ",\n".join(f"    {_compact(item)}" for item in doc["payload"])
    body = f'  "payload": [\n{items}\n  ]' if items else '  "payload": []'
    return "{\n" + ",\n".join(head + [body]) + "\n}\n"


def dumps(state):
    return dumps_document(to_document(state))


def _complex_vector(raw, what):
    if not isinstance(raw, list) or not raw:
        raise StateFileError(f"{what} must be a nonempty list of [re, im] pairs")
    out = np.empty(len(raw), dtype=complex)
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise StateFileError(f"{what}[{i}] is not an [re, im] pair")
        out[i] = complex(pair[0], pair[1])
    return out


def _member(kind, dims, payload, what):
    try:
        if kind == "pure":
            amps = _complex_vector(payload, what)
            if amps.size != prod(dims):
                raise StateFileError(f"{what} has {amps.size} amplitudes, dims need {prod(dims)}")
            return PureState(tuple(dims), amps)
        if kind == "product":
            if not isinstance(payload, list) or len(payload) != len(dims):
                raise StateFileError(f"{what} needs one factor per party ({len(dims)})")
            factors = [_complex_vector(f, f"{what}[{i}]") for i, f in enumerate(payload)]
            for i, (f, d) in enumerate(zip(factors, dims)):
                if f.size != d:
                    raise StateFileError(f"{what}[{i}] has length {f.size}, expected {d}")
            return ProductState(tuple(factors))
    except StateFileError:
        raise
    except StateError as exc:
        raise StateFileError(f"{what}: {exc}") from exc
    raise StateFileError(f"unknown kind {kind!r} in {what}")


def from_document(doc):
    if not isinstance(doc, dict):
        raise StateFileError("state file must hold a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise StateFileError(f"unsupported schema_version {doc.get('schema_version')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise StateFileError(f"kind must be one of {KINDS}, got {kind!r}")
    dims = doc.get("dims")
    if (
        not isinstance(dims, list)
        or not dims
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise StateFileError("dims must be a nonempty list of positive integers")
    payload = doc.get("payload")
    if kind != "ensemble":
        return _member(kind, dims, payload, "payload")
    if not isinstance(payload, list) or not payload:
        raise StateFileError("ensemble payload must be a nonempty list of members")
    weights, states = [], []
    for i, m in enumerate(payload):
        if not isinstance(m, dict) or set(m) != {"weight", "kind", "payload"}:
            raise StateFileError(f"ensemble member {i} needs exactly weight, kind and payload")
        if not isinstance(m["weight"], (int, float)) or isinstance(m["weight"], bool):
            raise StateFileError(f"ensemble member {i} weight is not a number")
        weights.append(float(m["weight"]))
        states.append(_member(m["kind"], dims, m["payload"], f"payload[{i}]"))
    try:
        return Ensemble(tuple(weights), tuple(states))
    except StateError as exc:
        raise StateFileError(str(exc)) from exc


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dump(state, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(state))
