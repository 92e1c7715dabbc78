"""Lattice and map documents: strict JSON, exact rationals, round-trip stable.

Lattice documents are either builder forms ({"kind": "mo", "n": 3}) or
explicit forms (labels, order pairs, orthocomplement).  Map documents key
values by comma-joined element labels; values are rational or decimal
strings (both "0.5" and the decimal-comma "0,5" are accepted).
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

from .errors import DocumentError, OmlBellError
from .lattice import (
    GreechieDiagram,
    Oml,
    assemble_oml,
    build_boolean,
    build_from_greechie,
    build_horizontal_sum,
    build_mo,
)
from .maps import NMap, SMap, State, nmap_validate, smap_validate, validate_state
from .rationals import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def _lattice_from_doc(doc) -> Oml:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DocumentError("lattice document must be an object with a 'kind'")
    kind = doc["kind"]
    try:
        if kind == "boolean":
            return build_boolean(int(doc["atoms"]))
        if kind == "mo":
            return build_mo(int(doc["n"]))
        if kind == "horizontal-sum":
            parts = [_lattice_from_doc(part) for part in doc["parts"]]
            return build_horizontal_sum(parts)
        if kind == "greechie":
            diagram = GreechieDiagram(
                atom_count=int(doc["atoms"]),
                blocks=tuple(tuple(int(a) for a in blk) for blk in doc["blocks"]),
            )
            return build_from_greechie(diagram)
        if kind == "explicit":
            labels = [str(x) for x in doc["labels"]]
            n = len(labels)
            leq = [[i == j for j in range(n)] for i in range(n)]
            for i, j in doc["leq"]:
                leq[int(i)][int(j)] = True
            ortho = [int(x) for x in doc["ortho"]]
            return assemble_oml(labels, leq, ortho)
    except KeyError as exc:
        raise DocumentError(f"lattice document missing field {exc}") from exc
    except OmlBellError as exc:
        raise DocumentError(
            f"lattice document fails validation: {exc}",
            report=getattr(exc, "report", None),
        ) from exc
    raise DocumentError(f"unknown lattice kind {kind!r}")


def parse_lattice(text: str) -> Oml:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"malformed lattice document at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    return _lattice_from_doc(doc)


def serialize_lattice(oml: Oml) -> str:
    doc = {
        "kind": "explicit",
        "labels": list(oml.labels),
        "leq": [
            [a, b]
            for a in oml.elements()
            for b in oml.elements()
            if a != b and oml.leq[a][b]
        ],
        "ortho": list(oml.ortho),
    }
    return json.dumps(doc, indent=2) + "\n"


def _tuple_key(oml: Oml, labels_key: str, arity: int) -> tuple[int, ...]:
    parts = [s.strip() for s in labels_key.split(",")]
    if len(parts) != arity:
        raise DocumentError(
            f"key {labels_key!r} has {len(parts)} labels, expected {arity}"
        )
    return tuple(oml.index_of(part) for part in parts)


def parse_map(text: str, oml: Oml | None = None):
    """Parse a map document into a State, SMap or NMap (by arity)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"malformed map document at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise DocumentError("map document must be an object")
    arity = int(doc.get("arity", 2))
    if oml is None:
        if "lattice" not in doc:
            raise DocumentError("map document needs a lattice (none supplied)")
        lattice_ref = doc["lattice"]
        if isinstance(lattice_ref, str):
            from .bundled import resolve_lattice

            oml = resolve_lattice(lattice_ref)
        else:
            oml = _lattice_from_doc(lattice_ref)

    default = doc.get("default")
    default_value = parse_rational(default) if default is not None else None
    values: dict[tuple[int, ...], Fraction] = {}
    for key, raw in doc.get("values", {}).items():
        try:
            value = parse_rational(raw)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        if not ZERO <= value <= ONE:
            raise DocumentError(f"value {raw!r} for {key!r} outside [0, 1]")
        try:
            values[_tuple_key(oml, key, arity)] = value
        except KeyError as exc:
            raise DocumentError(str(exc)) from exc

    table: dict[tuple[int, ...], Fraction] = {}
    for t in itertools.product(oml.elements(), repeat=arity):
        if t in values:
            table[t] = values[t]
        elif default_value is not None:
            table[t] = default_value
        else:
            labels = ",".join(oml.labels[i] for i in t)
            raise DocumentError(
                f"map document misses tuple {labels!r} and declares no default"
            )

    if arity == 1:
        flat = [table[(a,)] for a in oml.elements()]
        rep = validate_state(oml, flat)
        if not rep.valid:
            raise DocumentError(f"not a valid state: {rep.summary()}", report=rep)
        return State(oml, tuple(flat))
    if arity == 2:
        grid = tuple(
            tuple(table[(a, b)] for b in oml.elements()) for a in oml.elements()
        )
        rep = smap_validate(oml, grid)
        if not rep.valid:
            raise DocumentError(f"not a valid s-map: {rep.summary()}", report=rep)
        return SMap(oml, grid)
    rep = nmap_validate(oml, table, arity)
    if not rep.valid:
        raise DocumentError(f"not a valid s_{arity}-map: {rep.summary()}", report=rep)
    return NMap(oml, arity, table)


def serialize_map(m: State | SMap | NMap) -> str:
    oml = m.lattice
    if isinstance(m, State):
        arity = 1
        entries = {(a,): m(a) for a in oml.elements()}
    elif isinstance(m, SMap):
        arity = 2
        entries = {
            (a, b): m(a, b) for a in oml.elements() for b in oml.elements()
        }
    else:
        arity = m.arity
        entries = dict(m.values)
    values = {
        ",".join(oml.labels[i] for i in key): format_rational(v)
        for key, v in sorted(entries.items())
        if v != 0
    }
    doc = {
        "arity": arity,
        "lattice": json.loads(serialize_lattice(oml)),
        "default": "0",
        "values": values,
    }
    return json.dumps(doc, indent=2) + "\n"
