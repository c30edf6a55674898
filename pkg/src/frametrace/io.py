"""JSON file formats for groups, vectors, irrep tables and Gabor windows.

All complex numbers serialize as two-element [re, im] arrays of doubles.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import FrametraceError
from .gabor import GaborSystem
from .groups import FiniteGroup, GroupVector, Rep, group_from_cayley
from .plancherel import Irrep, IrrepTable, validate_irreps


class MalformedInput(FrametraceError):
    """An input file does not match its schema."""


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def _require(obj: dict, key: str, path):
    if key not in obj:
        raise MalformedInput(f"{path}: missing field {key!r}")
    return obj[key]


def complex_to_json(values) -> list:
    arr = np.asarray(values, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]


def complex_from_json(pairs, path="<data>") -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"{path}: bad complex array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise MalformedInput(f"{path}: complex values must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def save_group(group: FiniteGroup, path) -> None:
    payload = {
        "label": group.label,
        "order": group.order,
        "cayley": group.cayley.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_group(path) -> FiniteGroup:
    obj = _load_json(path)
    label = _require(obj, "label", path)
    order = _require(obj, "order", path)
    cayley = _require(obj, "cayley", path)
    try:
        group = group_from_cayley(cayley, label=str(label))
    except FrametraceError:
        raise
    except Exception as exc:
        raise MalformedInput(f"{path}: {exc}") from exc
    if group.order != int(order):
        raise MalformedInput(f"{path}: declared order {order} != table size {group.order}")
    return group


def save_vector(vec: GroupVector, path) -> None:
    payload = {"group": vec.group.label, "data": complex_to_json(vec.data)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_vector(path, group: FiniteGroup) -> GroupVector:
    obj = _load_json(path)
    label = _require(obj, "group", path)
    data = complex_from_json(_require(obj, "data", path), path)
    if label != group.label:
        raise MalformedInput(
            f"{path}: vector belongs to group {label!r}, expected {group.label!r}"
        )
    if data.shape[0] != group.order:
        raise MalformedInput(f"{path}: vector length {data.shape[0]} != |G| = {group.order}")
    return GroupVector(group, data)


def load_vectors(path, group: FiniteGroup) -> list[GroupVector]:
    """Load a list of vectors: {"group": label, "vectors": [[[re, im], ...], ...]}."""
    obj = _load_json(path)
    label = _require(obj, "group", path)
    if label != group.label:
        raise MalformedInput(
            f"{path}: vectors belong to group {label!r}, expected {group.label!r}"
        )
    out = []
    for k, raw in enumerate(_require(obj, "vectors", path)):
        data = complex_from_json(raw, path)
        if data.shape[0] != group.order:
            raise MalformedInput(f"{path}: vector {k} has length {data.shape[0]}")
        out.append(GroupVector(group, data))
    return out


def save_irreps(table: IrrepTable, path) -> None:
    payload = {
        "group": table.group.label,
        "irreps": [
            {
                "label": s.label,
                "dim": s.dim,
                "matrices": [
                    [complex_to_json(row) for row in mat] for mat in s.rep.matrices
                ],
            }
            for s in table.irreps
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_irreps(path, group: FiniteGroup) -> IrrepTable:
    obj = _load_json(path)
    label = _require(obj, "group", path)
    if label != group.label:
        raise MalformedInput(
            f"{path}: irreps belong to group {label!r}, expected {group.label!r}"
        )
    entries = []
    for item in _require(obj, "irreps", path):
        name = _require(item, "label", path)
        dim = int(_require(item, "dim", path))
        raw = _require(item, "matrices", path)
        if len(raw) != group.order:
            raise MalformedInput(f"{path}: irrep {name!r} has {len(raw)} matrices")
        mats = np.empty((group.order, dim, dim), dtype=complex)
        for x, mat in enumerate(raw):
            if len(mat) != dim:
                raise MalformedInput(f"{path}: irrep {name!r} matrix {x} has wrong shape")
            for i, row in enumerate(mat):
                mats[x, i] = complex_from_json(row, path)
        entries.append(Irrep(label=name, dim=dim, rep=Rep(group=group, dim=dim, matrices=mats)))
    return validate_irreps(group, entries)


def save_window(sys: GaborSystem, path) -> None:
    payload = {
        "L": sys.L,
        "a": sys.a,
        "b": sys.b,
        "window": complex_to_json(sys.window),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_window(path) -> GaborSystem:
    obj = _load_json(path)
    length = int(_require(obj, "L", path))
    a = int(_require(obj, "a", path))
    b = int(_require(obj, "b", path))
    window = complex_from_json(_require(obj, "window", path), path)
    try:
        return GaborSystem(L=length, a=a, b=b, window=window)
    except (ValueError, FrametraceError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc
