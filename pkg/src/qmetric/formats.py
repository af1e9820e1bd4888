"""JSON file formats for states, POVMs, overlap-profile tables and reports.

Complex numbers are ``[re, im]`` pairs.  Floats are written with 17
significant digits so files round-trip bit-exactly.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import FormatError, ProfileViolation
from .hilbert import TOL_NORM, BipartiteState
from .metrics import OverlapProfile
from .povm import Povm


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0.0"
    return format(x, ".16e")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent, _level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def complex_pairs(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).ravel()]


def state_record(v, dim_a: int | None = None, dim_b: int | None = None) -> dict:
    v = np.asarray(v, dtype=complex)
    rec = {"dim": int(v.size), "amplitudes": complex_pairs(v)}
    if dim_a is not None:
        rec["dimA"] = int(dim_a)
        rec["dimB"] = int(dim_b)
    return rec


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: cannot read JSON ({exc})") from exc


def _pairs_to_complex(pairs, where: str) -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: expected [re, im] pairs ({exc})") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise FormatError(f"{where}: expected [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_state(data: dict, source: str = "<state>"):
    """Return amplitudes, or a BipartiteState when ``dimA``/``dimB`` are present."""
    for key in ("dim", "amplitudes"):
        if key not in data:
            raise FormatError(f"{source}: missing field '{key}'")
    v = _pairs_to_complex(data["amplitudes"], f"{source}: field 'amplitudes'")
    if v.ndim != 1 or v.size != data["dim"]:
        raise FormatError(f"{source}: field 'dim' is {data['dim']} but {v.size} amplitudes given")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > TOL_NORM:
        raise FormatError(f"{source}: field 'amplitudes' has norm {norm:.17g}, expected 1")
    if "dimA" in data or "dimB" in data:
        try:
            return BipartiteState(v, int(data["dimA"]), int(data["dimB"]))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"{source}: fields 'dimA'/'dimB': {exc}") from exc
    return v


def load_state(path):
    return parse_state(_load_json(path), str(path))


def save_state(path, v, dim_a: int | None = None, dim_b: int | None = None) -> None:
    Path(path).write_text(dumps(state_record(v, dim_a, dim_b)) + "\n")


def povm_record(p: Povm) -> dict:
    return {
        "dim": p.dim,
        "effects": [[complex_pairs(row) for row in e] for e in p.effects],
    }


def parse_povm(data: dict, source: str = "<povm>") -> Povm:
    for key in ("dim", "effects"):
        if key not in data:
            raise FormatError(f"{source}: missing field '{key}'")
    e = _pairs_to_complex(data["effects"], f"{source}: field 'effects'")
    if e.ndim != 3 or e.shape[1:] != (data["dim"], data["dim"]):
        raise FormatError(f"{source}: field 'effects' has shape {e.shape}, expected (k, {data['dim']}, {data['dim']})")
    return Povm(e, name=Path(source).stem)


def load_povm(path) -> Povm:
    return parse_povm(_load_json(path), str(path))


def save_povm(path, p: Povm) -> None:
    Path(path).write_text(dumps(povm_record(p)) + "\n")


def load_profile(path) -> OverlapProfile:
    """Overlap profile sampled as a table.

    JSON: ``{"name": ..., "r": [...], "f": [...]}``; CSV: header ``r,f``.
    Interpolation is linear in the angle ``arccos r`` rather than in ``r``,
    so a tabulated arccos stays exactly additive between nodes instead of
    picking up the square-root cusp at ``r = 1``.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        try:
            with open(path, newline="") as fh:
                rows = list(csv.DictReader(fh))
            r = [float(row["r"]) for row in rows]
            f = [float(row["f"]) for row in rows]
        except (OSError, KeyError, ValueError) as exc:
            raise FormatError(f"{path}: expected CSV columns r,f ({exc})") from exc
        name = path.stem
    else:
        data = _load_json(path)
        for key in ("r", "f"):
            if key not in data:
                raise FormatError(f"{path}: missing field '{key}'")
        r, f, name = data["r"], data["f"], data.get("name", path.stem)
    r = np.asarray(r, dtype=float)
    f = np.asarray(f, dtype=float)
    if r.shape != f.shape or r.ndim != 1 or r.size < 2:
        raise FormatError(f"{path}: 'r' and 'f' must be equal-length lists with at least 2 points")
    order = np.argsort(r)
    r, f = r[order], f[order]
    if r[0] > 0.0 or r[-1] < 1.0:
        raise ProfileViolation("table covers [0, 1]", {"r_min": float(r[0]), "r_max": float(r[-1])})
    theta = np.arccos(r)[::-1]
    f_theta = f[::-1]
    return OverlapProfile(
        lambda x: np.interp(np.arccos(np.clip(x, 0.0, 1.0)), theta, f_theta),
        name,
        lambda t: np.interp(t, theta, f_theta),
    )
