"""Configuration files, JSON reports and CSV exports.

Floats are written with Python's shortest round-trip repr, so reading a
file back reproduces every double bitwise.  All writes go through a
temporary file in the target directory followed by an atomic rename.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .polyhedron import Configuration

CONFIG_VERSION = 1


class ConfigError(ValueError):
    """Malformed configuration file."""


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _clean(obj):
    """Make numpy values JSON-serializable; non-finite floats become null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=False, allow_nan=False) + "\n"


def config_to_dict(c: Configuration, report: dict | None = None) -> dict:
    out = {
        "version": CONFIG_VERSION,
        "pairs": [{"z": [float(z.real), float(z.imag)], "w": [float(w.real), float(w.imag)]}
                  for z, w in zip(c.z, c.w)],
    }
    if report is not None:
        out["report"] = report
    return out


def _number_pair(v, where: str) -> complex:
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise ConfigError(f"{where} must be [re, im]")
    if not all(math.isfinite(x) for x in v):
        raise ConfigError(f"{where} must be finite")
    return complex(float(v[0]), float(v[1]))


def config_from_dict(d) -> Configuration:
    if not isinstance(d, dict):
        raise ConfigError("configuration must be a JSON object")
    if d.get("version") != CONFIG_VERSION:
        raise ConfigError(f"unsupported configuration version {d.get('version')!r}")
    pairs = d.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError("'pairs' must be a non-empty list")
    z, w = [], []
    for k, p in enumerate(pairs):
        if not isinstance(p, dict) or set(p) != {"z", "w"}:
            raise ConfigError(f"pair {k} must have exactly the keys 'z' and 'w'")
        z.append(_number_pair(p["z"], f"pairs[{k}].z"))
        w.append(_number_pair(p["w"], f"pairs[{k}].w"))
    return Configuration(z, w)


def read_config(path) -> Configuration:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text, parse_constant=lambda s: float("nan"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return config_from_dict(data)


def write_config(path, c: Configuration, report: dict | None = None) -> None:
    atomic_write_text(path, dumps(config_to_dict(c, report)))


def write_json(path, obj) -> None:
    atomic_write_text(path, dumps(obj))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    atomic_write_text(path, csv_text(header, rows))


def matrix_rows(m: np.ndarray):
    """Row-major CSV rows (i, j, value)."""
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            yield i, j, float(m[i, j])


def coefficient_rows(coeffs: np.ndarray):
    for n, a in enumerate(coeffs):
        yield n, float(a.real), float(a.imag)
