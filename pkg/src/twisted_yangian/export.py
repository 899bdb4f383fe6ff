"""CSV grids and JSON manifests."""

from __future__ import annotations

import csv
import hashlib
import json
import os
from importlib import metadata

import numpy as np

__all__ = ["library_version", "config_hash", "write_csv", "read_csv", "write_manifest"]


def library_version():
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        from . import __version__

        return __version__


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def config_hash(config: dict):
    return hashlib.sha256(_canonical(config).encode()).hexdigest()


def write_csv(path, columns: dict):
    """Write equal-length columns; floats use ``repr`` so values round-trip exactly."""
    names = list(columns)
    data = [np.asarray(columns[k]).ravel() for k in names]
    length = {d.size for d in data}
    if len(length) != 1:
        raise ValueError(f"columns have different lengths: {sorted(length)}")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in zip(*data):
            w.writerow([repr(float(v)) for v in row])
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    return {name: body[:, i] for i, name in enumerate(header)}


def write_manifest(path, command, config: dict, files=(), extra=None):
    doc = {
        "command": command,
        "library_version": library_version(),
        "config": config,
        "config_hash": config_hash(config),
        "files": [os.path.basename(f) for f in files],
    }
    if extra:
        doc.update(extra)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=str)
    return path
