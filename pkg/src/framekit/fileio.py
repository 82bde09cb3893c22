"""Reading and writing frame/fusion-frame JSON files.

One JSON document per structure.  Numbers round-trip bit-exactly because
serialization uses Python's shortest-repr decimals (up to 17 significant
digits) and loading never re-derives entries: a stored fusion basis that
is already orthonormal is used verbatim.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .frames import Frame
from .fusion import BASIS_TOL, FusionFrame, Subspace, subspace_from_spanning


class FrameFileError(ValueError):
    """Malformed frame file: JSON, schema, or shape problems."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def _require_number_grid(value, location: str, dim: int) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise FrameFileError(location, "expected a non-empty array of arrays")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise FrameFileError(f"{location}[{i}]", "expected an array of numbers")
        if len(row) != dim:
            raise FrameFileError(
                f"{location}[{i}]", f"expected {dim} entries, got {len(row)}"
            )
        for j, x in enumerate(row):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise FrameFileError(f"{location}[{i}][{j}]", "expected a number")
        rows.append([float(x) for x in row])
    return np.array(rows)


def structure_from_dict(doc) -> Frame | FusionFrame:
    """Build a Frame or FusionFrame from a parsed frame-file document."""
    if not isinstance(doc, dict):
        raise FrameFileError("$", "expected a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FrameFileError("$.dim", f"expected a positive integer, got {dim!r}")
    kind = doc.get("kind")
    if kind not in ("frame", "fusion"):
        raise FrameFileError("$.kind", f'expected "frame" or "fusion", got {kind!r}')
    has_vectors = "vectors" in doc
    has_subspaces = "subspaces" in doc
    if kind == "frame":
        if not has_vectors or has_subspaces:
            raise FrameFileError("$", 'kind "frame" requires vectors and no subspaces')
        vectors = _require_number_grid(doc["vectors"], "$.vectors", dim)
        labels = doc.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
                raise FrameFileError("$.labels", "expected an array of strings")
            if len(labels) != len(vectors):
                raise FrameFileError(
                    "$.labels", f"expected {len(vectors)} labels, got {len(labels)}"
                )
            labels = tuple(labels)
        return Frame(vectors, labels=labels)
    if not has_subspaces or has_vectors:
        raise FrameFileError("$", 'kind "fusion" requires subspaces and no vectors')
    subs = doc["subspaces"]
    if not isinstance(subs, list) or not subs:
        raise FrameFileError("$.subspaces", "expected a non-empty array")
    members = []
    for i, entry in enumerate(subs):
        loc = f"$.subspaces[{i}]"
        if not isinstance(entry, dict):
            raise FrameFileError(loc, "expected an object with weight and basis")
        weight = entry.get("weight")
        if not isinstance(weight, (int, float)) or isinstance(weight, bool):
            raise FrameFileError(f"{loc}.weight", f"expected a number, got {weight!r}")
        basis_rows = _require_number_grid(entry.get("basis"), f"{loc}.basis", dim)
        # Rows are spanning vectors; reuse them verbatim when already
        # orthonormal so write/read round-trips are bit-exact.
        cols = basis_rows.T
        gram_defect = np.max(np.abs(cols.T @ cols - np.eye(cols.shape[1])))
        if cols.shape[1] <= dim and gram_defect <= BASIS_TOL:
            sub = Subspace(cols)
        else:
            sub = subspace_from_spanning(basis_rows)
        members.append((sub, float(weight)))
    return FusionFrame(tuple(members))


def structure_to_dict(obj: Frame | FusionFrame) -> dict:
    """Frame-file document for a structure (lists of plain floats)."""
    if isinstance(obj, Frame):
        doc = {
            "dim": obj.dim,
            "kind": "frame",
            "vectors": [[float(x) for x in row] for row in obj.vectors],
        }
        if obj.labels is not None:
            doc["labels"] = list(obj.labels)
        return doc
    if isinstance(obj, FusionFrame):
        return {
            "dim": obj.dim,
            "kind": "fusion",
            "subspaces": [
                {
                    "weight": float(w),
                    "basis": [[float(x) for x in col] for col in s.basis.T],
                }
                for s, w in obj.members
            ],
        }
    raise TypeError(f"expected Frame or FusionFrame, got {type(obj)}")


def load_structure(path) -> Frame | FusionFrame:
    """Load a frame file; FrameFileError on malformed content."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    return structure_from_dict(doc)


def write_structure(path, obj: Frame | FusionFrame) -> None:
    Path(path).write_text(json.dumps(structure_to_dict(obj), indent=2) + "\n")


def file_digest(path) -> str:
    """Hex sha256 of the file bytes, for report provenance."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
