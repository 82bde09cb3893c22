"""Tests for frame-file serialization."""

import json

import numpy as np
import pytest

from framekit import Frame, FusionFrame, subspace_from_spanning
from framekit.fileio import (
    FrameFileError,
    load_structure,
    structure_from_dict,
    structure_to_dict,
    write_structure,
)


def random_frame(rng):
    count, dim = int(rng.integers(1, 9)), int(rng.integers(1, 6))
    labels = None
    if rng.random() < 0.3:
        labels = tuple(f"v{i}" for i in range(count))
    return Frame(rng.standard_normal((count, dim)), labels=labels)


def random_fusion(rng):
    dim = int(rng.integers(2, 6))
    members = []
    for _ in range(int(rng.integers(1, 5))):
        rank = int(rng.integers(1, dim + 1))
        sub = subspace_from_spanning(rng.standard_normal((rank, dim)))
        members.append((sub, float(rng.uniform(0.1, 3.0))))
    return FusionFrame(tuple(members))


class TestRoundTrip:
    def test_frame_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(70)
        for i in range(20):
            f = random_frame(rng)
            path = tmp_path / f"frame{i}.json"
            write_structure(path, f)
            back = load_structure(path)
            assert isinstance(back, Frame)
            assert np.array_equal(back.vectors, f.vectors)
            assert back.labels == f.labels

    def test_fusion_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(71)
        for i in range(20):
            ff = random_fusion(rng)
            path = tmp_path / f"fusion{i}.json"
            write_structure(path, ff)
            back = load_structure(path)
            assert isinstance(back, FusionFrame)
            assert np.array_equal(back.weights, ff.weights)
            for a, b in zip(back.subspaces, ff.subspaces):
                assert np.array_equal(a.basis, b.basis)

    def test_spanning_sets_are_orthonormalized_on_load(self):
        doc = {
            "dim": 3,
            "kind": "fusion",
            "subspaces": [{"weight": 1.0, "basis": [[2.0, 0.0, 0.0], [3.0, 1.0, 0.0]]}],
        }
        ff = structure_from_dict(doc)
        assert ff.subspaces[0].dim == 2


class TestSchemaErrors:
    def test_top_level_must_be_object(self):
        with pytest.raises(FrameFileError, match=r"\$"):
            structure_from_dict([1, 2, 3])

    def test_bad_dim(self):
        with pytest.raises(FrameFileError, match=r"\$\.dim"):
            structure_from_dict({"dim": 0, "kind": "frame", "vectors": [[1.0]]})

    def test_bad_kind(self):
        with pytest.raises(FrameFileError, match=r"\$\.kind"):
            structure_from_dict({"dim": 1, "kind": "banana", "vectors": [[1.0]]})

    def test_ragged_vectors_name_the_row(self):
        doc = {"dim": 2, "kind": "frame", "vectors": [[1.0, 0.0], [1.0]]}
        with pytest.raises(FrameFileError, match=r"\$\.vectors\[1\]"):
            structure_from_dict(doc)

    def test_non_numeric_entry_names_the_cell(self):
        doc = {"dim": 2, "kind": "frame", "vectors": [[1.0, "x"]]}
        with pytest.raises(FrameFileError, match=r"\$\.vectors\[0\]\[1\]"):
            structure_from_dict(doc)

    def test_kind_and_payload_must_agree(self):
        with pytest.raises(FrameFileError):
            structure_from_dict({"dim": 2, "kind": "frame", "subspaces": []})
        with pytest.raises(FrameFileError):
            structure_from_dict({"dim": 2, "kind": "fusion", "vectors": [[1.0, 0.0]]})

    def test_label_length_checked(self):
        doc = {"dim": 1, "kind": "frame", "vectors": [[1.0]], "labels": ["a", "b"]}
        with pytest.raises(FrameFileError, match=r"\$\.labels"):
            structure_from_dict(doc)

    def test_bad_weight(self):
        doc = {"dim": 1, "kind": "fusion", "subspaces": [{"weight": "w", "basis": [[1.0]]}]}
        with pytest.raises(FrameFileError, match=r"weight"):
            structure_from_dict(doc)

    def test_invalid_json_reports_location(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"dim": 2,,}')
        with pytest.raises(FrameFileError, match="line 1"):
            load_structure(path)


class TestDocumentShape:
    def test_frame_document_fields(self):
        doc = structure_to_dict(Frame([[1.0, 0.5]], labels=("a",)))
        assert doc == {
            "dim": 2,
            "kind": "frame",
            "vectors": [[1.0, 0.5]],
            "labels": ["a"],
        }

    def test_fusion_document_fields(self):
        ff = FusionFrame(((subspace_from_spanning([[3.0, 0.0]]), 2.0),))
        doc = structure_to_dict(ff)
        assert doc["kind"] == "fusion"
        assert doc["subspaces"][0]["weight"] == 2.0
        assert doc["subspaces"][0]["basis"] == [[1.0, 0.0]]

    def test_written_file_is_plain_json(self, tmp_path):
        path = tmp_path / "f.json"
        write_structure(path, Frame(np.eye(2)))
        doc = json.loads(path.read_text())
        assert doc["kind"] == "frame"
