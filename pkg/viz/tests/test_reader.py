import json
import struct

import numpy as np
import pytest

from hjviz import GridInfo, SnapshotFormatError, load_grid_info, load_run, load_snapshot


def write_snapshot(path, values, magic=b"HJLS", version=1):
    """Test-local writer following the wire format."""
    values = np.asarray(values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sIII", magic, version, values.ndim, 0))
        fh.write(struct.pack(f"<{values.ndim}Q", *values.shape))
        fh.write(values.tobytes())


class TestLoadSnapshot:
    def test_round_trip(self, tmp_path):
        values = np.arange(24.0).reshape(2, 3, 4)
        path = tmp_path / "value_0000.f64"
        write_snapshot(path, values)
        assert np.array_equal(load_snapshot(path), values)

    def test_corrupted_magic_rejected(self, tmp_path):
        path = tmp_path / "value_0000.f64"
        write_snapshot(path, np.zeros((2, 2)), magic=b"HJLX")
        with pytest.raises(SnapshotFormatError, match="magic"):
            load_snapshot(path)

    def test_unsupported_version_rejected(self, tmp_path):
        path = tmp_path / "value_0000.f64"
        write_snapshot(path, np.zeros((2, 2)), version=3)
        with pytest.raises(SnapshotFormatError, match="version"):
            load_snapshot(path)

    def test_truncated_file_rejected(self, tmp_path):
        path = tmp_path / "value_0000.f64"
        write_snapshot(path, np.zeros((3, 3)))
        path.write_bytes(path.read_bytes()[:-4])
        with pytest.raises(SnapshotFormatError, match="expected"):
            load_snapshot(path)

    def test_short_header_rejected(self, tmp_path):
        path = tmp_path / "value_0000.f64"
        path.write_bytes(b"HJ")
        with pytest.raises(SnapshotFormatError, match="header"):
            load_snapshot(path)


class TestRunDiscovery:
    def test_meta_sidecar_drives_order_and_times(self, tmp_path):
        for k in range(3):
            write_snapshot(tmp_path / f"value_{k:04d}.f64", np.zeros((2, 2)))
        (tmp_path / "meta.json").write_text(json.dumps({
            "snapshots": [f"value_{k:04d}.f64" for k in range(3)],
            "times": [0.0, 0.5, 1.0],
            "grid": {"mins": [-1.0, -2.0], "spacings": [0.5, 0.25]},
        }))
        entries = load_run(tmp_path)
        assert [t for _, t in entries] == [0.0, 0.5, 1.0]
        info = load_grid_info(tmp_path, 2)
        assert info == GridInfo((-1.0, -2.0), (0.5, 0.25))

    def test_fallback_to_sorted_files(self, tmp_path):
        for k in (2, 0, 1):
            write_snapshot(tmp_path / f"value_{k:04d}.f64", np.zeros(4))
        entries = load_run(tmp_path)
        assert [p.name for p, _ in entries] == [
            "value_0000.f64", "value_0001.f64", "value_0002.f64"
        ]
        assert all(t is None for _, t in entries)
        assert load_grid_info(tmp_path, 1) == GridInfo((0.0,), (1.0,))
