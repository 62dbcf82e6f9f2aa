"""
Tests for CSV parsing and writing.
"""
import numpy as np
import pandas as pd
import pytest

from src.csv_io import read_dataset_csv, read_query_csv, write_dataset_csv, write_frame_csv
from src.datasets import NealCase, generate_neal
from src.errors import DataParseError, InvalidArgumentError


class TestReadDatasetCsv:
    """Test dataset parsing and its error reporting."""

    def test_minimal_columns(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("x,y\n0.5,1.25\n-1,2e-3\n")
        data = read_dataset_csv(path)
        assert data.x.tolist() == [0.5, -1.0]
        assert data.y.tolist() == [1.25, 0.002]
        assert data.is_outlier is None
        assert data.f_true is None

    def test_write_read_is_exact(self, tmp_path):
        original = generate_neal(NealCase.fiducial(seed=6))
        path = tmp_path / "neal.csv"
        write_dataset_csv(original, path)
        restored = read_dataset_csv(path)
        np.testing.assert_array_equal(restored.x, original.x)
        np.testing.assert_array_equal(restored.y, original.y)
        np.testing.assert_array_equal(restored.f_true, original.f_true)
        np.testing.assert_array_equal(restored.is_outlier, original.is_outlier)

    def test_boolean_flags(self, tmp_path):
        path = tmp_path / "flags.csv"
        path.write_text("x,y,is_outlier\n0,1,true\n1,2,False\n2,3,1\n")
        assert read_dataset_csv(path).is_outlier.tolist() == [True, False, True]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(DataParseError):
            read_dataset_csv(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "header.csv"
        path.write_text("x,y\n")
        with pytest.raises(DataParseError):
            read_dataset_csv(path)

    def test_non_numeric_cell_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0,1\n1,abc\n2,3\n")
        with pytest.raises(DataParseError) as exc_info:
            read_dataset_csv(path)
        assert exc_info.value.line == 3
        assert "line 3" in str(exc_info.value)
        assert "abc" in str(exc_info.value)

    def test_non_finite_cell(self, tmp_path):
        path = tmp_path / "nan.csv"
        path.write_text("x,y\n0,nan\n")
        with pytest.raises(DataParseError):
            read_dataset_csv(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "nocol.csv"
        path.write_text("x,z\n0,1\n")
        with pytest.raises(DataParseError, match="y"):
            read_dataset_csv(path)

    def test_bad_flag(self, tmp_path):
        path = tmp_path / "flag.csv"
        path.write_text("x,y,is_outlier\n0,1,maybe\n")
        with pytest.raises(DataParseError):
            read_dataset_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataParseError):
            read_dataset_csv(tmp_path / "absent.csv")

    def test_parse_errors_are_invalid_input(self):
        assert issubclass(DataParseError, InvalidArgumentError)


class TestQueryAndWrite:

    def test_read_query(self, tmp_path):
        path = tmp_path / "q.csv"
        path.write_text("x\n-3\n0\n3\n")
        assert read_query_csv(path).tolist() == [-3.0, 0.0, 3.0]

    def test_write_to_text(self):
        text = write_frame_csv(pd.DataFrame({"x": [0.1], "y": [1.0]}), None)
        assert text == "x,y\n0.10000000000000001,1\n"

    def test_write_creates_parent(self, tmp_path):
        target = tmp_path / "nested" / "out.csv"
        assert write_frame_csv(pd.DataFrame({"x": [1.0]}), target) is None
        assert target.read_text() == "x\n1\n"
