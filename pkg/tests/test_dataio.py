import numpy as np
import pytest

from rbmvn.dataio import load_csv, loads_csv, save_csv
from rbmvn.errors import CsvFormatError


def test_plain_rows():
    got = loads_csv("0,0\n1,1\n")
    np.testing.assert_array_equal(got, [[0.0, 0.0], [1.0, 1.0]])


def test_header_auto_detected():
    got = loads_csv("x,y\n1,2\n3,4\n")
    np.testing.assert_array_equal(got, [[1.0, 2.0], [3.0, 4.0]])


def test_numeric_first_row_is_data():
    got = loads_csv("1,2\n3,4\n")
    assert got.shape == (2, 2)


def test_ragged_row_reports_position():
    with pytest.raises(CsvFormatError) as err:
        loads_csv("1,2\n3\n")
    assert err.value.row == 2


def test_bad_cell_reports_row_and_column():
    with pytest.raises(CsvFormatError) as err:
        loads_csv("1,2\n3,oops\n")
    assert err.value.row == 2
    assert err.value.column == 2


def test_empty_input_rejected():
    with pytest.raises(CsvFormatError):
        loads_csv("")
    with pytest.raises(CsvFormatError):
        loads_csv("x,y\n")  # header only


def test_comma_decimal_rejected():
    # decimal commas would silently change the column count; the parser
    # must flag the row instead of guessing a locale
    with pytest.raises(CsvFormatError):
        loads_csv("1,5\n2,5\n3\n")


def test_whitespace_and_trailing_newlines():
    got = loads_csv(" 1 , 2 \n 3 , 4 \n\n")
    np.testing.assert_array_equal(got, [[1.0, 2.0], [3.0, 4.0]])


def test_scientific_notation_and_sign():
    got = loads_csv("-1e-3,+2.5E2\n0.0,-0.0\n")
    np.testing.assert_array_equal(got, [[-0.001, 250.0], [0.0, -0.0]])


def test_nonfinite_cells_rejected():
    with pytest.raises(CsvFormatError):
        loads_csv("1,2\nnan,3\n")
    with pytest.raises(CsvFormatError):
        loads_csv("1,inf\n")


def test_missing_file(tmp_path):
    with pytest.raises(CsvFormatError):
        load_csv(tmp_path / "absent.csv")


def test_round_trip(tmp_path):
    data = np.array([[1.5, -2.0], [0.25, 9.0]])
    path = tmp_path / "out.csv"
    save_csv(path, data, header=("a", "b"))
    np.testing.assert_array_equal(load_csv(path), data)
