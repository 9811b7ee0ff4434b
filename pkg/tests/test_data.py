import pytest

from mathai_gini import data
from mathai_gini.exceptions import DataError, EmptySampleError, SampleParseError


def test_builtin_loss_ratios():
    sample = data.builtin_dataset()
    assert sample.n == 24
    assert sum(sample.values) == pytest.approx(2571.4, abs=1e-9)
    assert sum(sample.values) / sample.n == pytest.approx(107.1416667, abs=1e-7)
    assert sample.values.count(0.0) == 4
    assert max(sample.values) == 2272.7
    assert sample.name == data.BUILTIN_NAME
    assert sample.has_ties


def test_resolve_builtin_keyword():
    assert data.resolve_data("builtin") == data.builtin_dataset()


@pytest.mark.parametrize(
    "contents, expected",
    [
        pytest.param("1.5\n2.5\n0\n", (1.5, 2.5, 0.0), id="plain"),
        pytest.param("loss\n1.5\n2.5\n", (1.5, 2.5), id="header"),
        pytest.param("1\n\n2\n\n", (1.0, 2.0), id="blank-lines"),
        pytest.param(" 3.0 \n4e1\n", (3.0, 40.0), id="whitespace-and-exponent"),
    ],
)
def test_load_csv(tmp_path, contents, expected):
    path = tmp_path / "losses.csv"
    path.write_text(contents)
    sample = data.load_csv(path)
    assert sample.values == expected
    assert sample.name == "losses"
    assert sample.source == str(path)


def test_load_csv_selects_named_column(tmp_path):
    path = tmp_path / "yearly.csv"
    path.write_text("year,loss\n1971,17.4\n1972,0.0\n")
    assert data.load_csv(path, column="loss").values == (17.4, 0.0)
    with pytest.raises(DataError):
        data.load_csv(path, column="premium")


def test_unparsable_cell_names_its_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0\n2.0\nabc\n4.0\n")
    with pytest.raises(SampleParseError) as excinfo:
        data.load_csv(path)
    assert excinfo.value.line == 3
    assert "line 3" in str(excinfo.value)


def test_second_header_row_is_an_error(tmp_path):
    path = tmp_path / "two-headers.csv"
    path.write_text("loss\nratio\n1.0\n")
    with pytest.raises(SampleParseError) as excinfo:
        data.load_csv(path)
    assert excinfo.value.line == 2


def test_undecodable_bytes_name_their_line(tmp_path):
    path = tmp_path / "latin.csv"
    path.write_bytes(b"1.0\n2.0\n\xff\xfe\n4.0\n")
    with pytest.raises(SampleParseError) as excinfo:
        data.load_csv(path)
    assert excinfo.value.line == 3
    assert "UTF-8" in str(excinfo.value)


@pytest.mark.parametrize("contents", ["", "\n\n", "loss\n"])
def test_empty_input(tmp_path, contents):
    path = tmp_path / "empty.csv"
    path.write_text(contents)
    with pytest.raises(EmptySampleError):
        data.load_csv(path)


def test_missing_file_is_a_data_error(tmp_path):
    with pytest.raises(DataError):
        data.resolve_data(str(tmp_path / "nowhere.csv"))


def test_written_sample_reads_back(tmp_path):
    path = tmp_path / "copy.csv"
    data.write_csv(data.builtin_dataset(), path)
    assert path.read_text().splitlines()[0] == "value"
    assert data.load_csv(path).values == data.CALIFORNIA_LOSS_RATIOS


def test_atomic_write_replaces_without_leftovers(tmp_path):
    path = tmp_path / "out.txt"
    path.write_text("old")
    data.atomic_write_text(path, "new\n")
    assert path.read_text() == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
