import random

import pytest

from lattice_euclid import Matrix, MatrixParseError, format_matrix, load_matrix, parse_matrix

from _oracles import random_int_matrix


def test_format_exact_text():
    m = Matrix.from_rows([[12, 18]])
    assert format_matrix(m) == "1 2\n12 18\n"


def test_parse_basic():
    assert parse_matrix("2 2\n1 2\n3 4\n") == Matrix.from_rows([[1, 2], [3, 4]])


def test_parse_skips_comments_and_blank_lines():
    text = "# generated instance\n\n2 1\n# first row\n5\n\n-7\n"
    assert parse_matrix(text) == Matrix.from_rows([[5], [-7]])


def test_roundtrip_random():
    rng = random.Random(31)
    for _ in range(25):
        m = random_int_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), 10**9)
        assert parse_matrix(format_matrix(m)) == m


def test_roundtrip_huge_entries():
    m = Matrix.from_rows([[10**50, -(3**80)]])
    assert parse_matrix(format_matrix(m)) == m


def test_parse_zero_rows():
    m = parse_matrix("0 3\n")
    assert (m.rows, m.cols) == (0, 3)


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("", 1),
        ("2\n1 2\n", 1),
        ("a b\n", 1),
        ("2 2\n1 2\n", 2),
        ("1 2\n1 2\n3 4\n", 3),
        ("1 2\n1\n", 2),
        ("1 2\n1 x\n", 2),
        ("-1 2\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_no):
    with pytest.raises(MatrixParseError) as err:
        parse_matrix(text)
    assert err.value.line_no == line_no
    assert f"line {line_no}" in str(err.value)


def test_load_matrix(tmp_path):
    path = tmp_path / "m.mat"
    path.write_text("1 1\n42\n")
    assert load_matrix(path) == Matrix.from_rows([[42]])
