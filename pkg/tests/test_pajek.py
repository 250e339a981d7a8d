from fractions import Fraction

import pytest

from citeflow import (Network, PajekParseError, format_number, parse_pajek,
                      write_pajek, write_partition, write_vector)

from conftest import arcs_of

DIAMOND = """\
*Vertices 4
1 "a"
2 "b"
3 "c"
4 "d"
*Arcs
1 2
1 3
2 4
3 4
"""


def test_parse_minimal():
    net = parse_pajek(DIAMOND)
    assert net.n == 4
    assert arcs_of(net) == [(1, 2), (1, 3), (2, 4), (3, 4)]
    assert net.label(2) == "b"


def test_parse_is_case_insensitive_and_skips_noise():
    text = ("% a comment\n\n*vertices 2\n"
            "1 \"x\"\n\n% another\n*ARCS\n1 2 2.5\n")
    net = parse_pajek(text)
    assert net.n == 2
    assert net.label(1) == "x"
    assert net.label(2) == "2"  # unlisted vertex falls back to its id
    assert net.weights.tolist() == [2.5]


def test_labels_with_spaces_and_quotes():
    net = parse_pajek('*Vertices 1\n1 "hello world"\n*Arcs\n')
    assert net.label(1) == "hello world"


def test_trailing_vertex_tokens_ignored():
    # coordinate columns from layout tools
    net = parse_pajek('*Vertices 1\n1 "v" 0.5 0.5 0.5\n*Arcs\n')
    assert net.label(1) == "v"


def test_bare_label_token():
    net = parse_pajek("*Vertices 2\n1 alpha\n*Arcs\n1 2\n")
    assert net.label(1) == "alpha"


def test_vertices_without_arcs_section():
    net = parse_pajek("*Vertices 3\n")
    assert (net.n, net.m) == (3, 0)


def test_empty_network():
    net = parse_pajek("*Vertices 0\n*Arcs\n")
    assert (net.n, net.m) == (0, 0)


def test_multiple_arcs_sections_concatenate():
    net = parse_pajek("*Vertices 3\n*Arcs\n1 2\n*Arcs\n2 3\n")
    assert arcs_of(net) == [(1, 2), (2, 3)]


def test_integer_and_float_weights():
    net = parse_pajek("*Vertices 2\n*Arcs\n1 2 3\n2 1 0.25\n")
    assert net.weights.tolist() == [3.0, 0.25]


@pytest.mark.parametrize("text, fragment", [
    ("*Arcs\n1 2\n", "*Vertices"),
    ("*Vertices 2\n*Edges\n1 2\n", "directed"),
    ("*Vertices 2\n*Vertices 2\n", "duplicate"),
    ("*Vertices 2\n*Partition\n", "unsupported"),
    ("1 \"a\"\n*Vertices 1\n", "*Vertices"),
    ("*Vertices 1\n1 \"unterminated\n*Arcs\n", "quote"),
    ("*Vertices 2\n*Arcs\n1 5\n", "outside"),
    ("*Vertices 2\n*Arcs\n0 1\n", "outside"),
    ("*Vertices 2\n*Arcs\n1\n", "tail head"),
    ("*Vertices 2\n*Arcs\n1 2 x\n", "weight"),
    ("*Vertices x\n", "count"),
    ("*Vertices 1\n9 \"z\"\n*Arcs\n", "range"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PajekParseError) as err:
        parse_pajek(text)
    assert fragment.lower() in str(err.value).lower()


def test_parse_error_carries_line_number():
    with pytest.raises(PajekParseError) as err:
        parse_pajek("*Vertices 2\n*Arcs\n1 5\n")
    assert err.value.line_no == 3
    assert "line 3" in str(err.value)


def test_round_trip(diamond):
    assert parse_pajek(write_pajek(diamond)) == diamond


def test_round_trip_weights_and_odd_labels():
    net = Network(3, [(1, 2, 0.5), (2, 3, 4.0)], ["a b", "q\"q", "3"])
    back = parse_pajek(write_pajek(net))
    assert back.weights.tolist() == [0.5, 4.0]
    assert back.label(1) == "a b"


def test_write_pajek_weight_override(chain3):
    text = write_pajek(chain3, [5, 7])
    assert "1 2 5\n" in text
    assert "2 3 7\n" in text
    with pytest.raises(ValueError):
        write_pajek(chain3, [1])


def test_write_vector():
    assert write_vector([1, 0.5]) == "*Vertices 2\n1\n0.5\n"


def test_write_partition():
    assert write_partition([1, 1, 2]) == "*Vertices 3\n1\n1\n2\n"


@pytest.mark.parametrize("value, text", [
    (3, "3"),
    (2 ** 80, str(2 ** 80)),
    (3.0, "3"),
    (0.5, "0.5"),
    (Fraction(4, 2), "2"),
    (Fraction(1, 2), "0.5"),
    (1e300, "1e+300"),
])
def test_format_number(value, text):
    assert format_number(value) == text


def test_crlf_input_parses():
    net = parse_pajek(DIAMOND.replace("\n", "\r\n"))
    assert net.n == 4
