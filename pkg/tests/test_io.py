import json
import logging

import pytest
from hypothesis import given

from conftest import odd_perms
from petaluma.errors import InconsistentCode, PDSyntaxError
from petaluma.io import (
    ResultRecord,
    content_hash,
    dumps,
    fixture_names,
    format_gauss,
    format_link,
    format_pd,
    json_int,
    load_fixture,
    load_results,
    parse_link,
    parse_pd,
    parse_perm,
    persist_result,
)
from petaluma.petal_model import LinkPetalPermutation, petal_to_diagram
from petaluma.polynomial import LaurentPolynomial

TREFOIL = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]"


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert d.n_crossings == 3 and d.n_components == 1


def test_comments_are_ignored():
    assert parse_pd("# trefoil\n" + TREFOIL).n_crossings == 3


def test_pd_errors():
    with pytest.raises(PDSyntaxError):
        parse_pd("")
    with pytest.raises(PDSyntaxError):
        parse_pd("PD[X[1,2,3,4], Y]")
    with pytest.raises(InconsistentCode):
        parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,7]]")
    with pytest.raises(InconsistentCode):
        parse_pd("PD[X[1,5,3,4], X[2,1,4,6], X[5,3,6,2]]")


@pytest.mark.parametrize("name", fixture_names())
def test_pd_round_trip(name):
    d = load_fixture(name)
    again = parse_pd(format_pd(d))
    assert again.structurally_equal(d.relabeled(1))


@given(odd_perms(3, 7))
def test_pd_round_trip_on_petal_diagrams(perm):
    d = petal_to_diagram(perm)
    assert parse_pd(format_pd(d)).structurally_equal(d.relabeled(1))


@given(odd_perms(1, 11))
def test_perm_round_trip(perm):
    assert parse_perm(str(perm)) == perm


def test_link_round_trip():
    link = LinkPetalPermutation((4, 9, 1, 3, 8, 7, 5, 2, 6, 10), 2, 3)
    assert parse_link(format_link(link)) == link
    assert parse_link("(; 0,0)") == LinkPetalPermutation((), 0, 0)
    with pytest.raises(ValueError):
        parse_link("(1,2)")


def test_bad_perm_literals():
    for text in ["", "()", "(1,2", "(a,b,c)", "(1,2)"]:
        with pytest.raises(ValueError):
            parse_perm(text)


def test_gauss_code_text():
    assert format_gauss(load_fixture("3_1")).count("O") == 3


def test_big_integers_become_strings():
    assert json_int(2**53) == str(2**53)
    assert json_int(-(2**60)) == str(-(2**60))
    assert json_int(12) == 12
    poly = LaurentPolynomial({0: 3**40})
    assert json.loads(dumps(poly)) == [[0, str(3**40)]]


def test_persist_round_trip(results_file):
    rec = ResultRecord("sample", {"seed": 1, "n": 5}, {"counts": {"0": 3}}, timestamp=1.0)
    assert persist_result(rec)
    (back,) = load_results()
    assert back.hash == rec.hash
    assert back.params == rec.params and back.payload == rec.payload


def test_duplicate_detection(results_file, caplog):
    rec = ResultRecord("sample", {"seed": 1}, {"x": 1}, timestamp=1.0)
    later = ResultRecord("sample", {"seed": 1}, {"x": 1}, timestamp=2.0)
    assert rec.hash == later.hash
    persist_result(rec)
    with caplog.at_level(logging.INFO, logger="petaluma.io"):
        assert not persist_result(later)
    assert "already recorded" in caplog.text


def test_corrupted_lines_are_skipped(results_file, caplog):
    persist_result(ResultRecord("a", {"seed": 1}, 1))
    with results_file.open("a") as fh:
        fh.write("{not json\n")
    persist_result(ResultRecord("b", {"seed": 2}, 2))
    with caplog.at_level(logging.WARNING):
        recs = load_results()
    assert [r.subcommand for r in recs] == ["a", "b"]
    assert "corrupted" in caplog.text


def test_filtering(results_file):
    persist_result(ResultRecord("a", {"seed": 1}, 1))
    persist_result(ResultRecord("a", {"seed": 2}, 2))
    persist_result(ResultRecord("b", {"seed": 1}, 3))
    assert len(load_results("a")) == 2
    assert [r.payload for r in load_results("a", {"seed": 2})] == [2]


def test_hash_ignores_timestamp():
    assert content_hash("x", {"a": 1}, [1]) == ResultRecord("x", {"a": 1}, [1], timestamp=5).hash
