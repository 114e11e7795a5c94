import json

import pytest

from petaluma.cli import main
from petaluma.io import load_results


@pytest.fixture(autouse=True)
def _isolated_results(results_file):
    return results_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "(1,3,5,2,4)")
    assert code == 0
    assert "c2: 1" in out and "Delta: t^1 - 1 + t^-1" in out


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "(1,3,5,2,4)", "--json", "--jones")
    payload = json.loads(out)
    assert payload["c2"] == 1
    assert payload["delta"] == [[1, 1], [0, -1], [-1, 1]]
    assert "jones" in payload


def test_enumerate(capsys, tmp_path):
    csv = tmp_path / "h.csv"
    code, out, _ = run(capsys, "enumerate", "--p", "5", "--csv", str(csv))
    assert code == 0
    assert "0\t110" in out and "1\t10" in out
    assert csv.read_text() == "value,count\n0,110\n1,10\n"
    assert load_results("enumerate")[0].payload["counts"] == {"0": 110, "1": 10}


def test_smooth(capsys):
    code, out, _ = run(capsys, "smooth", "(2,6,10,4,9,1,3,11,8,7,5)", "10")
    assert code == 0
    assert "m=2" in out and "(4,9,1,3 | 8,7,5,2,6,10)" in out


def test_lk_and_swap_report(capsys):
    assert run(capsys, "lk", "(1,3,2,4; 1,1)")[1].strip() == "lk: -1"
    code, out, _ = run(capsys, "swap-report", "(1,3,5,2,4)", "2", "--json")
    assert json.loads(out)["holds"] is True
    code, out, _ = run(capsys, "swap-report", "(4,1,9,7,3,8,2,6,5)", "1", "5", "--json")
    assert code == 0 and json.loads(out)["k"] == 2


def test_petalize(capsys, tmp_path):
    pd = tmp_path / "k.pd"
    pd.write_text("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]")
    code, out, _ = run(capsys, "petalize", "--pd", str(pd), "--verify", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["p"] <= 5 and all(payload["verify"].values())


def test_petalize_fixture_simple(capsys):
    code, out, _ = run(capsys, "petalize", "--fixture", "4_1", "--variant", "simple", "--verify")
    assert code == 0 and "delta: ok" in out


def test_sample_determinism(capsys, tmp_path):
    args = ["sample", "--kind", "lk_link", "--n", "6", "--m", "4", "--samples", "3000",
            "--seed", "11", "--threads", "2", "--json"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert json.loads(first)["hash"] == json.loads(second)["hash"]
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "sample", "--kind", "c2_knot", "--n", "2", "--exhaustive", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["histogram"]["counts"] == {"0": 110, "1": 10}


def test_lo(capsys):
    code, out, _ = run(capsys, "lo", "1,1,1", "--json")
    assert code == 0 and json.loads(out)["max_count"] == 3


def test_lemma_and_couple(capsys):
    code, out, _ = run(capsys, "lemma", "match", "m=10", "n=10", "--trials", "200", "--json")
    assert code == 0 and json.loads(out)["trials"] == 200
    code, out, _ = run(capsys, "couple", "--n", "4", "--json")
    assert code == 0 and json.loads(out)["k"] == 1


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,3,4")
    assert code == 0
    assert out.count("[PASS]") == 3


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["invariants", "(1,2"],
        ["invariants", "(1,2)"],
        ["smooth", "(1,3,5,2,4)", "9"],
        ["enumerate", "--p", "4"],
        ["lo", "1,0"],
        ["lo", "x"],
        ["lemma", "match", "m=3"],
        ["petalize", "--pd", "/nonexistent.pd"],
        ["sample", "--kind", "lk_link"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "Traceback" not in err


def test_help_documents_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for flag in ("--kind", "--n", "--m", "--samples", "--seed", "--threads", "--exhaustive", "--out", "--json"):
        assert flag in out
