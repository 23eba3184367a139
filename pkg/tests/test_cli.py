import json

import pytest

from matchpair import checks
from matchpair.cli import main
from matchpair.graph import parse_graph6

SPANNER6 = "IhCH?CO?G"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="in.g6"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_analyze_spanner_record(capsys, tmp_path):
    code, out, err = run(capsys, "analyze", "--input", write(tmp_path, SPANNER6 + "\n"))
    assert code == 0
    (rec,) = [json.loads(line) for line in out.splitlines()]
    assert rec["params"] == {"nu": 5, "lambda": 8, "mu": 4, "mu_prime": 4, "ratio": "4/5"}
    assert rec["pec"] == {"p": 2, "e": 0, "e_p": 2}
    assert rec["saturated"] is True and rec["skeletonK"] == 1
    assert set(rec["verdicts"].values()) == {"pass"}
    assert set(rec["verdicts"]) == set(checks.REGISTRY)
    assert "graphs 1" in err


def test_checks_selection_and_unknown_check(capsys, tmp_path):
    path = write(tmp_path, "Bw\n")
    code, out, _ = run(capsys, "analyze", "--input", path, "--checks", "thm-5.3,pec-identities")
    assert code == 0
    assert list(json.loads(out)["verdicts"]) == ["pec-identities", "thm-5.3"]
    code, _, err = run(capsys, "analyze", "--input", path, "--checks", "nope")
    assert code == 2 and "nope" in err


def test_malformed_input(capsys, tmp_path):
    path = write(tmp_path, "Bw\nnot-graph6!\nCF\n")
    code, out, err = run(capsys, "analyze", "--input", path)
    assert code == 2 and "line 2" in err and len(out.splitlines()) == 1
    code, out, err = run(capsys, "analyze", "--input", path, "--keep-going")
    assert code == 2 and len(out.splitlines()) == 2 and "malformed 1" in err


def test_missing_file_and_bad_arguments(capsys, tmp_path):
    assert run(capsys, "analyze", "--input", str(tmp_path / "absent"))[0] == 2
    assert run(capsys, "analyze", "--all-connected", "9")[0] == 2
    assert run(capsys, "analyze", "--random", "5,0.3")[0] == 2
    assert run(capsys, "analyze", "--input", "x", "--jobs", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_prints_only_failures(capsys):
    code, out, err = run(capsys, "verify", "--all-connected", "5",
                         "--checks", "lemma-4.2,lemma-4.3,pec-identities")
    assert code == 0 and out == "" and "graphs 31" in err
    code, out, _ = run(capsys, "verify", "--all-connected", "5", "--checks", "lemma-6.1")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 1 and recs
    assert all(r["verdicts"]["lemma-6.1"] == "fail" for r in recs)
    assert all(r["details"]["lemma-6.1"]["unsaturated-pair-outside"] == "pass" for r in recs)


def test_summary_mode(capsys):
    code, out, err = run(capsys, "analyze", "--all-connected", "3", "--summary",
                         "--checks", "pec-identities")
    assert code == 0 and err == ""
    assert out.splitlines()[1].split() == ["pec-identities", "4", "0", "0"]


def test_budget_skips(capsys, tmp_path):
    path = write(tmp_path, "Bw\nE~~w\n")
    code, out, err = run(capsys, "analyze", "--input", path, "--max-edges", "3")
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["params"] is not None
    assert recs[1]["details"]["budget"].startswith("skipped: budget")
    assert set(recs[1]["verdicts"].values()) == {"skip"} and "budget-skipped 1" in err


def test_timing_and_edgelist(capsys, tmp_path):
    path = write(tmp_path, "n 3\n0 1\n1 2\n", "g.txt")
    code, out, _ = run(capsys, "analyze", "--input", path, "--format", "edgelist", "--timing")
    rec = json.loads(out)
    assert code == 0 and rec["graph6"] == "Bg" and rec["elapsedMicros"] >= 0


def test_jobs_do_not_change_output(capsys):
    args = ("analyze", "--all-connected", "5", "--checks", "pec-identities,lemma-4.2,thm-5.4")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "3")
    assert serial == parallel and len(serial.splitlines()) == 31


def test_filters(capsys):
    _, out, _ = run(capsys, "analyze", "--all-connected", "4", "--bipartite-only",
                    "--checks", "pec-identities")
    # K1, K2, P3, P4, the star and C4
    assert len(out.splitlines()) == 6
    _, out, _ = run(capsys, "analyze", "--random", "6,0.2,30,1", "--connected-only",
                    "--checks", "pec-identities")
    lines = out.splitlines()
    assert 0 < len(lines) < 30


def test_conjecture_command(capsys, tmp_path):
    # nothing this small has mu < nu
    code, out, _ = run(capsys, "conjecture", "--all-connected", "6", "--bipartite-only",
                       "--summary")
    counts = dict(line.split() for line in out.splitlines())
    assert code == 0 and counts["applicable"] == "0" and counts["graphs"] == "28"
    code, out, _ = run(capsys, "conjecture", "--input", write(tmp_path, SPANNER6 + "\nCr\n"))
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs[0]["applicable"] and recs[0]["holds"]
    assert not recs[1]["applicable"]


@pytest.mark.parametrize("argv, lines", [
    (["spanner"], [SPANNER6]),
    (["all-connected", "2"], ["A_"]),
    (["all-connected", "4"], None),
    (["random", "7,0.4,5,2"], None),
    (["random-bipartite", "7,0.4,5,2"], None),
    (["k-skeleton", "2", "--seed", "1"], None),
])
def test_generate(capsys, argv, lines):
    code, out, _ = run(capsys, "generate", *argv)
    assert code == 0
    got = out.split()
    if lines is not None:
        assert got == lines
    for text in got:
        parse_graph6(text)


def test_generate_errors_and_gprime(capsys):
    assert run(capsys, "generate", "all-connected", "9")[0] == 2
    assert run(capsys, "generate", "k-skeleton")[0] == 2
    code, out, err = run(capsys, "generate", "k-skeleton", "1", "--with-gprime")
    assert out.strip() == SPANNER6 and err.split() == ["0-1", "1-2", "2-3", "3-4", "4-5"]
