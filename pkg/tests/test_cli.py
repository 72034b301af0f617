"""End-to-end runs of the ``sgtrim`` entry point, all in-process."""

import json
from collections import Counter

import pytest

from sgtrim import cli
from sgtrim.cli import main, parse_semigroup_spec
from sgtrim.core import from_generators
from sgtrim.errors import CapacityExceeded, SgtrimError


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.strip().splitlines()
    assert lines[0] == "m,g,count,provenance"
    cells = {}
    prov = {}
    for row in lines[1:]:
        m, g, v, p = row.split(",")
        cells[(int(m), int(g))] = int(v)
        prov[(int(m), int(g))] = p
    return cells, prov


# -- spec parsing ---------------------------------------------------------------

def test_parse_semigroup_spec():
    assert parse_semigroup_spec("5,8,11,12,14") == from_generators([5, 8, 11, 12, 14])
    assert parse_semigroup_spec("14,22,23@56") == from_generators(
        [14, 22, 23], truncation=56)
    for bad in ("", "a,b", "3;4", "-3,5", "0,3"):
        with pytest.raises(SgtrimError):
            parse_semigroup_spec(bad)


# -- info -------------------------------------------------------------------------

def test_info_running_example(capsys):
    code, out, err = run(["info", "5,8,11,12,14"], capsys)
    assert code == 0 and err == ""
    rec = json.loads(out)
    assert rec == {
        "multiplicity": 5,
        "conductor": 10,
        "frobenius": 9,
        "genus": 7,
        "edim": 5,
        "left_count": 3,
        "left_primitives": [5, 8],
        "big_primitives": [11, 12, 14],
        "depth": 2,
        "density": 1,
        "wilf": 5,
        "eliahou": 2,
        "quasi_superficial": False,
        "gcd_lefts": 1,
        "cutting": {
            "genus_bound_conductor": False,  # ⟨5,8⟩ below has genus 14 > 10
            "small_depth_3": False,
            "large_density_3": True,
        },
    }


def test_info_truncated_fixture(capsys):
    code, out, _ = run(["info", "14,22,23@56"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert (rec["genus"], rec["wilf"], rec["eliahou"]) == (43, 35, -1)
    assert rec["conductor"] == 56
    assert rec["edim"] == 7


def test_info_naturals(capsys):
    code, out, _ = run(["info", "1"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["multiplicity"] == 1 and rec["conductor"] == 0
    assert rec["frobenius"] == -1 and rec["genus"] == 0
    assert rec["quasi_superficial"] is True
    assert rec["gcd_lefts"] == 0
    assert rec["cutting"] == {"genus_bound_conductor": False,
                              "small_depth_3": False,
                              "large_density_3": False}


def test_info_verify(capsys):
    code, _, err = run(["info", "5,8,11,12,14", "--verify"], capsys)
    assert code == 0 and err == ""
    code, _, _ = run(["info", "16,25,26@64", "--verify"], capsys)
    assert code == 0


def test_info_bad_specs(capsys):
    for spec in ("4,6", "abc", "0,3", "3,4@-2", ""):
        code, out, err = run(["info", spec], capsys)
        assert code == 2, spec
        assert out == "" and "sgtrim info:" in err


# -- usage errors ------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["count", "8"],                      # neither --all nor --multiplicity
    ["count", "0", "--all"],             # gamma must be positive
    ["count", "8", "--all", "--multiplicity", "3"],
    ["search", "8"],                     # no target flag
    ["search", "8", "--wilf-negative", "--trim", "sometimes"],
    ["info"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    capsys.readouterr()


# -- count -------------------------------------------------------------------------

def test_count_all_small(capsys, known_counts):
    code, out, err = run(["count", "8", "--all"], capsys)
    assert code == 0 and err == ""
    cells, prov = parse_csv(out)
    totals = Counter()
    for (m, g), v in cells.items():
        totals[g] += v
    assert [totals[g] for g in range(9)] == known_counts[:9]
    assert prov[(1, 0)] == "explored" and prov[(1, 5)] == "structural_zero"
    assert prov[(9, 8)] == "explored" and prov[(9, 3)] == "structural_zero"

    code, out2, _ = run(["count", "8", "--all", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out2)
    assert {(r["m"], r["g"]): r["count"] for r in rows} == cells
    assert all(r["provenance"] == prov[(r["m"], r["g"])] for r in rows)


def test_count_gamma_one(capsys):
    code, out, _ = run(["count", "1", "--all"], capsys)
    assert code == 0
    cells, _ = parse_csv(out)
    assert cells == {(1, 0): 1, (1, 1): 0, (2, 0): 0, (2, 1): 1}


def test_count_single_multiplicity(capsys, population12):
    code, out, _ = run(["count", "10", "--multiplicity", "4"], capsys)
    assert code == 0
    cells, _ = parse_csv(out)
    assert {m for m, _ in cells} == {1, 4}
    expected = Counter(s.genus for g in range(11) for s in population12[g]
                       if s.multiplicity == 4)
    for g in range(11):
        assert cells[(4, g)] == expected.get(g, 0), g


def test_count_trivial_multiplicity(capsys):
    code, out, _ = run(["count", "5", "--multiplicity", "1"], capsys)
    assert code == 0
    cells, _ = parse_csv(out)
    assert cells[(1, 0)] == 1
    assert all(v == 0 for (m, g), v in cells.items() if g > 0)


def test_count_usage_boundaries(capsys):
    code, _, err = run(["count", "8", "--multiplicity", "12"], capsys)
    assert code == 1 and "genus" in err
    code, _, err = run(["count", "8", "--kaplan", "--multiplicity", "3"], capsys)
    assert code == 1 and "--all" in err


def test_count_kaplan_matches_direct(capsys):
    code, direct, _ = run(["count", "15", "--all"], capsys)
    assert code == 0
    code, hybrid, _ = run(["count", "15", "--all", "--kaplan"], capsys)
    assert code == 0
    dc, dp = parse_csv(direct)
    hc, hp = parse_csv(hybrid)
    assert hc == dc  # identical counts, cell for cell
    flips = {k for k in dc if hp[k] != dp[k]}
    assert flips and all(m > 10 for m, _ in flips)
    assert all(hp[k] == "recurrence" for k in flips)


# -- search ------------------------------------------------------------------------

def test_search_non_generic(capsys):
    code, out, err = run(["search", "10", "--non-generic"], capsys)
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    assert err.strip() == f"{len(lines)} hits"
    assert lines, "genus 10 certainly holds non-generic semigroups"
    keys = ["generators", "truncation", "multiplicity", "genus", "conductor",
            "edim", "wilf", "eliahou"]
    for rec in lines:
        assert list(rec) == keys
        s = from_generators(rec["generators"], truncation=rec["truncation"])
        assert s.conductor > 3 * s.multiplicity
        assert (s.genus, s.multiplicity) == (rec["genus"], rec["multiplicity"])
        assert s.wilf_number() == rec["wilf"]
    order = [(r["genus"], r["multiplicity"], r["generators"]) for r in lines]
    assert order == sorted(order)


def test_search_empty_targets(capsys):
    for flag in ("--wilf-negative", "--eliahou-negative", "--zero-wilf-nontrivial"):
        code, out, err = run(["search", "12", flag], capsys)
        assert code == 0
        assert out == ""
        assert err.strip() == "0 hits"


@pytest.mark.parametrize("flag", [
    "--wilf-negative", "--eliahou-negative", "--zero-wilf-nontrivial",
    "--non-generic",
])
def test_search_trim_equivalence(flag, capsys):
    code, auto, _ = run(["search", "12", flag], capsys)
    assert code == 0
    code, none, _ = run(["search", "12", flag, "--trim", "none"], capsys)
    assert code == 0
    assert auto == none


def test_search_thread_invariance(capsys):
    runs = []
    for t in ("1", "3"):
        code, out, err = run(["search", "14", "--non-generic", "--threads", t],
                             capsys)
        assert code == 0
        runs.append((out, err))
    assert runs[0] == runs[1]


def test_threads_env_default(capsys, monkeypatch):
    monkeypatch.setenv("SGTRIM_THREADS", "3")
    code, with_env, _ = run(["count", "9", "--all"], capsys)
    assert code == 0
    monkeypatch.setenv("SGTRIM_THREADS", "not-a-number")
    code, fallback, _ = run(["count", "9", "--all"], capsys)
    assert code == 0
    assert with_env == fallback


# -- failure plumbing ---------------------------------------------------------------

def test_capacity_exceeded_exit_code(capsys, monkeypatch):
    def blow_up(task, engine="auto", visitor=None):
        raise CapacityExceeded("count at (2, 3) exceeds 64 bits")

    monkeypatch.setattr(cli, "explore", blow_up)
    code, out, err = run(["count", "8", "--all"], capsys)
    assert code == 4
    assert "exceeds" in err


def test_broken_pipe_exits_cleanly():
    """A downstream ``head`` hanging up must not produce a traceback or a
    nonzero exit — needs a real pipe, so this one forks."""
    import subprocess
    import sys

    inner = (f"{sys.executable} -m sgtrim.cli search 16 --non-generic"
             " | head -n 1")
    proc = subprocess.run(["bash", "-c", f"set -o pipefail; {inner}"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert "Traceback" not in proc.stderr
    assert proc.stdout.count("\n") == 1
