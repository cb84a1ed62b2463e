import json
import os
import subprocess

import pytest

BIN = os.environ.get("STRATA_SCOPE_BIN", "strata_scope")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)


def ok(*args, **kwargs):
    r = run(*args, **kwargs)
    assert r.returncode == 0, r.stderr
    return r.stdout


def test_strata_examples():
    assert ok("strata", "--space", "wn", "--n", "3", "--format", "table").splitlines()[-1] == "8 strata"
    records = json.loads(ok("strata", "--space", "tn", "--n", "2", "--format", "json"))["records"]
    assert len(records) == 3
    assert ok("strata", "--space", "wn", "--n", "1").splitlines()[-1] == "1 stratum"
    dot = ok("strata", "--space", "wn", "--n", "3", "--format", "dot")
    assert dot.startswith("digraph") and dot.count("->") == 10


def test_resolve_examples():
    r4 = json.loads(ok("resolve", "--space", "wn", "--n", "4", "--format", "json"))
    assert r4["verdicts"]["small"] is True
    assert r4["verdicts"]["nontrivial"] is True
    assert len(r4["exceptional"]) == 3
    table = ok("resolve", "--space", "wn", "--n", "4")
    assert "example n = 4: 3 exceptional strata" in table
    t3 = json.loads(ok("resolve", "--space", "tn", "--n", "3", "--format", "json"))
    assert t3["exceptional"] == []


def test_resolve_ih_levels():
    r7 = json.loads(ok("resolve", "--space", "wn", "--n", "7", "--format", "json"))
    assert r7["verdicts"]["ih_small"] is False
    assert r7["verdicts"]["ih_witness"] == 3


def test_verify():
    assert "all suites passed" in ok("verify", "--n-max", "5")
    assert "all suites passed" in ok("verify", "--n-max", "7", "--suite", "trees")
    assert "all suites passed" in ok("verify", "--n-max", "4", "--suite", "li")


def test_tree_examples():
    fig2 = ok("tree", "--n", "8", "--nest", "1234|5678; 13|24|5678; {1,3}; {6,7,8}; {6,7}")
    assert "Z 67  legs 6,7" in fig2
    fig1 = json.loads(ok("tree", "--n", "8", "--nest", "123|45678; 12|3|45|67|8; 12|3|45|6|7|8",
                         "--stabilized", "--format", "json"))
    assert len(fig1["vertices"]) == 10
    lone = json.loads(ok("tree", "--n", "4", "--nest", "1234", "--format", "json"))
    assert len(lone["vertices"]) == 2
    assert lone["vertices"][1]["legs"] == [1, 2, 3, 4]


def test_arrangement_and_count():
    assert "6 lines" in ok("arrangement", "--n", "4")
    assert "4 triple points, 3 double points" in ok("arrangement", "--n", "4")
    c8 = json.loads(ok("count", "--n", "8", "--format", "json"))
    assert c8["partitions"] == 4140
    c2 = json.loads(ok("count", "--n", "2", "--format", "json"))
    assert c2["partitions"] == 2
    assert sum(c2["strata_by_codim"]["wn"]) == 2


def test_li_check():
    assert run("li-check", "--n", "4", "--graph", "complete", "--enum", "lzlz").returncode == 0
    assert run("li-check", "--n", "4", "--graph", "edgeless", "--enum", "shuffle:12|34:12:34").returncode == 0


def test_exit_1_check_failed():
    r = run("li-check", "--n", "3", "--graph", "edgeless", "--enum", "order:12|3 13|2 123 1|23 1|2|3")
    assert r.returncode == 1
    assert "J = {12|3, 13|2}" in r.stdout


@pytest.mark.parametrize("args", [
    ["strata", "--space", "xn", "--n", "3"],
    ["strata", "--space", "wn"],
    ["strata", "--space", "wn", "--n", "0"],
    ["resolve", "--space", "polydeg-complete", "--n", "3"],
    ["tree", "--n", "4", "--nest", "12|3"],
    ["tree", "--n", "4", "--nest", "1234; 12|34; 13|24"],
    ["verify", "--suite", "nope"],
    ["li-check", "--n", "3", "--enum", "order:123 12|3"],
    ["strata", "--space", "wn", "--n", "3", "--format", "yaml"],
    ["frobnicate"],
])
def test_exit_2_config_error(args):
    r = run(*args)
    assert r.returncode == 2, (r.stdout, r.stderr)


@pytest.mark.parametrize("args", [
    ["strata", "--space", "tn", "--n", "7"],
    ["strata", "--space", "wn", "--n", "8"],
    ["resolve", "--space", "tn", "--n", "9", "--force"],
    ["count", "--n", "9"],
    ["li-check", "--n", "5", "--graph", "complete"],
])
def test_exit_3_cap(args):
    r = run(*args)
    assert r.returncode == 3, (r.stdout, r.stderr)


def test_exit_4_model_inconsistency():
    r = run("resolve", "--space", "wn", "--n", "4", "--target-shift", "5")
    assert r.returncode == 4
    assert "negative fiber" in r.stderr


def test_output_file_and_threads(tmp_path):
    outputs = []
    for threads in ("1", "2", "4"):
        path = tmp_path / f"r{threads}.json"
        ok("resolve", "--space", "tn", "--n", "5", "--rows", "--format", "json",
           "--threads", threads, "--output", str(path))
        outputs.append(path.read_bytes())
    path = tmp_path / "env.json"
    ok("resolve", "--space", "tn", "--n", "5", "--rows", "--format", "json", "--output", str(path),
       env={"STRATA_SCOPE_THREADS": "3"})
    outputs.append(path.read_bytes())
    assert all(o == outputs[0] for o in outputs)
    strata_runs = {ok("strata", "--space", "tn", "--n", "4", "--format", "json", "--threads", t) for t in ("1", "3")}
    assert len(strata_runs) == 1
