import json
import subprocess
import sys

import pytest

from superdom.cli import main
from superdom.graph import complete_graph, cycle_graph, format_graph


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "p4.el": "4 3\n0 1\n1 2\n2 3\n",
        "k3.el": format_graph(complete_graph(3)),
        "c6.el": format_graph(cycle_graph(6)),
        "bad.el": "3 2\n0 1\n0 1\n",
        "f.cnf": "p cnf 1 1\n1 1 1 0\n",
        "p3.el": "3 2\n0 1\n1 2\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_gamma_sp(files, capsys):
    code, out = run(["compute", "gamma-sp", "--input", files["p4.el"], "--canonical", "--cert"], capsys)
    res = json.loads(out)
    assert code == 0 and res["value"] == 2 and res["status"] == "exact"
    assert res["instance"] == {"n": 4, "m": 3, "components": 1}
    assert res["certificate"] == [1, 2]
    assert "timing" not in res


def test_result_fields(files, capsys):
    _, out = run(["compute", "gamma-sp", "--input", files["p4.el"]], capsys)
    res = json.loads(out)
    for key in ("command", "instance", "value", "certificate", "provenance", "timing", "status"):
        assert key in res
    assert res["certificate"] is None


def test_verify_refusal(files, capsys):
    code, out = run(["verify", "--input", files["p4.el"], "--set", "0,1"], capsys)
    res = json.loads(out)
    assert code == 1 and res["refusal"]["vertex"] == 3 and res["value"] is None


def test_subdivision_and_certificate_round_trip(files, capsys):
    code, out = run(["compute", "subdivision", "--k", "3", "--input", files["k3.el"], "--cert"], capsys)
    res = json.loads(out)
    assert code == 0 and res["value"] == 6 and "k≡3" in res["provenance"]
    ids = ",".join(map(str, res["certificate"]))
    code, out = run(["verify", "--input", files["k3.el"], "--k", "3", "--set", ids], capsys)
    assert code == 0 and json.loads(out)["value"] == 6


def test_ii_certificate_round_trip(files, capsys):
    code, out = run(["compute", "ii", "--input", files["c6.el"], "--cert", "--canonical"], capsys)
    res = json.loads(out)
    assert code == 0 and res["value"] == 2
    text = "/".join(",".join(f"{u}-{v}" for u, v in res["certificate"][p]) for p in ("m1", "m2"))
    code, out = run(["verify", "--input", files["c6.el"], "--ii", text], capsys)
    assert code == 0 and json.loads(out)["value"] == 2
    code, _ = run(["verify", "--input", files["c6.el"], "--ii", "0-1,2-3"], capsys)
    assert code == 1


def test_every_gamma_certificate_verifies(files, capsys):
    for name in ("p4.el", "k3.el", "c6.el"):
        for cmd in (["compute", "gamma-sp"], ["compute", "tree"]):
            code, out = run(cmd + ["--input", files[name], "--cert"], capsys)
            if code != 0:
                continue
            ids = ",".join(map(str, json.loads(out)["certificate"]))
            assert run(["verify", "--input", files[name], "--set", ids], capsys)[0] == 0


def test_tree_refuses_cycle(files, capsys):
    code, out = run(["compute", "tree", "--input", files["k3.el"]], capsys)
    assert code == 1 and json.loads(out)["status"] == "refused"


def test_bounds(files, capsys):
    code, out = run(["compute", "bounds", "--input", files["p4.el"], "--exact"], capsys)
    res = json.loads(out)
    assert code == 0 and res["bounds"]["lower"] <= res["value"] <= res["bounds"]["upper"]


def test_budget_exit_code(tmp_path, capsys):
    p = tmp_path / "g.el"
    edges = [(u, v) for u in range(16) for v in range(u + 1, 16) if (u * v + u + v) % 3 == 0]
    p.write_text(f"16 {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges))
    code, out = run(["compute", "gamma-sp", "--input", str(p), "--budget", "1"], capsys)
    res = json.loads(out)
    assert code == 2 and res["status"] == "incomplete" and res["value"] is None
    assert res["bounds"]["lower"] <= res["bounds"]["upper"]


def test_usage_errors(files, capsys):
    assert main(["compute", "gamma-sp", "--input", files["bad.el"]]) == 64
    assert main(["compute", "subdivision", "--input", files["k3.el"]]) == 64
    with pytest.raises(SystemExit) as exc:
        main(["compute", "gamma-sp", "--nope"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64


def test_reduce_sat(files, tmp_path, capsys):
    prefix = str(tmp_path / "art")
    code, out = run(["reduce", "sat", "--input", files["f.cnf"], "--out", prefix], capsys)
    res = json.loads(out)
    assert code == 0 and res["threshold"] == 8 and res["audit"]["n"] == 14
    roles = (tmp_path / "art.roles").read_text().splitlines()
    assert len(roles) == 14 and roles[-1] == "13 v*"
    assert (tmp_path / "art.el").read_text().startswith("14 15\n")


def test_reduce_alpha(files, capsys):
    code, out = run(["reduce", "alpha", "--input", files["p3.el"], "--set", "0,2", "--k", "2"], capsys)
    res = json.loads(out)
    assert code == 0 and res["value"] == 4 and res["threshold"] == 4
    code, _ = run(["reduce", "alpha", "--input", files["p3.el"], "--set", "0,1"], capsys)
    assert code == 1


def test_tsv(files, capsys):
    _, out = run(["compute", "gamma-sp", "--input", files["p4.el"], "--format", "tsv", "--canonical"], capsys)
    header, row = out.strip().split("\n")
    assert dict(zip(header.split("\t"), row.split("\t")))["value"] == "2"


def test_canonical_is_byte_identical(files):
    cmd = [sys.executable, "-m", "superdom.cli", "compute", "subdivision", "--k", "2",
           "--input", files["c6.el"], "--canonical", "--cert"]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_bench_canonical(capsys):
    code, out = run(["bench", "--canonical"], capsys)
    res = json.loads(out)
    assert code == 0 and all("seconds" not in r for r in res["rows"])
    again = run(["bench", "--canonical"], capsys)[1]
    assert again == out


def test_selftest_single_suite(capsys):
    code, out = run(["selftest", "--suite", "1", "--canonical"], capsys)
    assert code == 0 and "criterion 1 [closed forms]: PASS" in out
