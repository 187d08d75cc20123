import json
import subprocess
import sys

import pytest

from raagpl.certificate import seal
from raagpl.cli import main

PATH = "vertices: a, b, c\ngraph: a-b, b-c\n"


@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(PATH + "word: a c b^-1 a\n")
    return p


def test_reduce_text(capsys):
    assert main(["reduce", "--inline", "graph: a-b; word: a b a^-1", "--format", "text"]) == 0
    assert capsys.readouterr().out == "b\n"


def test_reduce_identity_text(capsys):
    assert main(["reduce", "--inline", "vertices: a", "--word", "a a^-1", "--format", "text"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_reduce_json(capsys):
    assert main(["reduce", "--inline", "graph: a-b", "--word", "b a"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["results"][0]["text"] == "a b"
    assert obj["results"][0]["trivial"] is False


def test_decompose(capsys):
    assert main(["decompose", "--inline", "graph: a-b; vertices: c; word: a b c", "--format", "text"]) == 0
    assert capsys.readouterr().out == "k=2: a^1 b^1 | c^1\n"


def test_witness_and_verify(tmp_path, graph_file, capsys):
    out = tmp_path / "cert.json"
    assert main(["witness", "--graph", str(graph_file), "--out", str(out)]) == 0
    summary = capsys.readouterr().out
    obj = json.loads(out.read_text())
    assert summary == f"image {obj['image']} in [{obj['target_interval'][0]}, {obj['target_interval'][1]}]\n"
    assert main(["verify", str(out)]) == 0
    assert capsys.readouterr().out == f"OK {obj['image']}\n"


def test_witness_worked_value(capsys):
    assert main(["witness", "--inline", "vertices: a, b; word: a b"]) == 0
    cap = capsys.readouterr()
    assert json.loads(cap.out)["image"] == "13/4"
    assert cap.err == "image 13/4 in [13/4, 7/2]\n"


def test_witness_text(capsys):
    assert main(["witness", "--inline", "vertices: a, b; word: a b", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "stage 2: 9/4 -> 13/4" in out
    assert out.endswith("image of 5/4 is 13/4 in [13/4, 7/2]\n")


def test_witness_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"c{i}.json"
        assert main(["witness", "--inline", PATH.replace("\n", ";"), "--word", "a c^-2 b a", "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_identity_exits_2(capsys):
    assert main(["witness", "--inline", "graph: a-b", "--word", "a b a^-1 b^-1"]) == 2
    assert "identity" in capsys.readouterr().err


def test_parse_error_exits_1(capsys):
    assert main(["reduce", "--inline", "graph: a-a"]) == 1
    assert "line 1" in capsys.readouterr().err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["verify"])
    assert e.value.code == 1
    assert main(["witness"]) == 1
    assert main(["witness", "--inline", "graph: a-b", "--word", "a", "--word", "b"]) == 1
    assert main(["verify", "/nonexistent/cert.json"]) == 1


def test_tampered_certificate_exits_3(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["witness", "--inline", PATH.replace("\n", ";") + "word: a c", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    obj["image"] = obj["test_point"]
    out.write_text(json.dumps(obj))
    assert main(["verify", str(out)]) == 3
    seal(obj)
    out.write_text(json.dumps(obj))
    assert main(["verify", str(out)]) == 3
    out.write_text("{not json")
    assert main(["verify", str(out)]) == 3
    assert "verification failed" in capsys.readouterr().err


def test_separate(tmp_path, capsys):
    out = tmp_path / "sep.json"
    args = ["separate", "--inline", "vertices: a, b", "--word", "a", "--word", "a b^-1", "--out", str(out)]
    assert main(args) == 0
    assert main(["verify", str(out)]) == 0
    assert capsys.readouterr().out == "OK 9/4 13/4\n"
    assert main(["separate", "--inline", "vertices: a, b", "--word", "a", "--word", "b b^-1"]) == 2


def test_sweep(capsys):
    assert main(["sweep", "--seed", "42", "--cases", "30", "--format", "text"]) == 0
    assert capsys.readouterr().out.startswith("seed 42: ")


def test_module_entry_point_and_stdin(tmp_path):
    run = lambda *a, **kw: subprocess.run([sys.executable, "-m", "raagpl", *a], capture_output=True, text=True, **kw)
    res = run("witness", "--inline", "vertices: a; word: a^-1")
    assert res.returncode == 0
    ok = run("verify", "-", input=res.stdout)
    assert (ok.returncode, ok.stdout) == (0, "OK 9/4\n")
    bad = run("verify", "-", input=res.stdout.replace('"9/4"', '"5/2"'))
    assert bad.returncode == 3
