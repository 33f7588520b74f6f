import json
import subprocess
import sys

import pytest

from packetc import cli
from packetc.global_admissibility import GlobalSetting, LocalData
from packetc.local_forms import Place
from packetc.parameters import GroupKind, Parameter
from strategies import ONE, XI

ODD = GroupKind.ODD
PHI = Parameter.of(ODD, [(ONE, 2), (XI, 2)])


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


def run(argv):
    code, env = cli.execute(argv)
    return code, cli._strip(env)


def test_hilbert(files):
    code, env = run(["forms", "hilbert", "2", "5", "--p", "5"])
    assert code == 0 and env["result"]["symbol"] == -1
    assert env["schema"] == cli.SCHEMA and env["command"] == "forms hilbert"


def test_packet_enumerate(files):
    path = files("so5.json", PHI.to_json())
    code, env = run(["packet", "enumerate", path, "--hasse", "1"])
    assert code == 0
    assert env["diagnostics"] == []
    entries = {tuple(e) for e in env["result"]["entries"]}
    assert entries == {(1, 1), (-1, -1)}


def test_validation_error_exit_2(files):
    bad = PHI.to_json()
    bad["blocks"][0]["a"] = 1
    code, env = run(["param", "validate", files("bad.json", bad)])
    assert code == 2
    assert env["error"]["code"] == "validation"


def test_schema_error_exit_2(files):
    code, env = run(["param", "validate", files("bad.json", {"blocks": []})])
    assert code == 2 and env["error"]["code"] == "schema" and env["error"]["path"]
    code, _ = run(["param", "validate", "/nonexistent.json"])
    assert code == 2


def test_usage_error_exit_2():
    assert run(["nonsense"])[0] == 2


def test_unsupported_exit_3(files):
    psi = Parameter.of(ODD, [(ONE, 1, 2, 2)])
    code, env = run(["dual", "map", files("psi.json", psi.to_json())])
    assert code == 3 and env["error"]["code"] == "unsupported"


def test_dual_round_trip(files):
    psi = Parameter.of(ODD, [(ONE, 1, 2), (XI, 2)])
    code, env = run(["param", "dual", files("psi.json", psi.to_json())])
    assert code == 0
    back = Parameter.from_json(env["result"])
    code, env = run(["param", "dual", files("phi.json", back.to_json())])
    assert Parameter.from_json(env["result"]) == psi


def test_deterministic_output(files):
    path = files("so5.json", PHI.to_json())
    assert run(["dual", "signs", path]) == run(["dual", "signs", path])


def test_random_uses_seed(monkeypatch):
    monkeypatch.setenv("PACKETC_SEED", "7")
    first = run(["param", "random", "--count", "3"])
    second = run(["param", "random", "--count", "3"])
    assert first == second and first[0] == 0
    monkeypatch.setenv("PACKETC_SEED", "8")
    assert run(["param", "random", "--count", "3"]) != first


def test_global_enumerate(files):
    loc = ((1, 0), (0, 1))
    setting = GlobalSetting(PHI, (LocalData(Place(3), PHI, loc), LocalData(Place(5), PHI, loc)))
    path = files("setting.json", setting.to_json())
    code, env = run(["global", "enumerate", path])
    assert code == 0 and env["result"]["coset"] and env["result"]["count"] == 4
    code, env = run(["global", "admissible", path, "--family", '["+-", "+-"]'])
    assert code == 0 and env["result"]["admissible"] and env["result"]["product_formula"]


def test_batch(files):
    path = files("so5.json", PHI.to_json())
    batch = files("batch.json", [["packet", "enumerate", path], f"dual twist {path}", ["nonsense"]])
    code, env = run(["batch", batch])
    assert code == 0
    assert [x["exit"] for x in env["result"]] == [0, 0, 2]
    json.dumps(env)


def test_json_and_table_agree(files, capsys):
    path = files("so5.json", PHI.to_json())
    assert cli.main(["packet", "enumerate", path, "--json"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert cli.main(["packet", "enumerate", path]) == 0
    rows = [line.split()[1:] for line in capsys.readouterr().out.splitlines()[3:]]
    assert rows == [["+" if v == 1 else "-" for v in entry] for entry in env["result"]["entries"]]


def test_console_entry_point(files):
    path = files("so5.json", PHI.to_json())
    out = subprocess.run([sys.executable, "-m", "packetc", "dual", "twist", path, "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["eps_phi"] == [1, 1]
