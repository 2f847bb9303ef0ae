import json
import subprocess
import sys

import pytest

from mccodes.cli import main
from mccodes.compositions import MixtureDocument
from mccodes.core import Composition


@pytest.fixture(scope="module")
def book_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "book.json"
    assert main(["build", "--m", "8", "--h", "2", "--out", str(path)]) == 0
    return path


def run_json(argv, capsys):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out.strip().splitlines()[-1] if code else out)


def test_build_file(book_path):
    data = json.loads(book_path.read_text())
    assert data["schema_version"] == 1
    assert len(data["codewords"]) == 255
    assert data["layout"]["N"] == 52
    assert all(len(c) == 52 for c in data["codewords"])


def test_build_is_byte_identical(tmp_path, book_path):
    again = tmp_path / "again.json"
    main(["build", "--m", "8", "--h", "2", "--out", str(again)])
    assert again.read_bytes() == book_path.read_bytes()


def test_build_small(capsys):
    code, data = run_json(["build", "--m", "3", "--h", "2"], capsys)
    assert code == 0 and len(data["codewords"]) == 7


def test_build_bad_degree(capsys):
    assert main(["build", "--m", "40", "--h", "2"]) == 2
    assert "unsupported field degree" in capsys.readouterr().err


def test_mix_seeds_differ_but_canonicalize(tmp_path, book_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["mix", "--codebook", str(book_path), "--indices", "3,17"]
    assert main(base + ["--seed", "1", "--out", str(a)]) == 0
    assert main(base + ["--seed", "2", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert (da["seed"], db["seed"]) == (1, 2)
    assert da["prng"] == "splitmix64-fisher-yates"
    assert MixtureDocument.from_json(a.read_text()).to_json() == MixtureDocument.from_json(b.read_text()).to_json()


def test_global_flags_before_subcommand(tmp_path, book_path):
    out = tmp_path / "m.json"
    assert main(["--seed", "7", "--out", str(out), "mix", "--codebook", str(book_path), "--indices", "5"]) == 0
    assert json.loads(out.read_text())["seed"] == 7


def test_mix_errors(book_path, capsys):
    assert main(["mix", "--codebook", str(book_path), "--indices", "3,3"]) == 2
    assert "collection must be a set" in capsys.readouterr().err
    assert main(["mix", "--codebook", str(book_path), "--indices", "1,2,3"]) == 2
    assert main(["mix", "--codebook", str(book_path), "--indices", "300"]) == 2


def _mix(tmp_path, book_path, indices, name="mix.json"):
    path = tmp_path / name
    main(["mix", "--codebook", str(book_path), "--indices", indices, "--seed", "1", "--out", str(path)])
    return path


def test_decode_pair(tmp_path, book_path, capsys):
    mixture = _mix(tmp_path, book_path, "3,17")
    capsys.readouterr()
    for strategy in ("brute", "syndrome"):
        code, report = run_json(
            ["decode", "--codebook", str(book_path), "--mixture", str(mixture), "--strategy", strategy], capsys
        )
        assert code == 0
        assert report["codeword_indices"] == [3, 17]
        assert report["h_bar"] == 2
        assert set(report["stages"]) == {"separate", "recover_sum", "segment", "unbalance", "subset", "verify"}


def test_decode_singleton(tmp_path, book_path, capsys):
    mixture = _mix(tmp_path, book_path, "5")
    capsys.readouterr()
    code, report = run_json(["decode", "--codebook", str(book_path), "--mixture", str(mixture)], capsys)
    assert code == 0 and report["h_bar"] == 1 and report["codeword_indices"] == [5]


def test_decode_tampered(tmp_path, book_path, capsys):
    mixture = _mix(tmp_path, book_path, "3,17")
    data = json.loads(mixture.read_text())
    # drop one prefix-side composition (more ones than half its length)
    for pos, text in enumerate(data["readout"]):
        comp = Composition.parse(text)
        if 1 < comp.length < 52 and 2 * comp.ones > comp.length:
            del data["readout"][pos]
            break
    mixture.write_text(json.dumps(data))
    capsys.readouterr()
    code, err = run_json(["decode", "--codebook", str(book_path), "--mixture", str(mixture)], capsys)
    assert code == 2
    assert err["stage"] == "recover_sum"
    assert "incomplete prefix multiset" in err["reason"]


def test_decode_missing_file(book_path, capsys):
    assert main(["decode", "--codebook", str(book_path), "--mixture", "/nonexistent/m.json"]) == 2


@pytest.mark.parametrize("scope", ["bh", "dyck", "bounds"])
def test_verify_scopes(scope, book_path, capsys):
    code, report = run_json(["verify", "--scope", scope, "--codebook", str(book_path)], capsys)
    assert code == 0 and report["ok"]
    assert all(c["ok"] for c in report["checks"])


def test_verify_bounds_slack(book_path, capsys):
    _, report = run_json(["verify", "--scope", "bounds", "--codebook", str(book_path)], capsys)
    by_name = {c["name"]: c for c in report["checks"]}
    u_bound = by_name["|RDS(u)_i|"]
    assert u_bound["observed"] <= 6 and u_bound["slack"] >= 0
    assert by_name["RDS(v)_i"]["observed"] <= 21


def test_verify_mc_sample(book_path, capsys):
    code, report = run_json(["verify", "--scope", "mc", "--sample", "20", "--codebook", str(book_path)], capsys)
    assert code == 0 and report["checks"][0]["name"] == "2-MC over 20 codewords"


def test_verify_guard(book_path, capsys):
    assert main(["verify", "--scope", "mc", "--codebook", str(book_path), "--limit", "100"]) == 3
    assert "instance too large" in capsys.readouterr().err


def test_rate_h3_below_third(capsys):
    code, report = run_json(["rate", "--h", "3", "--m", "5"], capsys)
    assert code == 0
    assert report["rows"][0]["rate"] < 1 / 3


def test_rate_empty(capsys):
    code, report = run_json(["rate", "--h", "2"], capsys)
    assert code == 0 and report["rows"] == [] and report["violations"] == []


def test_rate_padding_dip_is_reported(capsys):
    # padding sends m=8 to n=16 but m=10 to n=36, so the rate drops
    assert main(["rate", "--h", "2", "--m", "8,10,12"]) == 4
    captured = capsys.readouterr()
    assert "m=8->10" in captured.out
    assert "invariants violated" in captured.err


def test_rate_increasing_within_one_padding():
    code = main(["rate", "--h", "2", "--m", "10,12,14"])
    assert code == 0


def test_module_entry_point(book_path):
    proc = subprocess.run(
        [sys.executable, "-m", "mccodes", "verify", "--scope", "dyck", "--codebook", str(book_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS  is_dyck" in proc.stdout
