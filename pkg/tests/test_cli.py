import json

import pytest

from fracset.cli import make_record, normalize, replay_record, run
from fracset.setcore import IntegerSet, write_set_file


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def set_files(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    write_set_file(IntegerSet.interval(1, 4), a)
    write_set_file(IntegerSet.interval(1, 4), b)
    return str(a), str(b)


def test_fracstat(capsys, set_files):
    code, out = call(capsys, "fracstat", "--a", set_files[0], "--b", set_files[1])
    rep = json.loads(out)
    assert code == 0
    assert rep["ratio_count"] == 11
    assert rep["gcd_classes"] == {"sizes": {"1": 11, "2": 3, "3": 1, "4": 1}, "total": 16, "sup_d": 1, "sup_size": 11}
    assert rep["prop21_lower_bound"] == 2.0
    assert rep["sup_at_least_bound"] is True


def test_exponent(capsys):
    code, out = call(capsys, "exponent", "--q", "4", "--tol", "1e-12")
    rep = json.loads(out)
    assert code == 0
    assert rep["limit"] == pytest.approx(1.827934, abs=5e-7)
    assert rep["deltas"][0] == 2.0


def test_construct_t13(capsys):
    code, out = call(capsys, "construct-t13", "--gamma", "0.5", "--x", "10", "--y", "10")
    rep = json.loads(out)
    assert (rep["S_size"], rep["C_size"], rep["frac_count"]) == (7, 14, 7)


def test_construct_t12(capsys):
    code, out = call(capsys, "construct-t12", "--primes", "2,3,5,7", "--x", "36", "--ratio")
    rep = json.loads(out)
    assert rep["family"] == {"primes": [2, 3, 5, 7], "m": 2}
    assert rep["products"] == [6, 10, 14, 15, 21, 35]
    assert rep["counts"]["ratio_set_count"] == 19
    assert rep["counts"]["alpha_exact"] == "1/3"
    assert rep["counts"]["A_size"] == 13
    code, out = call(capsys, "construct-t12", "--T", "11", "--m", "1", "--x", "1000")
    rep = json.loads(out)
    assert rep["family"]["primes"] == [11, 13]
    assert rep["counts"]["alpha_exact"] == "23/143"
    assert rep["counts"]["alpha_lower_bound"] == "2/33"


def test_divisor_moment(capsys):
    code, out = call(capsys, "divisor-moment", "--x", "10", "--q", "1", "--d", "2")
    rep = json.loads(out)
    assert rep["moment_sum"] == 18 and rep["within_X_S_q"] is True


def test_constants(capsys):
    code, out = call(capsys, "constants", "--alpha", "0.3", "--beta", "0.7")
    rep = json.loads(out)
    assert abs(rep["identity_ratio"] - 1) < 1e-9
    assert rep["T"] == 10 and rep["C_prime"] <= 0.25


def test_gap_find(capsys):
    code, out = call(capsys, "gap-find", "--h", "2", "--k", "3", "--x", "60", "--y", "60")
    assert json.loads(out)["gap"] == 6
    code, out = call(capsys, "gap-find", "--alpha", "0.3", "--beta", "0.2", "--seed", "5")
    rep = json.loads(out)
    assert rep["gap"] == abs(rep["term1"] - rep["term2"])


def test_primes(capsys):
    code, out = call(capsys, "primes", "--lo", "10", "--hi", "20")
    assert json.loads(out)["primes"] == [11, 13, 17, 19]


def test_bound_check_csv(capsys):
    code, out = call(capsys, "bound-check", "--trials", "5", "--max-x", "300", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("trial,X,Y,alpha,beta")
    assert len(lines) == 6


def test_bound_check_multiples_union(capsys):
    code, out = call(capsys, "bound-check", "--trials", "10", "--max-x", "300", "--generator", "multiples-union")
    rep = json.loads(out)
    assert rep["failures"] == 0 and rep["partition_failures"] == 0


def test_seed_determinism(capsys):
    _, first = call(capsys, "bound-check", "--trials", "4", "--max-x", "400", "--seed", "9")
    _, second = call(capsys, "bound-check", "--trials", "4", "--max-x", "400", "--seed", "9")
    _, other = call(capsys, "bound-check", "--trials", "4", "--max-x", "400", "--seed", "10")
    assert first == second != other


def test_exit_codes(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["exponent"])
    assert exc.value.code == 2
    assert run(["exponent", "--q", "2"]) == 1
    assert run(["construct-t13", "--gamma", "0.25", "--x", "3", "--y", "3"]) == 1
    bad = tmp_path / "dup.txt"
    bad.write_text("# ambient_bound=5\n1\n1\n")
    assert run(["fracstat", "--a", str(bad), "--b", str(bad)]) == 1


def test_ledger_and_replay(capsys, tmp_path, set_files):
    ledger = tmp_path / "runs.jsonl"
    run(["exponent", "--q", "10", "--ledger", str(ledger)])
    run(["bound-check", "--trials", "3", "--max-x", "200", "--seed", "4", "--ledger", str(ledger)])
    run(["fracstat", "--a", set_files[0], "--b", set_files[1], "--ledger", str(ledger)])
    capsys.readouterr()
    lines = ledger.read_text().splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert [r["command"] for r in records] == ["exponent", "bound-check", "fracstat"]
    assert records[1]["seed"] == 4
    for rec in records:
        assert set(rec) == {"command", "params", "outputs", "timestamp", "seed"}
        ok, _ = replay_record(rec)
        assert ok
    assert run(["replay", "--ledger", str(ledger), "--line", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["reproduced"] is True


def test_replay_detects_tampering():
    rec = make_record("primes", {"lo": 10, "hi": 20, "count_only": False}, {"count": 5})
    ok, outputs = replay_record(rec)
    assert not ok and outputs["count"] == 4


def test_normalize():
    from fractions import Fraction

    assert normalize(2**53) == 2**53
    assert normalize(2**53 + 1) == str(2**53 + 1)
    assert normalize(Fraction(2, 3)) == "2/3"
    assert normalize(1 / 3) == 0.333333333333333
    assert normalize({1: [True, 2.5]}) == {"1": [True, 2.5]}
