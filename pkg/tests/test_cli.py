import json

import pytest

from snorbit.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_qbinom(capsys):
    assert run(capsys, "qbinom", "4", "2") == (0, "1 1 2 1 1\n", "")


def test_qbinom_records(capsys):
    code, out, _ = run(capsys, "qbinom", "4", "2", "--format", "records")
    assert code == 0 and json.loads(out)["coeffs"] == ["1", "1", "2", "1", "1"]


def test_qmultinomial(capsys):
    assert run(capsys, "qmultinomial", "3", "1,1,1")[1] == "1 2 2 1\n"
    code, _, err = run(capsys, "qmultinomial", "4", "1,1,1")
    assert code == 4 and "sums to 3" in err


def test_orbit_count(capsys):
    assert run(capsys, "orbit-count", "--v", "1,2,3", "--w", "1,1,1")[1] == "0\n"
    assert run(capsys, "orbit-count", "--v", "1,2,3", "--w", "1,1,-1")[1] == "2\n"
    code, out, _ = run(capsys, "orbit-count", "--v", "1/2,1/3,1", "--w", "6,-3,-2", "--list")
    assert code == 0 and out.splitlines()[0] == str(len(out.splitlines()) - 1)


def test_malformed_vector(capsys):
    code, _, err = run(capsys, "orbit-count", "--v", "1,2,x", "--w", "1,1,1")
    assert code == 4 and "malformed vector" in err
    code, _, err = run(capsys, "orbit-count", "--v", "1,2", "--w", "1,1,1")
    assert code == 4 and "length" in err


def test_size_guard(capsys):
    code, _, err = run(capsys, "poset", "--alpha", "5,5")
    assert code == 3 and "size guard" in err
    code, _, err = run(capsys, "orbit-max", "--n", "7", "--v", "1,2,3,4,5,6,7")
    assert code == 3


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["qbinom", "4", "2", "--bogus"])
    assert exc.value.code == 2


def test_poset(capsys):
    code, out, _ = run(capsys, "poset", "--alpha", "2,1", "--elements")
    assert code == 0
    assert "({1,2},{3})  word 123  rank 0" in out
    assert "rank generating function: 1 + q + q^2" in out
    code, out, _ = run(capsys, "poset", "--alpha", "1,2,1", "--copies", "3", "--format", "records")
    rec = json.loads(out)
    assert code == 0 and rec["sperner"] and rec["max_antichain"] == 3 * rec["max_coeff"]


def test_orbit_max(capsys):
    code, out, _ = run(capsys, "orbit-max", "--n", "3", "--v", "1,2,3")
    assert code == 0 and out.startswith("max O(v,w) = 2 (bound 2)")


def test_verify_main(capsys):
    code, out, _ = run(capsys, "verify", "main", "--n-max", "4")
    assert code == 0
    assert "n=3: 2 (expected 2)" in out and "n=4: 8 (expected 8)" in out


def test_verify_records_stable_across_workers(capsys):
    _, a, _ = run(capsys, "verify", "residue", "--n-max", "20", "--format", "records")
    _, b, _ = run(capsys, "verify", "residue", "--n-max", "20", "--format", "records", "--workers", "2")
    assert a == b and json.loads(a.splitlines()[-1])["passed"]


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "antichain", "--n-max", "5", "--samples", "100", "--literal")
    assert code == 1 and "FAIL" in out


def test_verify_gcd_shortcut(capsys):
    code, out, _ = run(capsys, "verify", "maxcoeff", "--n-max", "40", "--gcd-shortcut", "--format", "records")
    summary = json.loads(out.splitlines()[-1])
    assert code == 0 and 0 < summary["skipped_fraction"] < 1


def test_scan(capsys, tmp_path):
    path = tmp_path / "ck"
    code, out, _ = run(capsys, "scan", "logconcave", "--n-max", "46", "--checkpoint", str(path))
    assert code == 0 and "violations: 0" in out
    code, out, _ = run(capsys, "scan", "logconcave", "--n-max", "20", "--checkpoint", str(tmp_path / "r"),
                       "--relax-bounds", "--n-min", "14", "--k-min", "3", "--r-margin", "2")
    assert code == 0 and "violations: 0" not in out
    code, _, err = run(capsys, "scan", "logconcave", "--n-max", "50", "--checkpoint", str(path), "--k-min", "5")
    assert code == 4 and "--relax-bounds" in err


def test_corrupt_checkpoint_exit_code(capsys, tmp_path):
    path = tmp_path / "ck"
    path.write_text('{"record": "header", "format": "snorbit-logconcave-scan", "version": 7}\n')
    code, _, err = run(capsys, "scan", "logconcave", "--n-max", "46", "--checkpoint", str(path))
    assert code == 5 and "version" in err


def test_every_subcommand_help_names_its_construct():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    keywords = {"qbinom": "Gaussian binomial", "qmultinomial": "q-multinomial", "orbit-count": "orbit",
                "orbit-max": "hyperplane", "poset": "Bruhat", "verify": "cyclotomic",
                "scan": "log-concavity"}
    for name, word in keywords.items():
        text = sub.choices[name].format_help()
        assert word.lower() in text.lower(), name
