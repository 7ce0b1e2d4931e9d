import json
from importlib import resources


from nonelliptic.cli import main

SCHOEN = str(resources.files("nonelliptic.data").joinpath("schoen_s4_25.json"))
SQRT2 = str(resources.files("nonelliptic.data").joinpath("s2_512_sqrt2.json"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_paper_default(capsys):
    code, out, _ = run(capsys, "verify-paper", "--ell-max", "100")
    assert code == 0
    assert "overall: PASS" in out
    assert "M=1375" in out
    assert "conductor 512" in out


def test_verify_paper_ell_max_7(capsys):
    code, out, _ = run(capsys, "verify-paper", "--ell-max", "7")
    assert code == 0
    assert "inconclusive at [7]" in out
    assert "NonElliptic" in out or "conductor 512" in out  # the weight-2 route


def test_verify_paper_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify-paper", "--ell-max", "50", "--format", "json")
    code2, out2, _ = run(capsys, "verify-paper", "--ell-max", "50", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["passed"] is True


def test_verify_paper_workers_identical_output(capsys):
    _, out1, _ = run(capsys, "verify-paper", "--ell-max", "80", "--format", "json")
    _, out2, _ = run(capsys, "verify-paper", "--ell-max", "80", "--format", "json",
                     "--workers", "3")
    assert out1 == out2


def test_certify_weight4_at_11(capsys):
    code, out, _ = run(capsys, "certify", "-i", SCHOEN, "--ell", "11")
    assert code == 0
    assert "irreducible: yes, discriminant witness p=2 (delta=2" in out
    assert "trace witness p=2 (trace=5" in out


def test_certify_weight4_at_7_inconclusive(capsys):
    code, out, _ = run(capsys, "certify", "-i", SCHOEN, "--ell", "7")
    assert code == 2
    assert "inconclusive" in out


def test_certify_weight2_at_7(capsys):
    code, out, _ = run(capsys, "certify", "-i", SQRT2, "--ell", "7")
    assert code == 0
    assert "root=3" in out and "root=4" in out
    assert "conductor 512 violates v_2 <= 8" in out


def test_certify_inert_prime_distinct_error(capsys):
    code, _, err = run(capsys, "certify", "-i", SQRT2, "--ell", "11")
    assert code == 1
    assert "inert" in err


def test_certify_bad_reduction_error(tmp_path, capsys):
    level49 = tmp_path / "level49.json"
    level49.write_text(
        '{"id": "t", "level": 49, "weight": 2, "field": {"type": "rational"}, '
        '"eigenvalues": {"2": {"x": 1, "y": 0}}}'
    )
    code, _, err = run(capsys, "certify", "-i", str(level49), "--ell", "7")
    assert code == 1
    assert "bad reduction" in err


def test_certify_rejects_small_ell(capsys):
    code, _, err = run(capsys, "certify", "-i", SCHOEN, "--ell", "5")
    assert code == 1
    assert "prime > 5" in err


def test_certify_range(capsys):
    code, out, _ = run(capsys, "certify", "-i", SCHOEN, "--ell-min", "11",
                       "--ell-max", "23")
    assert code == 0
    for ell in (11, 13, 17, 19, 23):
        assert f"ell={ell}" in out


def test_certify_range_workers_identical(capsys):
    _, out1, _ = run(capsys, "certify", "-i", SCHOEN, "--ell-min", "11",
                     "--ell-max", "31", "--format", "json")
    _, out2, _ = run(capsys, "certify", "-i", SCHOEN, "--ell-min", "11",
                     "--ell-max", "31", "--format", "json", "--workers", "2")
    assert out1 == out2


def test_certify_root_override(capsys):
    code, out, _ = run(capsys, "certify", "-i", SQRT2, "--ell", "7", "--root", "4")
    assert code == 0
    assert "root=4" in out and "root=3" not in out
    code, _, err = run(capsys, "certify", "-i", SQRT2, "--ell", "7", "--root", "5")
    assert code == 1
    assert "square root" in err


def test_certify_schema_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"id": "x", "level": 10, "weight": 2, "field": {"type": "rational"}, "eigenvalues": {}, "extra": 1}')
    code, _, err = run(capsys, "certify", "-i", str(bad), "--ell", "7")
    assert code == 1
    assert "invalid form record" in err


def test_scan_full(capsys):
    code, out, _ = run(capsys, "scan", "7", "10000")
    assert code == 0
    assert "holds at: 7" in out


def test_scan_empty_membership(capsys):
    code, out, _ = run(capsys, "scan", "11", "97")
    assert code == 0
    assert "(none)" in out


def test_scan_bad_range(capsys):
    code, _, err = run(capsys, "scan", "3", "5")
    assert code == 1
    assert "must satisfy" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "2")
    assert code == 0
    assert "{-2, -1, 0, 1, 2}" in out


def test_oracle_json(capsys):
    code, out, _ = run(capsys, "oracle", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["traces"] == list(range(-3, 4))


def test_falsify_witness(capsys):
    code, out, _ = run(capsys, "falsify", "--curve", "0,0,1,0,0", "-i", SCHOEN,
                       "--ell", "11")
    assert code == 0
    assert "witness at p=2" in out
    assert "0 != 5" in out


def test_falsify_singular_curve(capsys):
    code, _, err = run(capsys, "falsify", "--curve", "0,0,0,0,0", "-i", SCHOEN,
                       "--ell", "11")
    assert code == 1
    assert "singular" in err


def test_falsify_malformed_curve(capsys):
    code, _, err = run(capsys, "falsify", "--curve", "1,2,3", "-i", SCHOEN,
                       "--ell", "11")
    assert code == 1
    assert "five comma-separated" in err


def test_falsify_json(capsys):
    code, out, _ = run(capsys, "falsify", "--curve", "0,0,1,0,0", "-i", SCHOEN,
                       "--ell", "11", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["witness"] == {"p": 2, "curve_trace": 0, "rep_trace": 5}


def test_workers_must_be_positive(capsys):
    code, _, err = run(capsys, "verify-paper", "--ell-max", "20", "--workers", "0")
    assert code == 1
    assert "--workers" in err
