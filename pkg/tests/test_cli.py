import json

import pytest

from qconv.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, expanded_zpoly, run
from qconv.jfraction import convergent


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_partition(capsys):
    code, out, _ = call(capsys, "partition", "--n", "10")
    assert code == EXIT_OK
    assert out.strip() == "[1,1,2,3,5,7,11,15,22,30,42]"


def test_convergent_text(capsys):
    code, out, _ = call(capsys, "convergent", "--h", "2")
    assert code == EXIT_OK
    assert "Q_2 = 1 - q^3*z - q^5*z + q^6*z^2" in out


def test_convergent_closed_form(capsys):
    code, out, _ = call(capsys, "convergent", "--h", "3", "--closed-form", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["Q_expanded"] == expanded_zpoly(convergent(3).Q)


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--h-max", "8")
    assert code == EXIT_OK
    assert out.strip().endswith("verify: ok")


def test_coeffs(capsys):
    code, out, _ = call(capsys, "coeffs", "--h", "2", "--order", "4", "--format", "json")
    d = json.loads(out)
    assert d["equals_q_n2"] == [True, True, True, True, False]


def test_rp_check(capsys):
    code, out, _ = call(capsys, "rp", "--p", "4", "--n", "30", "--check")
    assert code == EXIT_OK
    assert out.startswith("[1,8,24,32,24,")


def test_rp_mod4_reports_mismatch(capsys):
    code, out, _ = call(capsys, "rp", "--p", "3", "--n", "64", "--mod", "4", "--check")
    assert code == EXIT_VERIFY
    assert "[61, 63]" in out


def test_rp_window(capsys):
    code, _, err = call(capsys, "rp", "--p", "2", "--n", "60", "--h", "3")
    assert code == EXIT_DOMAIN
    assert "need h >= 5" in err


def test_sigma1(capsys):
    code, out, _ = call(capsys, "sigma1", "--n", "6")
    assert out.strip() == "[1,3,4,7,6,12]"
    code, out, _ = call(capsys, "sigma1", "--n", "9", "--odd")
    assert out.strip() == "[1,4,6,8,13]"


def test_theta_json(capsys):
    code, out, _ = call(capsys, "theta", "--family", "3", "--q", "0.2", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["direct"]["value"] == d["jfraction"]["value"]
    assert set(d["direct"]) >= {"value", "method", "tail_bound", "precision"}


def test_theta_domain(capsys):
    code, _, err = call(capsys, "theta", "--family", "3", "--q", "1.5")
    assert code == EXIT_DOMAIN


def test_gss(capsys):
    code, out, _ = call(capsys, "gss", "--q", "0.5", "--z", "0.4", "--format", "json")
    vals = json.loads(out)["values"]
    assert vals["direct"][:20] == vals["jfraction_series"][:20] == vals["quadrature"][:20]


def test_zeta(capsys):
    code, out, _ = call(capsys, "zeta-check", "--s", "4")
    assert code == EXIT_OK
    code, _, _ = call(capsys, "zeta-check", "--s", "1.5")
    assert code == EXIT_DOMAIN


def test_constants_check_reports(capsys):
    code, out, _ = call(capsys, "constants-check", "--format", "json")
    d = json.loads(out)
    assert d["theta3_e^-5pi"]["ok"]
    assert code == (EXIT_OK if d["ok"] else EXIT_VERIFY)


def test_conjecture(capsys):
    code, out, _ = call(
        capsys, "conjecture", "--target", "pochhammer-a", "--depth", "3", "--param", "a=2", "--check-table"
    )
    assert code == EXIT_OK
    assert "c_1 = -1" in out


def test_conjecture_custom(tmp_path, capsys):
    f = tmp_path / "vals.txt"
    f.write_text("1\nq\nq^4\nq^9\n")
    code, out, _ = call(capsys, "conjecture", "--target", "custom", "--depth", "2", "--file", str(f))
    assert code == EXIT_OK
    assert "ab_2 = -q^2 + q^4" in out


def test_conjecture_bad_param(capsys):
    code, _, _ = call(capsys, "conjecture", "--target", "square", "--depth", "2", "--param", "a")
    assert code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["convergent", "--h", "2", "--bogus"],
        ["nope"],
        [],
        ["theta", "--family", "7", "--q", "0.1"],
        ["partition", "--n", "3", "--precision", "10"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == EXIT_USAGE


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("QCONV_PRECISION", "20")
    code, out, _ = call(capsys, "theta", "--family", "3", "--q", "0.2", "--format", "json")
    assert json.loads(out)["precision"] == 20
    monkeypatch.setenv("QCONV_PRECISION", "abc")
    code, _, _ = call(capsys, "partition", "--n", "3")
    assert code == EXIT_USAGE


def test_depth_guards(capsys):
    code, _, err = call(capsys, "convergent", "--h", "17")
    assert code == EXIT_DOMAIN and "--allow-deep" in err
    code, _, err = call(capsys, "partition", "--n", "50", "--max-degree", "10")
    assert code == EXIT_DOMAIN and "--force" in err
    code, _, _ = call(capsys, "partition", "--n", "50", "--max-degree", "10", "--force")
    assert code == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        ["convergent", "--h", "4"],
        ["verify", "--h-max", "3"],
        ["rp", "--p", "2", "--n", "20"],
        ["theta", "--family", "1", "--u", "0.4", "--q", "0.3"],
        ["conjecture", "--target", "inv-qq", "--depth", "3", "--check-table"],
    ],
)
def test_json_round_trip(capsys, argv):
    _, out, _ = call(capsys, *argv, "--format", "json")
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out
