"""End-to-end tests for the sekit command line tool.

The binary path comes from the SEKIT_BIN environment variable (set by ctest).
Exit codes: 0 accepted/consistent/found, 1 negative, 2 usage/IO, 3 budget.
"""

import os
import subprocess

import pytest

BIN = os.environ.get("SEKIT_BIN", "sekit")

FULL2 = "2 2\n1 1\n1 1\n"
TWO = "1 1\n2\n"
THREE = "1 1\n3\n"
GOLDEN = "2 2\n1 1\n1 0\n"
INFLATION3 = "3 3\n0 0 1\n0 0 1\n1 1 0\n"

CHAIN_CERT = """schema_version: 1
kind: sse-chain
links: 2
matrix left
2 2
1 1
1 1
end
matrix right
2 2
1 1
1 1
end
matrix intermediate.1
1 1
2
end
matrix witness.0.r
2 1
1
1
end
matrix witness.0.s
1 2
1 1
end
matrix witness.1.r
1 2
1 1
end
matrix witness.1.s
2 1
1
1
end
"""


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [BIN, *args], capture_output=True, text=True, env=full_env
    )


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write, tmp_path


def test_version():
    result = run("--version")
    assert result.returncode == 0
    assert "sekit" in result.stdout


def test_usage_errors():
    assert run().returncode == 2
    assert run("check", "--kind", "esse").returncode == 2
    assert run("frobnicate").returncode == 2


def test_search_writes_verifiable_certificates(files):
    write, tmp = files
    left = write("full2.txt", FULL2)
    right = write("two.txt", TWO)
    cert = str(tmp / "cert.txt")

    result = run("search", "--kind", "esse", "--left", left, "--right", right,
                 "--out", cert)
    assert result.returncode == 0
    content = open(cert).read()
    assert "kind: esse" in content
    assert "verdict: accepted" in content

    check = run("check", "--kind", "esse", "--cert", cert,
                "--left", left, "--right", right)
    assert check.returncode == 0
    assert check.stdout.strip() == "accepted"


def test_search_is_deterministic(files):
    write, _ = files
    left = write("l.txt", FULL2)
    right = write("r.txt", TWO)
    first = run("search", "--kind", "esse", "--left", left, "--right", right)
    second = run("search", "--kind", "esse", "--left", left, "--right", right)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_search_not_found(files):
    write, _ = files
    golden = write("golden.txt", GOLDEN)
    inflation = write("inflation.txt", INFLATION3)
    result = run("search", "--kind", "sme", "--left", golden,
                 "--right", inflation)
    assert result.returncode == 1
    assert result.stdout == ""

    two = write("two.txt", TWO)
    three = write("three.txt", THREE)
    assert run("search", "--kind", "esse", "--left", two,
               "--right", three).returncode == 1
    assert run("search", "--kind", "se", "--left", two,
               "--right", three).returncode == 1


def test_budget_exceeded(files):
    write, _ = files
    left = write("l.txt", FULL2)
    result = run("search", "--kind", "esse", "--left", left, "--right", left,
                 "--budget", "10")
    assert result.returncode == 3

    via_env = run("search", "--kind", "esse", "--left", left, "--right", left,
                  env={"SEKIT_BUDGET": "10"})
    assert via_env.returncode == 3

    flag_wins = run("search", "--kind", "esse", "--left", left,
                    "--right", left, "--budget", "100000000",
                    env={"SEKIT_BUDGET": "10"})
    assert flag_wins.returncode == 0

    bad_env = run("search", "--kind", "esse", "--left", left, "--right", left,
                  env={"SEKIT_BUDGET": "lots"})
    assert bad_env.returncode == 2


def test_check_failures(files):
    write, tmp = files
    left = write("full2.txt", FULL2)
    right = write("two.txt", TWO)
    cert = str(tmp / "cert.txt")
    assert run("search", "--kind", "se", "--left", left, "--right", right,
               "--out", cert).returncode == 0

    # kind flag must match the certificate kind
    assert run("check", "--kind", "esse", "--cert", cert).returncode == 2

    # a tampered lag is a verification failure, named by its equation
    tampered = str(tmp / "tampered.txt")
    open(tampered, "w").write(open(cert).read().replace("lag: 1", "lag: 2"))
    result = run("check", "--kind", "se", "--cert", tampered)
    assert result.returncode == 1
    assert "rejected" in result.stdout
    assert "E^m == R*S" in result.stdout

    # a matrix disagreeing with the certificate is a usage error
    other = write("other.txt", GOLDEN)
    assert run("check", "--kind", "se", "--cert", cert,
               "--left", other).returncode == 2

    assert run("check", "--kind", "se", "--cert",
               str(tmp / "missing.txt")).returncode == 2


def test_convert_sme_to_esse(files):
    write, tmp = files
    left = write("e.txt", "2 2\n0 2\n1 0\n")
    right = write("f.txt", "2 2\n0 1\n2 0\n")
    sme_cert = str(tmp / "sme.txt")
    assert run("search", "--kind", "sme", "--left", left, "--right", right,
               "--out", sme_cert).returncode == 0

    esse_cert = str(tmp / "esse.txt")
    result = run("convert", "--from", "sme", "--to", "esse",
                 "--cert", sme_cert, "--out", esse_cert)
    assert result.returncode == 0
    assert run("check", "--kind", "esse", "--cert", esse_cert,
               "--left", left, "--right", right).returncode == 0

    # wrong source kind
    assert run("convert", "--from", "chain", "--to", "se",
               "--cert", sme_cert).returncode == 2
    # unsupported combination
    assert run("convert", "--from", "sme", "--to", "se",
               "--cert", sme_cert).returncode == 2


def test_invariants_rejects_nonsquare(files):
    write, _ = files
    wide = write("wide.txt", "1 2\n1 1\n")
    assert run("invariants", wide).returncode == 2


def test_check_names_the_failing_link(files):
    write, _ = files
    corrupted = write("chain.txt", CHAIN_CERT.replace("1 1\n2\nend",
                                                      "1 1\n3\nend"))
    result = run("check", "--kind", "sse-chain", "--cert", corrupted)
    assert result.returncode == 1
    assert "link" in result.stdout


def test_convert_chain_to_se(files):
    write, tmp = files
    chain_cert = write("chain.txt", CHAIN_CERT)
    assert run("check", "--kind", "sse-chain", "--cert",
               chain_cert).returncode == 0

    se_cert = str(tmp / "se.txt")
    result = run("convert", "--from", "chain", "--to", "se",
                 "--cert", chain_cert, "--out", se_cert)
    assert result.returncode == 0
    content = open(se_cert).read()
    assert "kind: se" in content
    assert "lag: 2" in content
    assert run("check", "--kind", "se", "--cert", se_cert).returncode == 0


def test_compose(files):
    write, tmp = files
    full2 = write("full2.txt", FULL2)
    two = write("two.txt", TWO)
    c1 = str(tmp / "c1.txt")
    c2 = str(tmp / "c2.txt")
    assert run("search", "--kind", "se", "--left", full2, "--right", two,
               "--out", c1).returncode == 0
    assert run("search", "--kind", "se", "--left", two, "--right", full2,
               "--out", c2).returncode == 0

    out = str(tmp / "composed.txt")
    result = run("compose", "--kind", "se", "--cert1", c1, "--cert2", c2,
                 "--out", out)
    assert result.returncode == 0
    assert "lag: 2" in open(out).read()  # 1*1 + 1
    assert run("check", "--kind", "se", "--cert", out).returncode == 0

    # composing the lag-2 self-witness with itself lands at lag 2*2 + 2 = 6
    out6 = str(tmp / "composed6.txt")
    assert run("compose", "--kind", "se", "--cert1", out, "--cert2", out,
               "--out", out6).returncode == 0
    assert "lag: 6" in open(out6).read()
    assert run("check", "--kind", "se", "--cert", out6).returncode == 0

    # mismatched middle matrix
    assert run("compose", "--kind", "se", "--cert1", c1, "--cert2", c1,
               "--out", out).returncode == 2

    # elementary composition needs an invertible block
    e1 = str(tmp / "e1.txt")
    e2 = str(tmp / "e2.txt")
    assert run("search", "--kind", "esse", "--left", full2, "--right", two,
               "--out", e1).returncode == 0
    assert run("search", "--kind", "esse", "--left", two, "--right", full2,
               "--out", e2).returncode == 0
    result = run("compose", "--kind", "esse", "--cert1", e1, "--cert2", e2,
                 "--out", out)
    assert result.returncode == 1


def test_invariants_and_compare(files):
    write, _ = files
    two = write("two.txt", TWO)
    three = write("three.txt", THREE)
    golden = write("golden.txt", GOLDEN)

    result = run("invariants", two)
    assert result.returncode == 0
    assert "det_i_minus_a: -1" in result.stdout
    assert "nonzero_char_poly: t - 2" in result.stdout
    assert "bowen_franks: 0" in result.stdout

    multi = run("invariants", two, golden)
    assert multi.returncode == 0
    assert multi.stdout.count("regular: true") == 2

    obstructed = run("compare-dilations", "--left", two, "--right", three)
    assert obstructed.returncode == 1
    assert obstructed.stdout.strip() == "obstructed: bowen_franks"

    consistent = run("compare-dilations", "--left", two, "--right", two)
    assert consistent.returncode == 0
    assert consistent.stdout.strip() == "consistent"

    full2 = write("full2.txt", FULL2)
    assert run("compare-dilations", "--left", full2,
               "--right", two).returncode == 0


def test_checks_accept_every_search_output(files):
    write, tmp = files
    pairs = [
        ("a.txt", FULL2, "b.txt", TWO, "esse"),
        ("c.txt", GOLDEN, "d.txt", GOLDEN, "se"),
        ("e.txt", GOLDEN, "f.txt", GOLDEN, "sme"),
    ]
    for lname, ltext, rname, rtext, kind in pairs:
        left = write(lname, ltext)
        right = write(rname, rtext)
        cert = str(tmp / f"{kind}_cert.txt")
        assert run("search", "--kind", kind, "--left", left, "--right", right,
                   "--out", cert).returncode == 0
        assert run("check", "--kind", kind, "--cert", cert).returncode == 0
