import os
import subprocess
import sys

BASE = [sys.executable, "-m", "ellimage.cli"]


def run(*args, **kw):
    env = dict(os.environ)
    env.update(kw.pop("env", {}))
    return subprocess.run(BASE + list(args), capture_output=True, text=True, env=env)


def test_info_label():
    r = run("info", "--label", "49.196.9.1")
    assert r.returncode == 0
    assert "level: 49" in r.stdout
    assert "index: 196" in r.stdout
    assert "genus=9" in r.stdout


def test_info_cartan():
    r = run("info", "--cartan", "nonsplit-normalizer", "--mod", "49")
    assert r.returncode == 0
    assert "order: 4704" in r.stdout


def test_info_cartan_epsilon():
    r = run("info", "--cartan", "nonsplit", "--mod", "7", "--eps", "5")
    assert r.returncode == 0
    assert "order: 48" in r.stdout
    r = run("info", "--cartan", "nonsplit", "--mod", "7", "--eps", "2")
    assert r.returncode == 1  # 2 is a square mod 7


def test_info_unknown_label():
    r = run("info", "--label", "9.9.9.9")
    assert r.returncode == 1
    assert "error" in r.stderr


def test_info_bad_modulus():
    r = run("info", "--cartan", "borel", "--mod", "12")
    assert r.returncode == 1
    r = run("info", "--cartan", "borel", "--mod", "1")
    assert r.returncode == 1


def test_filter_exit_codes():
    r = run("filter", "--family", "gamma1", "--label", "17.72.1.2")
    assert r.returncode == 10
    assert "RESULT\t17.72.1.2\tgamma1\t17:4" in r.stdout
    r = run("filter", "--family", "gamma1", "--label", "49.196.9.1")
    assert r.returncode == 0
    assert "RESULT\t49.196.9.1\tgamma1\tempty" in r.stdout
    r = run("filter", "--family", "gamma0", "--label", "49.196.9.1")
    assert r.returncode == 0


def test_filter_output_parses_back():
    from ellimage.labelio import parse_report_lines
    r = run("filter", "--family", "gamma0", "--label", "37.114.4.1", "--format", "lines")
    assert r.returncode == 10
    parsed = parse_report_lines(r.stdout)
    assert parsed[("37.114.4.1", "gamma0")]["final"] == [(37, 1)]


def test_batch_deterministic_across_threads(tmp_path):
    outs = []
    for threads in ("1", "3"):
        r = run("batch", "--family", "gamma0", "--threads", threads)
        assert r.returncode == 0
        outs.append(r.stdout)
    assert outs[0] == outs[1]
    assert "SUMMARY\tgamma0\t42 records\t6 nonempty" in outs[0]


def test_batch_empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("# nothing here\n")
    r = run("batch", "--family", "gamma1", "--gens-file", str(p))
    assert r.returncode == 0
    assert "0 records\t0 nonempty" in r.stdout


def test_out_flag(tmp_path):
    p = tmp_path / "report.txt"
    r = run("filter", "--family", "gamma1", "--label", "17.72.1.2", "--out", str(p))
    assert r.returncode == 10
    assert p.read_text().endswith("RESULT\t17.72.1.2\tgamma1\t17:4\n")


def test_env_override_cap():
    r = run("info", "--label", "2.6.0.1", env={"ELLIMAGE_MAX_ENUM": "5000"})
    assert r.returncode == 1  # config floor rejects sub-10^4 caps
    r = run("info", "--label", "2.6.0.1", env={"ELLIMAGE_MAX_ENUM": "20000"})
    assert r.returncode == 0


def test_lattice_check_gl2():
    r = run("lattice-check", "--cartan", "borel", "--mod", "7")
    # Borel(7) is not rigid (its full mod-49 preimage is not the only lift),
    # but the certificate must complete either way
    assert r.returncode == 0
    assert "RESULT\tcertified" in r.stdout


def test_lattice_check_image49():
    r = run("lattice-check", "--label", "49.196.9.1")
    assert r.returncode == 0
    assert "CLAIM\tsubgroup-classes\tindex_bound=49\tcount=1" in r.stdout
    assert "CLASS\tindex=49" in r.stdout
    assert "CLAIM\tsplit-normalizer-membership\ttrue\tindex=7" in r.stdout
    assert "CLAIM\tpreimage-rigidity\tmodulus=343\trigid=true" in r.stdout


def test_validate_bundled():
    r = run("validate")
    assert r.returncode == 0
    assert "0 mismatches" in r.stdout


def test_validate_mismatch(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("7.8.1.1|7|3,0,0,1;1,0,0,3;1,1,0,1\n")  # genus is 0, not 1
    r = run("validate", "--gens-file", str(p))
    assert r.returncode == 4
    assert "MISMATCH" in r.stdout
