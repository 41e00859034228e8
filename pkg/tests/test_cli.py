import io
import subprocess
import sys
from pathlib import Path

import pytest

from dynstr import cli
from dynstr.bench import HEADER
from dynstr.cli import Engine, run_script

DATA = Path(__file__).parent / "data"


def test_golden_script(monkeypatch):
    monkeypatch.chdir(DATA)
    lines = (DATA / "golden.txt").read_text().splitlines()
    want = (DATA / "golden.out").read_text().splitlines()
    assert run_script(lines) == want


def test_basic_examples():
    assert run_script(["MAKE banana", "SPLIT H0 3", "CONCAT H1 H2"]) == ["H0", "H1 H2", "H0"]


def test_make_keeps_inner_spaces():
    e = Engine()
    assert run_script(["MAKE a b", "MAKE a  b"], e) == ["H0", "H1"]
    assert e.coll.string(0) == "a b" and e.coll.string(1) == "a  b"


def test_errors_carry_line_numbers():
    out = run_script(["", "# comment", "SPLIT H0 1", "MAKE x", "SEED 3", "RESTART MAYBE", "FIND a LIMIT -1"])
    assert out == [
        "ERR line 3: unknown handle H0",
        "H0",
        "ERR line 5: SEED must come before any update",
        "ERR line 6: expected RESTART ON or RESTART OFF",
        "ERR line 7: LIMIT must be nonnegative",
    ]


def test_seed_changes_grammar_not_answers():
    script = ["MAKE abababbbab", "MAKE bab", "SPLIT H0 7", "CONCAT H3 H1", "LCP H0 H2"]
    a, b = Engine(seed=1), Engine(seed=2)
    assert run_script(script, a) == run_script(script, b)
    assert a.coll.g.hbits != b.coll.g.hbits


def test_restart_on_narrow_words_replays_everything():
    script = ["RESTART ON", "MAKE ab", "MAKE ba", "CONCAT H0 H1", "ACTIVATE H2", "HINS 1 a",
              "HINS 2 b", "FIND ab", "HFIND ab", "SPLIT H2 1", "MAKE aab", "MAKE bba"]
    wide = run_script(script, Engine(seed=0))
    for seed in range(20):
        narrow_engine = Engine(seed=seed, word_bits=8)
        narrow = run_script(script, narrow_engine)
        if narrow_engine.restarts:
            break
    assert narrow_engine.restarts > 0
    assert narrow == wide


def test_failure_without_restart_is_sticky():
    e = Engine(seed=0, word_bits=2)
    out = run_script(["MAKE abbabaabba", "MAKE a", "RESTART ON", "MAKE a"], e)
    assert out[0].startswith("ERR line 1:")
    assert out[1].startswith("ERR line 2: engine failed")


def test_bench_prints_csv(monkeypatch):
    monkeypatch.setitem(cli.bench.SUITES, "tiny", lambda seed: cli.bench.concat_rows([64, 128], 2, seed))
    out = run_script(["BENCH tiny"])[0].splitlines()
    assert out[0] == ",".join(HEADER)
    assert len(out) == 1 + 2 * 2 * 2
    assert run_script(["BENCH nope"])[0].startswith("ERR line 1: unknown bench suite")


def test_slpeq_missing_file():
    assert run_script(["SLPEQ /nonexistent/a /nonexistent/b"])[0].startswith("ERR line 1:")


def test_console_entry_point(tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("MAKE hello\nMAKE hello\nEQ H0 H0\n")
    proc = subprocess.run([sys.executable, "-m", "dynstr", str(script)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["H0", "H0", "true"]


def test_main_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("MAKE x\nBOGUS\n"))
    assert cli.main([]) == 1
    assert capsys.readouterr().out.splitlines() == ["H0", "ERR line 2: unknown command BOGUS"]
