import json
import subprocess
import sys

import pytest

from clihelp import pan, pan_json
from panopticon.encoding import encode_machine
from panopticon.zoo import zoo_machine

PAN = [sys.executable, "-m", "panopticon"]


def test_run_accepts():
    code, doc, _ = pan_json("run", "--machine", "mult2.tm", "--input", "1111", "--budget", 100000)
    assert code == 0 and doc["outcome"] == "AcceptedAt" and doc["steps"] == 5


def test_run_with_log():
    code, doc, _ = pan_json("run", "--machine", "zoo:PANDEMO", "--input", "1", "--log")
    assert code == 0 and len(doc["log"]) == 3 and doc["pan_events"] == [[1, "p"]]


def test_run_exhausts():
    code, doc, _ = pan_json("run", "--machine", "loop.tm", "--budget", 50)
    assert code == 2 and doc["outcome"] == "BudgetExhausted"


def test_run_oracle_machine():
    code, doc, _ = pan_json("run", "--machine", "oq1.tm", "--family", "MULT2,MULT3")
    assert code == 0 and doc["outcome"] == "AcceptedAt" and doc["queries"][0]["answer"] == "No"


def test_search_unknown_exit_code():
    code, doc, _ = pan_json("search", "common", "--target", "prime.tm", "--family", "mult2.tm,mult3.tm",
                            "--budget", 100000)
    assert code == 2 and doc["verdict"]["answer"] == "Unknown"


def test_search_yes():
    code, doc, _ = pan_json("search", "common", "--target", "MULT3", "--family", "MULT2", "--budget", 10000)
    assert code == 0 and doc["witness"]["string"] == "111111"


def test_encode_decode_pipe_is_byte_stable():
    enc = subprocess.run(PAN + ["encode", "--machine", "mult2.tm"], capture_output=True, text=True, check=True)
    dec = subprocess.run(PAN + ["decode"], input=enc.stdout, capture_output=True, text=True, check=True)
    again = subprocess.run(PAN + ["encode", "--machine", "-"], input=dec.stdout, capture_output=True,
                           text=True, check=True)
    assert enc.stdout == again.stdout
    assert enc.stdout.strip() == encode_machine(zoo_machine("MULT2"))


def test_decode_malformed_is_error():
    code, out, err = pan("decode", "--bits", "0101")
    assert code == 1 and out == "" and "pan decode" in err


def test_parse_and_validate():
    code, doc, _ = pan_json("parse", "prime.tm")
    assert code == 0 and doc["name"] == "PRIME"
    code, doc, _ = pan_json("validate", "--machine", "EMPTY")
    assert code == 0 and doc["valid"]


def test_validate_reports_violations(tmp_path):
    src = tmp_path / "bad.tm"
    src.write_text("machine BAD\ninput_alphabet: 1\ntape_alphabet: 1 B\nstart: a\nfinal: a\npan: a\n"
                   "delta:\na 1 -> a B R\na 1 -> a 1 L\nend\n")
    code, doc, _ = pan_json("validate", src)
    assert code == 1
    assert {v["kind"] for v in doc["violations"]} >= {"PanFinalOverlap", "DuplicateRule", "PanWritesTape"}


def test_syntax_error_is_reported(tmp_path):
    src = tmp_path / "bad.tm"
    src.write_text("machine X\nstart q0\n")
    code, out, err = pan("parse", src)
    assert code == 1 and "line 2" in err


@pytest.mark.parametrize("op", ["defuse", "graft"])
def test_transform_table(op):
    code, doc, _ = pan_json("transform", op, "--machine", "pandemo.tm")
    assert code == 0 and doc["kind"] == "machine"


def test_transform_behavioral_needs_input():
    assert pan("transform", "behavioral", "--machine", "MULT2")[0] == 1
    code, doc, _ = pan_json("transform", "behavioral", "--machine", "MULT2", "--input", "11")
    assert code == 0 and doc["pan"] == ["pan_hook"]


def test_transform_predicates():
    code, doc, _ = pan_json("transform", "const-wrap", "--machine", "LOOP", "--input", "", "--probe", "1",
                            "--budget", 100)
    assert code == 2 and doc["verdict"]["answer"] == "Unknown"
    code, doc, _ = pan_json("transform", "alternate", "--machine", "EMPTY", "--stub", "ACCEPT_ALL",
                            "--probe", "11")
    assert code == 0 and doc["verdict"] == {"answer": "Yes", "steps": 0}
    code, doc, _ = pan_json("transform", "alternate", "--machine", "MULT2", "--stub", "LOOP")
    assert code == 0 and "verdict" not in doc


def test_probes():
    code, doc, _ = pan_json("probe", "s1", "--machine", "MULT6", "--family", "MULT2,MULT3", "--budget", 10000)
    assert code == 0 and doc["verdict"]["answer"] == "No"
    code, doc, _ = pan_json("probe", "s1", "--bits", encode_machine(zoo_machine("PRIME")),
                            "--family", "MULT2,MULT3", "--budget", 1000)
    assert code == 2
    code, doc, _ = pan_json("probe", "non-universal", "--machine", "ACCEPT_ALL", "--max-len", 3)
    assert code == 2 and doc["counterexample"] is None
    code, doc, _ = pan_json("probe", "non-universal", "--machine", "MULT2")
    assert code == 0 and doc["counterexample"] == ""


def test_probe_s2():
    code, doc, _ = pan_json("probe", "s2", "--machine", "oq1.tm", "--family", "MULT2,MULT3",
                            "--family2", "MULT2", "--budget", 1000000)
    assert code == 0 and doc["witness"]["string"] == "1111"


def test_transcript_record_and_validate(tmp_path):
    code, doc, _ = pan_json("transcript", "record", "--machine", "oq1.tm", "--family", "MULT2,MULT3")
    assert code == 0
    path = tmp_path / "t.json"
    path.write_text(json.dumps(doc))
    code, check, _ = pan_json("transcript", "validate", path, "--family", "MULT2,MULT3")
    assert code == 0 and check["valid"]
    doc["claim"] = False
    path.write_text(json.dumps(doc))
    code, check, _ = pan_json("transcript", "validate", path, "--family", "MULT2,MULT3")
    assert code == 1 and check["reason"] == "ClaimMismatch"


def test_zoo_commands():
    code, doc, _ = pan_json("zoo", "list")
    assert code == 0 and len(doc["entries"]) == 8
    code, doc, _ = pan_json("zoo", "show", "prime")
    assert code == 0 and doc["name"] == "PRIME"
    code, doc, _ = pan_json("zoo", "verify", "MULT3")
    assert code == 0 and doc["ok"]
    code, doc, _ = pan_json("zoo", "verify", "PRIME", "--budget", 1000)
    assert code == 2 and not doc["ok"]


def test_usage_errors():
    assert pan()[0] == 1
    assert pan("run")[0] == 1
    assert pan("run", "--machine", "nope.tm")[0] == 1
    assert pan("run", "--machine", "MULT2", "--input", "12")[0] == 1
    assert pan("run", "--machine", "MULT2", "--budget", -1)[0] == 1
    assert pan("zoo", "show", "NOPE")[0] == 1


def test_text_mode_output():
    code, out, _ = pan("run", "--machine", "MULT2", "--input", "1111")
    assert code == 0 and out.startswith("outcome: AcceptedAt")


def test_console_script_installed():
    r = subprocess.run(["pan", "zoo", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "PRIME" in r.stdout
