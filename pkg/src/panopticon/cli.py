"""``pan``: command-line front end.

Exit codes: 0 for a definitive verdict or a completed transformation, 2 for
an Unknown verdict, 1 for any error (diagnostic on stderr).  With
``--format json`` exactly one JSON document is written to stdout; its
``kind`` field names the schema under ``panopticon/schemas``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .acceptors import LanguageFamily, TableMachine
from .dovetail import find_common_element
from .encoding import decode_machine, encode_machine
from .errors import PanopticonError
from .machine import MachineDef, validate_machine
from .oracle import ApproxS1, OracleMachineDef, approx_s1_membership, approx_s2_membership, run_oracle_machine
from .reductions import alternator, build_behavioral_instance, const_wrapper, defuse, graft, probe_non_universality
from .simulate import Verdict, run_machine
from .textformat import format_machine, parse_source
from .transcript import Transcript, record_transcript, validate_transcript
from .zoo import ZOO_NAMES, _CATALOG, source_text, zoo_get, zoo_verify

DEFAULT_BUDGET = 100_000
DEFAULT_MAX_LEN = 8

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class CliError(Exception):
    pass


# Loading -------------------------------------------------------------------

def _zoo_file(ref: str) -> Optional[str]:
    """Bundled source for ``zoo:NAME``, a bare zoo name, or a bundled file's basename."""
    name = ref[4:] if ref.startswith("zoo:") else ref
    if name.upper() in _CATALOG:
        return _CATALOG[name.upper()][0]
    base = os.path.basename(name)
    bundled = {f for f, *_ in _CATALOG.values()} | {"oq1.tm", "oq_empty.tm"}
    if base in bundled:
        return base
    if name.lower() in ("oq1", "oq_empty"):
        return f"{name.lower()}.tm"
    return None


def read_source(ref: str) -> str:
    if ref == "-":
        return sys.stdin.read()
    if ref.startswith("zoo:") or not os.path.exists(ref):
        bundled = _zoo_file(ref)
        if bundled is None:
            raise CliError(f"no such machine file or zoo entry: {ref}")
        return source_text(bundled)
    with open(ref, encoding="utf-8") as fh:
        return fh.read()


def load_source(ref: str, strict: bool = True):
    parsed = parse_source(read_source(ref), strict=strict)
    if ref.startswith("zoo:") or (not os.path.exists(ref) and ref != "-"):
        key = (ref[4:] if ref.startswith("zoo:") else ref).upper()
        if key in _CATALOG:
            parsed = type(parsed)(parsed.machine.with_name(key), parsed.oracle)
    return parsed


def load_machine(ref: str) -> MachineDef:
    return load_source(ref).machine


def load_oracle(ref: str) -> OracleMachineDef:
    parsed = load_source(ref)
    if parsed.oracle is None:
        raise CliError(f"{ref}: not an oracle machine (missing 'oracle:' header)")
    return OracleMachineDef(parsed.machine, *parsed.oracle)


def load_family(refs_text: str, level: int = 1) -> LanguageFamily:
    refs = [r for r in refs_text.split(",") if r.strip()]
    if not refs:
        raise CliError("empty family")
    return LanguageFamily(tuple(TableMachine(load_machine(r.strip())) for r in refs), level)


def read_bits(args) -> str:
    bits = args.bits if args.bits is not None else sys.stdin.read()
    return "".join(bits.split())


# Output --------------------------------------------------------------------

def machine_doc(m: MachineDef, oracle=None) -> dict:
    doc = {
        "kind": "machine",
        "name": m.name,
        "states": list(m.states),
        "input_alphabet": list(m.input_alphabet),
        "tape_alphabet": list(m.tape_alphabet),
        "blank": m.blank,
        "start": m.start_state,
        "final": sorted(m.final_states),
        "pan": sorted(m.pan_states),
        "rules": [[r.state, r.read, r.next_state, r.write, r.move] for r in m.rules],
        "encoding": encode_machine(m),
    }
    if oracle is not None:
        doc["oracle"] = dict(zip(("query", "yes", "no"), oracle))
    return doc


def verdict_exit(v: Verdict) -> int:
    return EXIT_UNKNOWN if v.is_unknown else EXIT_OK


class Out:
    def __init__(self, fmt: str, stream=None):
        self.json = fmt == "json"
        self.stream = stream or sys.stdout

    def emit(self, doc: dict, text: str) -> None:
        if self.json:
            self.stream.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _verdict_doc(kind: str, res, **extra) -> dict:
    doc = {"kind": kind, **res.to_json(), **extra}
    return doc


def _verdict_text(res) -> str:
    lines = [f"verdict: {res.verdict}"]
    if res.witness is not None:
        w = res.witness
        lines.append(f"witness: {w.string!r} (family member {w.family_index}, "
                     f"steps {w.steps_target}/{w.steps_family})")
    lines.append(f"spent: {res.spent}")
    for d in res.diagnostics:
        lines.append("unresolved: " + json.dumps(d, sort_keys=True))
    return "\n".join(lines)


# Commands ------------------------------------------------------------------

def cmd_parse(args, out: Out) -> int:
    parsed = load_source(args.machine)
    out.emit(machine_doc(parsed.machine, parsed.oracle), format_machine(parsed.machine, parsed.oracle))
    return EXIT_OK


def cmd_validate(args, out: Out) -> int:
    parsed = load_source(args.machine, strict=False)
    problems = validate_machine(parsed.machine)
    doc = {"kind": "validation", "name": parsed.machine.name, "valid": not problems,
           "violations": [{"kind": v.kind, "subject": v.subject, "message": v.message} for v in problems]}
    text = "valid" if not problems else "\n".join(f"{v.kind}: {v.message}" for v in problems)
    out.emit(doc, text)
    return EXIT_OK if not problems else EXIT_ERROR


def cmd_run(args, out: Out) -> int:
    parsed = load_source(args.machine)
    queries = None
    if parsed.oracle is not None:
        if not args.family:
            raise CliError("oracle machine: pass --family to resolve queries")
        odef = OracleMachineDef(parsed.machine, *parsed.oracle)
        sub = args.budget if args.sub_budget is None else args.sub_budget
        trace, queries = run_oracle_machine(odef, ApproxS1(load_family(args.family), sub), args.input, args.budget)
    else:
        trace = run_machine(parsed.machine, args.input, args.budget, log=args.log)
    doc = {"kind": "run_trace", **trace.to_json()}
    lines = [f"outcome: {trace.outcome.value}", f"steps: {trace.steps}"]
    lines += [f"pan: step {s} state {q}" for s, q in trace.pan_events]
    if queries is not None:
        doc["queries"] = [q.to_json() for q in queries]
        lines += [f"query: step {q.step} {q.answer} {q.query}" for q in queries]
    if trace.log is not None:
        lines += [json.dumps(c.to_json(), sort_keys=True) for c in trace.log]
    out.emit(doc, "\n".join(lines))
    return EXIT_UNKNOWN if trace.outcome.value == "BudgetExhausted" else EXIT_OK


def cmd_encode(args, out: Out) -> int:
    m = load_machine(args.machine)
    bits = encode_machine(m)
    out.emit({"kind": "encoding", "name": m.name, "encoding": bits, "length": len(bits)}, bits)
    return EXIT_OK


def cmd_decode(args, out: Out) -> int:
    m = decode_machine(read_bits(args), name=args.name)
    out.emit(machine_doc(m), format_machine(m))
    return EXIT_OK


def cmd_transform(args, out: Out) -> int:
    op = args.op
    if op in ("defuse", "graft", "behavioral"):
        m = load_machine(args.machine)
        if op == "defuse":
            produced = defuse(m).produced
        elif op == "graft":
            produced = graft(m).produced
        else:
            if args.input is None:
                raise CliError("behavioral: --input is required")
            produced, _ = build_behavioral_instance(m, args.input)
        out.emit(machine_doc(produced), format_machine(produced))
        return EXIT_OK
    if op == "const-wrap":
        if args.input is None:
            raise CliError("const-wrap: --input is required")
        pred = const_wrapper(load_machine(args.machine), args.input)
    else:
        if args.stub is None:
            raise CliError("alternate: --stub is required")
        pred = alternator(load_machine(args.machine), load_machine(args.stub), args.stub_input)
    doc = {"kind": "predicate", "ref": pred.to_ref()}
    lines = [f"predicate: {pred.name}", f"cost model: {pred.cost_model}"]
    code = EXIT_OK
    if args.probe is not None:
        v = pred.accepts_within(args.probe, args.budget)
        doc["probe"] = args.probe
        doc["verdict"] = v.to_json()
        lines.append(f"verdict on {args.probe!r}: {v}")
        code = verdict_exit(v)
    out.emit(doc, "\n".join(lines))
    return code


def cmd_search(args, out: Out) -> int:
    target = TableMachine(load_machine(args.target))
    res = find_common_element(target, load_family(args.family), args.budget)
    out.emit(_verdict_doc("search_result", res), _verdict_text(res))
    return verdict_exit(res.verdict)


def cmd_probe(args, out: Out) -> int:
    if args.set == "non-universal":
        res = probe_non_universality(load_machine(args.machine), args.max_len, args.budget)
        doc = {"kind": "probe_result", "verdict": res.verdict.to_json(),
               "counterexample": res.counterexample, "timed_out": list(res.timed_out)}
        text = f"verdict: {res.verdict}"
        if res.counterexample is not None:
            text += f"\ncounterexample: {res.counterexample!r}"
        if res.timed_out:
            text += f"\ntimed out: {len(res.timed_out)} word(s)"
        out.emit(doc, text)
        return verdict_exit(res.verdict)
    if args.family is None:
        raise CliError(f"probe {args.set}: --family is required")
    if args.set == "s1":
        if args.machine is not None:
            bits = encode_machine(load_machine(args.machine))
        else:
            bits = read_bits(args)
        res = approx_s1_membership(bits, load_family(args.family, 1), args.budget)
    else:
        if args.machine is None or args.family2 is None:
            raise CliError("probe s2: --machine (an oracle machine) and --family2 are required")
        res = approx_s2_membership(load_oracle(args.machine), load_family(args.family, 1),
                                   load_family(args.family2, 2), args.budget, args.sub_budget)
    out.emit(_verdict_doc("search_result", res), _verdict_text(res))
    return verdict_exit(res.verdict)


def _read_json(ref: str):
    if ref == "-":
        return json.load(sys.stdin)
    with open(ref, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_transcript(args, out: Out) -> int:
    family = load_family(args.family, 1)
    if args.op == "record":
        if args.machine is None:
            raise CliError("transcript record: --machine is required")
        t = record_transcript(load_oracle(args.machine), family, args.input, args.budget, args.sub_budget)
        doc = {"kind": "transcript", **t.to_json()}
        out.emit(doc, json.dumps(t.to_json(), sort_keys=True))
        return EXIT_OK
    if args.file is None:
        raise CliError("transcript validate: a transcript file (or -) is required")
    data = _read_json(args.file)
    data.pop("kind", None)
    check = validate_transcript(Transcript.from_json(data), family)
    out.emit({"kind": "transcript_check", **check.to_json()}, str(check))
    return EXIT_OK if check.valid else EXIT_ERROR


def cmd_zoo(args, out: Out) -> int:
    if args.op == "list":
        entries = [{"name": n, "language": zoo_get(n).intended_language, "file": zoo_get(n).source_file}
                   for n in ZOO_NAMES]
        out.emit({"kind": "zoo_list", "entries": entries},
                 "\n".join(f"{e['name']:<11} {e['language']}" for e in entries))
        return EXIT_OK
    if args.op == "show":
        if not args.name:
            raise CliError("zoo show: a zoo name is required")
        entry = zoo_get(args.name.upper())
        out.emit(machine_doc(entry.machine), source_text(entry.source_file))
        return EXIT_OK
    names = [args.name.upper()] if args.name else list(ZOO_NAMES)
    reports = []
    for n in names:
        entry = zoo_get(n)
        max_n = entry.check_length if args.max_n is None else args.max_n
        reports.append(zoo_verify(n, max_n, args.budget))
    ok = all(r.ok for r in reports)
    failed = any(r.disagreements for r in reports)

    def status(r):
        return "ok" if r.ok else ("FAIL" if r.disagreements else "UNKNOWN")

    lines = [f"{r.name:<11} {status(r):<7} {r.agreements}/{r.checked} agree"
             + (f", {len(r.unknowns)} unknown" + (" (expected)" if r.unknown_expected else "")
                if r.unknowns else "")
             for r in reports]
    out.emit({"kind": "zoo_verify", "ok": ok, "reports": [r.to_json() for r in reports]}, "\n".join(lines))
    if failed:
        return EXIT_ERROR
    return EXIT_OK if ok else EXIT_UNKNOWN


# Parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"step budget (default {DEFAULT_BUDGET})")
    common.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                        help=f"longest probe word (default {DEFAULT_MAX_LEN})")
    common.add_argument("--log", action="store_true", help="include the configuration log")

    p = argparse.ArgumentParser(prog="pan", description="Pan-state Turing machine toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("parse", cmd_parse, help="parse a machine file and print it normalized")
    sp.add_argument("machine", nargs="?", default=None)
    sp.add_argument("--machine", dest="machine_opt")

    sp = add("validate", cmd_validate, help="report every well-formedness violation")
    sp.add_argument("machine", nargs="?", default=None)
    sp.add_argument("--machine", dest="machine_opt")

    sp = add("run", cmd_run, help="bounded simulation")
    sp.add_argument("--machine", required=True)
    sp.add_argument("--input", default="")
    sp.add_argument("--family", help="level-1 family resolving an oracle machine's queries")
    sp.add_argument("--sub-budget", type=int)

    sp = add("encode", cmd_encode, help="print the binary code of a machine")
    sp.add_argument("--machine", required=True)

    sp = add("decode", cmd_decode, help="decode a binary code (stdin or --bits)")
    sp.add_argument("--bits")
    sp.add_argument("--name", default="decoded")

    sp = add("transform", cmd_transform, help="apply a reduction")
    sp.add_argument("op", choices=("defuse", "graft", "behavioral", "const-wrap", "alternate"))
    sp.add_argument("--machine", required=True)
    sp.add_argument("--input")
    sp.add_argument("--stub")
    sp.add_argument("--stub-input", default="")
    sp.add_argument("--probe", help="evaluate the produced predicate on this word")

    sp = add("search", cmd_search, help="dovetailed search")
    sp.add_argument("op", choices=("common",))
    sp.add_argument("--target", required=True)
    sp.add_argument("--family", required=True, help="comma-separated machine refs")

    sp = add("probe", cmd_probe, help="one-sided semi-decision procedures")
    sp.add_argument("set", choices=("s1", "s2", "non-universal"))
    sp.add_argument("--machine")
    sp.add_argument("--bits")
    sp.add_argument("--family")
    sp.add_argument("--family2")
    sp.add_argument("--sub-budget", type=int)

    sp = add("transcript", cmd_transcript, help="record or validate oracle-run transcripts")
    sp.add_argument("op", choices=("validate", "record"))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--family", required=True)
    sp.add_argument("--machine")
    sp.add_argument("--input", default="")
    sp.add_argument("--sub-budget", type=int)

    sp = add("zoo", cmd_zoo, help="bundled fixture machines")
    sp.add_argument("op", choices=("list", "show", "verify"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--max-n", type=int)
    return p


def run_cli(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if args.command in ("parse", "validate"):
        args.machine = args.machine or args.machine_opt
        if args.machine is None:
            stderr.write(f"pan {args.command}: a machine file is required\n")
            return EXIT_ERROR
    if args.budget < 0:
        stderr.write("pan: --budget must be non-negative\n")
        return EXIT_ERROR
    out = Out(args.format, stdout)
    try:
        return args.func(args, out)
    except (CliError, PanopticonError, ValueError, TypeError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"pan {args.command}: {msg}\n")
        return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_cli(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":  # pragma: no cover
    main()
