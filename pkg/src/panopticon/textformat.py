"""Line-oriented machine description format.

::

    machine MULT2
    input_alphabet: 1
    tape_alphabet: 1 B
    start: c0
    final: acc
    pan:
    delta:
    c0 1 -> c1 1 R
    end

``#`` starts a comment.  Two optional header lines extend the format: ``states:``
fixes the state order (otherwise states are numbered by first appearance, start
first) and ``oracle: <query> <yes> <no>`` names the special states of an oracle
machine.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import MachineSyntaxError
from .machine import BLANK, DIRECTIONS, MachineDef, Rule, check_machine

_RULE = re.compile(r"^(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+(\S+)$")
_HEADERS = ("input_alphabet", "tape_alphabet", "start", "final", "pan", "states", "oracle")


@dataclass(frozen=True)
class ParsedSource:
    machine: MachineDef
    oracle: tuple[str, str, str] | None = None


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_source(text: str, strict: bool = True) -> ParsedSource:
    """Parse a complete source unit.  With ``strict=False`` invariant checks are skipped."""
    name = None
    headers: dict[str, list[str]] = {}
    rules: list[Rule] = []
    section = "head"
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        last = lineno
        if section == "done":
            raise MachineSyntaxError(lineno, "content after 'end'")
        if name is None:
            parts = line.split()
            if parts[0] != "machine" or len(parts) != 2:
                raise MachineSyntaxError(lineno, "expected 'machine <name>'")
            name = parts[1]
            continue
        if section == "head":
            if line == "delta:":
                section = "delta"
                continue
            key, sep, rest = line.partition(":")
            key = key.strip()
            if not sep or key not in _HEADERS:
                raise MachineSyntaxError(lineno, f"unexpected header line {line!r}")
            if key in headers:
                raise MachineSyntaxError(lineno, f"repeated header {key!r}")
            headers[key] = rest.split()
            continue
        if line == "end":
            section = "done"
            continue
        m = _RULE.match(line)
        if not m:
            raise MachineSyntaxError(lineno, f"bad rule {line!r}")
        if m.group(5) not in DIRECTIONS:
            raise MachineSyntaxError(lineno, f"direction must be L or R, got {m.group(5)!r}")
        rules.append(Rule(*m.groups()))

    if name is None:
        raise MachineSyntaxError(1, "empty source")
    if section != "done":
        raise MachineSyntaxError(last + 1, "missing 'end'" if section == "delta" else "missing 'delta:'")
    for key in ("input_alphabet", "tape_alphabet", "start"):
        if key not in headers:
            raise MachineSyntaxError(last, f"missing header {key!r}")
    if len(headers["start"]) != 1:
        raise MachineSyntaxError(last, "'start:' takes exactly one state")
    start = headers["start"][0]
    final = headers.get("final", [])
    pan = headers.get("pan", [])
    oracle = None
    if "oracle" in headers:
        if len(headers["oracle"]) != 3:
            raise MachineSyntaxError(last, "'oracle:' takes <query> <yes> <no>")
        oracle = tuple(headers["oracle"])

    if "states" in headers:
        states = headers["states"]
    else:
        states = []
        mentioned = [start, *final, *pan, *(oracle or ())]
        for r in rules:
            mentioned += [r.state, r.next_state]
        for s in mentioned:
            if s not in states:
                states.append(s)

    machine = MachineDef(
        name=name,
        states=tuple(states),
        pan_states=frozenset(pan),
        input_alphabet=tuple(headers["input_alphabet"]),
        tape_alphabet=tuple(headers["tape_alphabet"]),
        blank=BLANK,
        start_state=start,
        final_states=frozenset(final),
        rules=tuple(rules),
    )
    if strict:
        check_machine(machine)
    return ParsedSource(machine, oracle)


def parse_machine(text: str, strict: bool = True) -> MachineDef:
    return parse_source(text, strict).machine


def format_machine(machine: MachineDef, oracle: tuple[str, str, str] | None = None) -> str:
    ordered = lambda group: " ".join(s for s in machine.states if s in group)
    lines = [
        f"machine {machine.name}",
        f"states: {' '.join(machine.states)}",
        f"input_alphabet: {' '.join(machine.input_alphabet)}",
        f"tape_alphabet: {' '.join(machine.tape_alphabet)}",
        f"start: {machine.start_state}",
        f"final: {ordered(machine.final_states)}".rstrip(),
        f"pan: {ordered(machine.pan_states)}".rstrip(),
    ]
    if oracle is not None:
        lines.append("oracle: " + " ".join(oracle))
    lines.append("delta:")
    lines += [str(r) for r in machine.rules]
    lines.append("end")
    return "\n".join(lines) + "\n"
