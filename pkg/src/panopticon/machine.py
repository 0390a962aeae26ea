"""Single-tape deterministic machines with a distinguished set of pan states.

A machine is the octuple ``(Q, Q_pan, Sigma, Gamma, delta, q0, B, F)``.  Transitions
out of a pan state may move the head and change state but must write back the
symbol they read; this is what makes a pan state an "environment-only" action.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    AlphabetError,
    DuplicateRule,
    MachineError,
    PanFinalOverlap,
    PanWritesTape,
    UndeclaredIdentifier,
)

LEFT = "L"
RIGHT = "R"
DIRECTIONS = (LEFT, RIGHT)
BLANK = "B"


@dataclass(frozen=True, order=True)
class Rule:
    state: str
    read: str
    next_state: str
    write: str
    move: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.state, self.read)

    def __str__(self) -> str:
        return f"{self.state} {self.read} -> {self.next_state} {self.write} {self.move}"


@dataclass(frozen=True)
class MachineDef:
    """Immutable transition table.

    ``rules`` is kept as a tuple rather than a mapping so that hand-built,
    non-deterministic tables can still be represented and reported by
    :func:`validate_machine`.  Use :attr:`delta` for lookups.  The ``name`` is
    metadata and does not take part in equality.
    """

    name: str = field(compare=False)
    states: tuple[str, ...]
    pan_states: frozenset[str]
    input_alphabet: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    blank: str
    start_state: str
    final_states: frozenset[str]
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "pan_states", frozenset(self.pan_states))
        object.__setattr__(self, "final_states", frozenset(self.final_states))
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "tape_alphabet", tuple(self.tape_alphabet))
        state_pos = {s: i for i, s in enumerate(self.states)}
        sym_pos = {s: i for i, s in enumerate(self.tape_alphabet)}
        big = len(self.states) + len(self.tape_alphabet)

        def order(rule: Rule):
            return (state_pos.get(rule.state, big), sym_pos.get(rule.read, big), rule)

        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=order)))

    @cached_property
    def delta(self) -> Mapping[tuple[str, str], Rule]:
        return {rule.key: rule for rule in self.rules}

    @cached_property
    def state_index(self) -> Mapping[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def symbol_index(self) -> Mapping[str, int]:
        return {s: i for i, s in enumerate(self.tape_alphabet)}

    def rules_from(self, state: str) -> list[Rule]:
        return [r for r in self.rules if r.state == state]

    def with_name(self, name: str) -> "MachineDef":
        return replace(self, name=name)

    def __repr__(self) -> str:
        return f"MachineDef({self.name!r}, |Q|={len(self.states)}, |delta|={len(self.rules)})"


@dataclass(frozen=True)
class Configuration:
    """Instantaneous description.  ``tape`` holds only the non-blank cells, sorted by position."""

    tape: tuple[tuple[int, str], ...]
    head: int
    state: str
    step: int = 0

    @classmethod
    def initial(cls, machine: MachineDef, word: str) -> "Configuration":
        cells = tuple((i, sym) for i, sym in enumerate(word) if sym != machine.blank)
        return cls(cells, 0, machine.start_state, 0)

    def read(self, position: int, blank: str) -> str:
        for pos, sym in self.tape:
            if pos == position:
                return sym
        return blank

    def cells(self) -> dict[int, str]:
        return dict(self.tape)

    def to_json(self) -> dict:
        return {
            "state": self.state,
            "head": self.head,
            "step": self.step,
            "tape": [[pos, sym] for pos, sym in self.tape],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Configuration":
        tape = tuple(sorted((int(pos), str(sym)) for pos, sym in data["tape"]))
        return cls(tape, int(data["head"]), str(data["state"]), int(data["step"]))


def step_machine(machine: MachineDef, config: Configuration) -> Configuration | None:
    """Apply one transition, or return ``None`` when no rule applies (halted)."""
    symbol = config.read(config.head, machine.blank)
    rule = machine.delta.get((config.state, symbol))
    if rule is None:
        return None
    cells = dict(config.tape)
    if rule.write == machine.blank:
        cells.pop(config.head, None)
    else:
        cells[config.head] = rule.write
    head = config.head + (1 if rule.move == RIGHT else -1)
    return Configuration(tuple(sorted(cells.items())), head, rule.next_state, config.step + 1)


def is_halted(machine: MachineDef, config: Configuration) -> bool:
    return (config.state, config.read(config.head, machine.blank)) not in machine.delta


def is_accepting(machine: MachineDef, config: Configuration) -> bool:
    return config.state in machine.final_states and is_halted(machine, config)


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: tuple[str, ...]
    message: str

    def error(self) -> MachineError:
        if self.kind == "DuplicateRule":
            return DuplicateRule(*self.subject)
        if self.kind == "UndeclaredIdentifier":
            return UndeclaredIdentifier(self.subject[0])
        if self.kind == "PanFinalOverlap":
            return PanFinalOverlap(self.subject[0])
        if self.kind == "PanWritesTape":
            return PanWritesTape(*self.subject)
        if self.kind == "AlphabetViolation":
            return AlphabetError(self.message)
        return MachineError(self.message)


def _duplicates(items: Iterable[str]) -> list[str]:
    seen, dups = set(), []
    for item in items:
        if item in seen and item not in dups:
            dups.append(item)
        seen.add(item)
    return dups


def validate_machine(machine: MachineDef) -> list[Violation]:
    """Return every invariant violation of ``machine``; an empty list means valid."""
    out: list[Violation] = []
    states = set(machine.states)
    tape = set(machine.tape_alphabet)

    for s in _duplicates(machine.states):
        out.append(Violation("DuplicateDeclaration", (s,), f"state {s!r} declared twice"))
    for s in _duplicates(machine.tape_alphabet):
        out.append(Violation("DuplicateDeclaration", (s,), f"symbol {s!r} declared twice"))
    for s in _duplicates(machine.input_alphabet):
        out.append(Violation("DuplicateDeclaration", (s,), f"input symbol {s!r} declared twice"))

    if machine.start_state not in states:
        out.append(Violation("UndeclaredIdentifier", (machine.start_state,),
                             f"start state {machine.start_state!r} is not declared"))
    for group, label in ((machine.pan_states, "pan"), (machine.final_states, "final")):
        for s in sorted(group - states):
            out.append(Violation("UndeclaredIdentifier", (s,), f"{label} state {s!r} is not declared"))

    if machine.blank not in tape:
        out.append(Violation("AlphabetViolation", (machine.blank,),
                             f"blank {machine.blank!r} is not in the tape alphabet"))
    for sym in machine.input_alphabet:
        if sym == machine.blank or sym not in tape:
            out.append(Violation("AlphabetViolation", (sym,),
                                 f"input symbol {sym!r} must be a non-blank tape symbol"))
        elif len(sym) != 1:
            out.append(Violation("AlphabetViolation", (sym,),
                                 f"input symbol {sym!r} must be a single character"))

    for s in sorted(machine.pan_states & machine.final_states):
        out.append(Violation("PanFinalOverlap", (s,), f"state {s!r} is both pan and final"))

    seen: set[tuple[str, str]] = set()
    for rule in machine.rules:
        if rule.key in seen:
            out.append(Violation("DuplicateRule", rule.key,
                                 f"more than one rule for ({rule.state}, {rule.read})"))
        seen.add(rule.key)
        for st in (rule.state, rule.next_state):
            if st not in states:
                out.append(Violation("UndeclaredIdentifier", (st,), f"state {st!r} in rule '{rule}' is not declared"))
        for sym in (rule.read, rule.write):
            if sym not in tape:
                out.append(Violation("UndeclaredIdentifier", (sym,), f"symbol {sym!r} in rule '{rule}' is not declared"))
        if rule.move not in DIRECTIONS:
            out.append(Violation("BadDirection", (rule.move,), f"direction {rule.move!r} in rule '{rule}'"))
        if rule.state in machine.pan_states and rule.write != rule.read:
            out.append(Violation("PanWritesTape", (rule.state, rule.read),
                                 f"pan state {rule.state!r} rewrites {rule.read!r} as {rule.write!r}"))
    return out


def check_machine(machine: MachineDef) -> MachineDef:
    """Raise the first violation as an exception; return ``machine`` otherwise."""
    problems = validate_machine(machine)
    if problems:
        raise problems[0].error()
    return machine


# Canonical symbol names keep unary ("1") and bit ("1", "0") tapes readable after decoding.
_SYMBOL_POOL = ["1", "0"] + list("23456789") + list(string.ascii_lowercase) + [
    c for c in string.ascii_uppercase if c != BLANK
]


def canonical_symbol_name(index: int) -> str:
    """Name for canonical symbol ``index`` (1-based; 1 is always the blank)."""
    if index == 1:
        return BLANK
    k = index - 2
    return _SYMBOL_POOL[k] if k < len(_SYMBOL_POOL) else f"s{index}"


def canonical_state_name(index: int) -> str:
    return f"q{index}"


def canonical_state_order(machine: MachineDef) -> list[str]:
    return [machine.start_state] + [s for s in machine.states if s != machine.start_state]


def canonical_symbol_order(machine: MachineDef) -> list[str]:
    head = [machine.blank] + [s for s in machine.input_alphabet]
    return head + [s for s in machine.tape_alphabet if s not in head]


def relabel(machine: MachineDef, state_names: Mapping[str, str], symbol_names: Mapping[str, str],
            name: str | None = None) -> MachineDef:
    st, sy = state_names.__getitem__, symbol_names.__getitem__
    return MachineDef(
        name=machine.name if name is None else name,
        states=tuple(st(s) for s in machine.states),
        pan_states=frozenset(st(s) for s in machine.pan_states),
        input_alphabet=tuple(sy(s) for s in machine.input_alphabet),
        tape_alphabet=tuple(sy(s) for s in machine.tape_alphabet),
        blank=sy(machine.blank),
        start_state=st(machine.start_state),
        final_states=frozenset(st(s) for s in machine.final_states),
        rules=tuple(Rule(st(r.state), sy(r.read), st(r.next_state), sy(r.write), r.move)
                    for r in machine.rules),
    )


def canonicalize(machine: MachineDef) -> MachineDef:
    """Rename states to ``q1..qn`` (start first) and symbols by canonical index."""
    states = canonical_state_order(machine)
    symbols = canonical_symbol_order(machine)
    smap = {s: canonical_state_name(i) for i, s in enumerate(states, 1)}
    ymap = {s: canonical_symbol_name(i) for i, s in enumerate(symbols, 1)}
    ordered = replace(machine, states=tuple(states), tape_alphabet=tuple(symbols))
    return relabel(ordered, smap, ymap)
