"""Bounded simulation: run traces, three-valued verdicts and resumable runs."""
from __future__ import annotations

import enum
import json
from array import array
from dataclasses import dataclass
from typing import Optional

from . import kernel
from .errors import InputAlphabetViolation
from .machine import Configuration, MachineDef, RIGHT, is_accepting, step_machine


class Answer(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    """``Yes``/``No`` carry the step count that settles them; ``Unknown`` carries the budget spent."""

    answer: Answer
    steps: Optional[int] = None
    budget: Optional[int] = None

    @classmethod
    def yes(cls, steps: int) -> "Verdict":
        return cls(Answer.YES, steps=steps)

    @classmethod
    def no(cls, steps: int) -> "Verdict":
        return cls(Answer.NO, steps=steps)

    @classmethod
    def unknown(cls, budget: int) -> "Verdict":
        return cls(Answer.UNKNOWN, budget=budget)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def is_no(self) -> bool:
        return self.answer is Answer.NO

    @property
    def is_unknown(self) -> bool:
        return self.answer is Answer.UNKNOWN

    @property
    def definitive(self) -> bool:
        return self.answer is not Answer.UNKNOWN

    def to_json(self) -> dict:
        out = {"answer": self.answer.value}
        if self.steps is not None:
            out["steps"] = self.steps
        if self.budget is not None:
            out["budget"] = self.budget
        return out

    def __str__(self) -> str:
        n = self.steps if self.definitive else self.budget
        return f"{self.answer.value}({n})"


class Outcome(enum.Enum):
    ACCEPTED = "AcceptedAt"
    REJECTED = "HaltedNonAccepting"
    EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class RunTrace:
    outcome: Outcome
    steps: int
    pan_events: tuple[tuple[int, str], ...] = ()
    log: Optional[tuple[Configuration, ...]] = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPTED

    @property
    def halted(self) -> bool:
        return self.outcome is not Outcome.EXHAUSTED

    def verdict(self) -> Verdict:
        if self.outcome is Outcome.ACCEPTED:
            return Verdict.yes(self.steps)
        if self.outcome is Outcome.REJECTED:
            return Verdict.no(self.steps)
        return Verdict.unknown(self.steps)

    def to_json(self) -> dict:
        out = {
            "outcome": self.outcome.value,
            "steps": self.steps,
            "pan_events": [[s, q] for s, q in self.pan_events],
        }
        if self.log is not None:
            out["log"] = [c.to_json() for c in self.log]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "RunTrace":
        log = data.get("log")
        return cls(
            Outcome(data["outcome"]),
            int(data["steps"]),
            tuple((int(s), str(q)) for s, q in data["pan_events"]),
            None if log is None else tuple(Configuration.from_json(c) for c in log),
        )


class CompiledMachine:
    """Dense index tables for the stepping kernel."""

    def __init__(self, machine: MachineDef):
        if len(machine.tape_alphabet) > 255:
            raise ValueError("tape alphabets above 255 symbols are not supported")
        self.machine = machine
        self.states = list(machine.states)
        self.symbols = list(machine.tape_alphabet)
        self.sidx = {s: i for i, s in enumerate(self.states)}
        self.yidx = {s: i for i, s in enumerate(self.symbols)}
        self.nsym = len(self.symbols)
        size = len(self.states) * self.nsym
        self.nxt = array("i", [-1] * size)
        self.wr = bytearray(size)
        self.mv = array("b", [0] * size)
        for r in machine.rules:
            idx = self.sidx[r.state] * self.nsym + self.yidx[r.read]
            self.nxt[idx] = self.sidx[r.next_state]
            self.wr[idx] = self.yidx[r.write]
            self.mv[idx] = 1 if r.move == RIGHT else -1
        self.pan = bytearray(1 if s in machine.pan_states else 0 for s in self.states)
        self.final = frozenset(self.sidx[s] for s in machine.final_states)
        self.blank = self.yidx[machine.blank]
        self.start = self.sidx[machine.start_state]
        self.inputs = {s: self.yidx[s] for s in machine.input_alphabet}


def compile_machine(machine: MachineDef) -> CompiledMachine:
    cm = machine.__dict__.get("_compiled")
    if cm is None:
        cm = CompiledMachine(machine)
        machine.__dict__["_compiled"] = cm
    return cm


def check_input(machine: MachineDef, word: str) -> None:
    alphabet = set(machine.input_alphabet)
    for i, sym in enumerate(word):
        if sym not in alphabet:
            raise InputAlphabetViolation(i, sym)


class Simulation:
    """A run that can be advanced in increments; used by every bounded query."""

    _MARGIN = 16

    def __init__(self, machine: MachineDef, word: str, advance=None):
        check_input(machine, word)
        self.cm = cm = compile_machine(machine)
        self.machine = machine
        self._advance = advance or kernel.advance
        size = len(word) + 2 * self._MARGIN
        self.tape = bytearray([cm.blank]) * size
        self.offset = self._MARGIN
        for i, sym in enumerate(word):
            self.tape[self.offset + i] = cm.inputs[sym]
        self.pos = self.offset
        self.state = cm.start
        self.steps = 0
        self.events: list[tuple[int, int]] = [(0, cm.start)] if cm.pan[cm.start] else []
        self.halted = self._stuck()

    def _stuck(self) -> bool:
        cm = self.cm
        return cm.nxt[self.state * cm.nsym + self.tape[self.pos]] < 0

    def _grow(self) -> None:
        blank = bytes([self.cm.blank])
        extra = max(len(self.tape), self._MARGIN)
        if self.pos < 0:
            self.tape[0:0] = blank * extra
            self.offset += extra
            self.pos += extra
        else:
            self.tape.extend(blank * extra)

    def advance_to(self, limit: int) -> None:
        """Simulate until halted or until ``steps == limit``."""
        cm = self.cm
        while not self.halted and self.steps < limit:
            self.pos, self.state, self.steps, status = self._advance(
                self.tape, self.pos, self.state, self.steps, limit,
                cm.nxt, cm.wr, cm.mv, cm.pan, cm.nsym, self.events)
            if status == kernel.OUT_OF_TAPE:
                self._grow()
            elif status == kernel.HALTED:
                self.halted = True
        if not self.halted:
            self.halted = self._stuck()

    @property
    def accepted(self) -> bool:
        return self.halted and self.state in self.cm.final

    @property
    def head(self) -> int:
        return self.pos - self.offset

    @property
    def state_name(self) -> str:
        return self.cm.states[self.state]

    def pan_events(self) -> tuple[tuple[int, str], ...]:
        names = self.cm.states
        return tuple((s, names[q]) for s, q in self.events)

    def configuration(self) -> Configuration:
        syms, blank = self.cm.symbols, self.cm.blank
        cells = tuple((i - self.offset, syms[b]) for i, b in enumerate(self.tape) if b != blank)
        return Configuration(cells, self.head, self.state_name, self.steps)

    def verdict(self, limit: int) -> Verdict:
        if self.halted:
            return Verdict.yes(self.steps) if self.accepted else Verdict.no(self.steps)
        return Verdict.unknown(limit)

    def trace(self, budget: int) -> RunTrace:
        if self.halted:
            outcome = Outcome.ACCEPTED if self.accepted else Outcome.REJECTED
            return RunTrace(outcome, self.steps, self.pan_events())
        return RunTrace(Outcome.EXHAUSTED, budget, self.pan_events())


def _run_logged(machine: MachineDef, word: str, budget: int) -> RunTrace:
    config = Configuration.initial(machine, word)
    log = [config]
    events = [(0, config.state)] if config.state in machine.pan_states else []
    while True:
        nxt = step_machine(machine, config)
        if nxt is None:
            outcome = Outcome.ACCEPTED if is_accepting(machine, config) else Outcome.REJECTED
            return RunTrace(outcome, config.step, tuple(events), tuple(log))
        if config.step >= budget:
            return RunTrace(Outcome.EXHAUSTED, budget, tuple(events), tuple(log))
        config = nxt
        log.append(config)
        if config.state in machine.pan_states:
            events.append((config.step, config.state))


def run_machine(machine: MachineDef, word: str, budget: int, log: bool = False) -> RunTrace:
    """Simulate ``machine`` on ``word`` for at most ``budget`` steps.

    Acceptance means halting in a final state.  Step 0 is the initial
    configuration, so a final start state with no applicable rule accepts at 0.
    With ``log=True`` every configuration is recorded (slow path, same result).
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    check_input(machine, word)
    if log:
        return _run_logged(machine, word, budget)
    sim = Simulation(machine, word)
    sim.advance_to(budget)
    return sim.trace(budget)


def accepts_within(target, word: str, budget: int) -> Verdict:
    """Three-valued bounded acceptance for a machine or any acceptor."""
    if isinstance(target, MachineDef):
        return run_machine(target, word, budget).verdict()
    return target.accepts_within(word, budget)
