"""Machine transformations behind the undecidability reductions.

``defuse`` and ``graft`` are syntactic rewrites of transition tables.  The
wrapper, prober and alternator quantify over nested simulations, so they are
realized as bounded native predicates with explicit step-cost models.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .acceptors import NativePredicate, Session
from .dovetail import words_up_to
from .encoding import encode_machine
from .errors import FinalStateHasRules
from .machine import RIGHT, MachineDef, Rule, check_machine
from .simulate import Simulation, Verdict, accepts_within, check_input


@dataclass(frozen=True)
class ReductionOutput:
    produced: object
    state_map: Mapping[str, str] = field(default_factory=dict)
    notes: Mapping[str, str] = field(default_factory=dict)


def _fresh(base: str, taken: set[str]) -> str:
    name, n = base, 1
    while name in taken:
        n += 1
        name = f"{base}{n}"
    taken.add(name)
    return name


def defuse(machine: MachineDef) -> ReductionOutput:
    """Replace every pan state by a fresh, ordinary state with the same rules."""
    if not machine.pan_states:
        return ReductionOutput(machine, {s: s for s in machine.states}, {})
    taken = set(machine.states)
    smap = {}
    notes = {}
    for s in machine.states:
        if s in machine.pan_states:
            smap[s] = _fresh(f"{s}_nop", taken)
            notes[smap[s]] = f"no-op stand-in for pan state {s}"
        else:
            smap[s] = s
    m = smap.__getitem__
    produced = MachineDef(
        name=f"{machine.name}_defused",
        states=tuple(m(s) for s in machine.states),
        pan_states=frozenset(),
        input_alphabet=machine.input_alphabet,
        tape_alphabet=machine.tape_alphabet,
        blank=machine.blank,
        start_state=m(machine.start_state),
        final_states=frozenset(m(s) for s in machine.final_states),
        rules=tuple(Rule(m(r.state), r.read, m(r.next_state), r.write, r.move) for r in machine.rules),
    )
    return ReductionOutput(check_machine(produced), smap, notes)


def graft(machine: MachineDef) -> ReductionOutput:
    """Route every acceptance through one new pan state into one new final state.

    Final states must be halting points (no outgoing rules).  The output's
    only pan state is the new hook, so run ``defuse`` first when the source has
    pan states of its own.
    """
    for f in machine.states:
        if f in machine.final_states and machine.rules_from(f):
            raise FinalStateHasRules(f)
    taken = set(machine.states)
    hook = _fresh("pan_hook", taken)
    done = _fresh("accept_hook", taken)
    rules = list(machine.rules)
    for f in machine.states:
        if f in machine.final_states:
            rules += [Rule(f, x, hook, x, RIGHT) for x in machine.tape_alphabet]
    rules += [Rule(hook, x, done, x, RIGHT) for x in machine.tape_alphabet]
    produced = replace(
        machine,
        name=f"{machine.name}_grafted",
        states=machine.states + (hook, done),
        pan_states=frozenset({hook}),
        final_states=frozenset({done}),
        rules=tuple(rules),
    )
    notes = {hook: "pan state entered from every original final state",
             done: "sole final state, reached one step after the pan hook"}
    return ReductionOutput(check_machine(produced), {s: s for s in machine.states}, notes)


def build_behavioral_instance(machine: MachineDef, word: str) -> tuple[MachineDef, str]:
    """``(M', w)`` where ``M'`` shows pan behaviour on ``w`` exactly when ``M`` accepts ``w``.

    Budget accounting: ``M`` accepting at step ``s`` puts ``M'`` in its pan
    state at step ``s + 1`` and accepting at ``s + 2``.
    """
    check_input(machine, word)
    return graft(defuse(machine).produced).produced, word


class _SharedRun:
    """One simulation that answers bounded verdict queries at any budget."""

    def __init__(self, machine: MachineDef, word: str):
        self.sim = None
        if all(c in machine.input_alphabet for c in word):
            self.sim = Simulation(machine, word)

    def verdict_at(self, n: int) -> Verdict:
        sim = self.sim
        if sim is None:
            return Verdict.no(0)
        if not sim.halted and sim.steps < n:
            sim.advance_to(n)
        if sim.halted and sim.steps <= n:
            return sim.verdict(n)
        return Verdict.unknown(n)

    @property
    def steps(self) -> int:
        return 0 if self.sim is None else self.sim.steps


class _WrapperSession(Session):
    def __init__(self, run: _SharedRun):
        self.run = run

    def advance(self, limit: int) -> Verdict:
        v = self.run.verdict_at(limit)
        self.steps = v.steps if v.definitive else limit
        self.settled = v.definitive
        return v


def const_wrapper(machine: MachineDef, word: str) -> NativePredicate:
    """Acceptor that ignores its probe and runs ``machine`` on ``word``.

    Its language is therefore either empty or everything.  Cost model: one
    unit per simulated step of ``machine`` on ``word``.
    """
    check_input(machine, word)
    run = _SharedRun(machine, word)
    wrapper = NativePredicate(
        name=f"const[{machine.name},{word!r}]",
        alphabet=machine.input_alphabet,
        evaluate=lambda probe, n: run.verdict_at(n),
        params={"machine": encode_machine(machine), "input": word},
        cost_model="steps of the wrapped machine on the fixed input",
        session_factory=lambda probe: _WrapperSession(run),
        any_word=True,
    )
    return wrapper


@dataclass(frozen=True)
class ProbeResult:
    verdict: Verdict
    counterexample: Optional[str]
    timed_out: tuple[str, ...] = ()

    def __iter__(self):
        yield self.verdict
        yield self.counterexample


def probe_non_universality(machine: MachineDef, max_len: int, budget: int) -> ProbeResult:
    """Look for a word of length ``<= max_len`` that ``machine`` halts on without accepting.

    A find settles ``L(M) != Sigma*`` (``Yes``).  Words that merely run out of
    budget are reported in ``timed_out`` and never count as counterexamples.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    timed_out = []
    words = words_up_to(machine.input_alphabet, max_len) if machine.input_alphabet else iter([""])
    for w in words:
        v = accepts_within(machine, w, budget)
        if v.is_no:
            return ProbeResult(Verdict.yes(v.steps), w, tuple(timed_out))
        if v.is_unknown:
            timed_out.append(w)
    return ProbeResult(Verdict.unknown(budget), None, tuple(timed_out))


def _interleave(main: Verdict, stub: Verdict, n: int) -> Verdict:
    # main's step s lands on tick 2s-1 (tick 0 for s = 0); the stub's on tick 2s
    t_main = None if main.steps is None else (0 if main.steps == 0 else 2 * main.steps - 1)
    t_stub = None if stub.steps is None else 2 * stub.steps
    yes = [t for v, t in ((main, t_main), (stub, t_stub)) if v.is_yes]
    if yes:
        return Verdict.yes(min(yes))
    if main.is_no and stub.is_no:
        return Verdict.no(max(t_main, t_stub))
    return Verdict.unknown(n)


class _AlternatorSession(Session):
    def __init__(self, main: _SharedRun, stub: _SharedRun):
        self.main = main
        self.stub = stub

    def advance(self, limit: int) -> Verdict:
        v = _interleave(self.main.verdict_at((limit + 1) // 2), self.stub.verdict_at(limit // 2), limit)
        self.steps = v.steps if v.definitive else limit
        self.settled = v.definitive
        return v


def alternator(machine: MachineDef, stub: MachineDef, stub_input: str) -> NativePredicate:
    """Acceptor that interleaves ``machine`` on the probe with ``stub`` on a fixed input.

    Odd ticks advance ``machine`` and even ticks advance ``stub``; the probe is
    accepted as soon as either track accepts, so a budget of ``2n`` ticks
    covers ``n`` steps of each.  It rejects only once both tracks have halted
    without accepting.
    """
    check_input(stub, stub_input)
    stub_run = _SharedRun(stub, stub_input)

    def evaluate(probe: str, n: int) -> Verdict:
        main = _SharedRun(machine, probe)
        return _interleave(main.verdict_at((n + 1) // 2), stub_run.verdict_at(n // 2), n)

    return NativePredicate(
        name=f"alt[{machine.name},{stub.name},{stub_input!r}]",
        alphabet=machine.input_alphabet,
        evaluate=evaluate,
        params={"machine": encode_machine(machine), "stub": encode_machine(stub), "stub_input": stub_input},
        cost_model="ticks; each tick is one step of one track",
        session_factory=lambda probe: _AlternatorSession(_SharedRun(machine, probe), stub_run),
    )
