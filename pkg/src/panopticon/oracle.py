"""Oracle machines and one-sided approximations of the disjointness sets S1 and S2.

``S1`` holds codes of machines whose language misses every member of a fixed
level-1 family; ``S2`` does the same for the languages of ``S1``-oracle
machines against a level-2 family.  Neither is semi-decidable in the
"disjoint" direction, so the approximators only ever return ``No`` (with a
replayable witness) or ``Unknown``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .acceptors import Acceptor, LanguageFamily, Session, TableMachine
from .dovetail import SearchResult, Witness, find_common_element
from .encoding import decode_machine
from .errors import MachineError, MalformedEncoding
from .machine import MachineDef
from .simulate import Answer, Outcome, RunTrace, Simulation, Verdict, check_input

QUERY_MALFORMED = "QueryMalformed"


@dataclass(frozen=True)
class OracleMachineDef:
    base: MachineDef
    query_state: str
    yes_state: str
    no_state: str

    def __post_init__(self):
        special = (self.query_state, self.yes_state, self.no_state)
        if len(set(special)) != 3:
            raise MachineError("query, yes and no states must be distinct")
        for s in special:
            if s not in self.base.states:
                raise MachineError(f"oracle state {s!r} is not a state of the base machine")
        if self.base.rules_from(self.query_state):
            raise MachineError(f"query state {self.query_state!r} must have no rules")

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def special_states(self) -> tuple[str, str, str]:
        return (self.query_state, self.yes_state, self.no_state)


@dataclass(frozen=True)
class Resolution:
    answer: Answer
    witness: Optional[Witness] = None
    malformed: bool = False

    @property
    def label(self) -> str:
        return QUERY_MALFORMED if self.malformed else self.answer.value


class FixedTable:
    """Test-fixture oracle: a literal map from query word to answer; anything else is Unknown."""

    def __init__(self, table: Mapping[str, Union[bool, Answer]]):
        self.table = {}
        for word, ans in table.items():
            if isinstance(ans, bool):
                ans = Answer.YES if ans else Answer.NO
            self.table[word] = ans

    def resolve(self, query: str) -> Resolution:
        return Resolution(self.table.get(query, Answer.UNKNOWN))


class ApproxS1:
    """Resolve "is <T> in S1?" by searching for a common element within ``sub_budget`` steps.

    Finding one proves the answer is No.  Otherwise the query stays
    unresolved; a malformed code is unresolved as well, never No.
    """

    def __init__(self, family1: LanguageFamily, sub_budget: int):
        self.family1 = family1
        self.sub_budget = sub_budget
        self._cache: dict[str, Resolution] = {}

    def resolve(self, query: str) -> Resolution:
        hit = self._cache.get(query)
        if hit is None:
            try:
                verdict, witness = approx_s1_membership(query, self.family1, self.sub_budget)
            except MalformedEncoding:
                hit = Resolution(Answer.UNKNOWN, malformed=True)
            else:
                hit = Resolution(Answer.NO, witness) if verdict.is_no else Resolution(Answer.UNKNOWN)
            self._cache[query] = hit
        return hit


@dataclass(frozen=True)
class QueryRecord:
    step: int
    query: str
    answer: str
    witness: Optional[Witness] = field(default=None, compare=False)

    @property
    def resolved(self) -> bool:
        return self.answer in (Answer.YES.value, Answer.NO.value)

    def to_json(self) -> dict:
        return {"step": self.step, "query": self.query, "answer": self.answer}


class OracleRun:
    """Incremental run of an oracle machine; a query is answered in one step."""

    def __init__(self, odef: OracleMachineDef, resolver, word: str):
        self.odef = odef
        self.resolver = resolver
        self.sim = Simulation(odef.base, word)
        cm = self.sim.cm
        self._q, self._qy, self._qn = (cm.sidx[s] for s in odef.special_states)
        self.queries: list[QueryRecord] = []
        self.aborted = False

    @property
    def steps(self) -> int:
        return self.sim.steps

    @property
    def finished(self) -> bool:
        return self.sim.halted and self.sim.state != self._q

    @property
    def accepted(self) -> bool:
        return self.finished and self.sim.accepted

    def query_word(self) -> str:
        sim = self.sim
        out = []
        i = sim.pos
        while i < len(sim.tape) and sim.tape[i] != sim.cm.blank:
            out.append(sim.cm.symbols[sim.tape[i]])
            i += 1
        return "".join(out)

    def advance_to(self, limit: int) -> None:
        sim = self.sim
        while not self.aborted:
            sim.advance_to(limit)
            if not (sim.halted and sim.state == self._q) or sim.steps >= limit:
                return
            query = self.query_word()
            res = self.resolver.resolve(query)
            self.queries.append(QueryRecord(sim.steps, query, res.label, res.witness))
            if res.answer is Answer.UNKNOWN:
                self.aborted = True
                return
            sim.state = self._qy if res.answer is Answer.YES else self._qn
            sim.steps += 1
            if sim.cm.pan[sim.state]:
                sim.events.append((sim.steps, sim.state))
            sim.halted = sim._stuck()

    def verdict(self, limit: int) -> Verdict:
        if self.finished:
            return Verdict.yes(self.steps) if self.accepted else Verdict.no(self.steps)
        return Verdict.unknown(limit)

    def trace(self, budget: int) -> RunTrace:
        events = self.sim.pan_events()
        if self.finished:
            outcome = Outcome.ACCEPTED if self.accepted else Outcome.REJECTED
            return RunTrace(outcome, self.steps, events)
        return RunTrace(Outcome.EXHAUSTED, budget, events)


def run_oracle_machine(odef: OracleMachineDef, resolver, word: str, budget: int):
    """Return ``(RunTrace, query_log)``.

    An unresolved query ends the run with ``BudgetExhausted`` and is logged
    with answer ``Unknown`` (or ``QueryMalformed``).
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    check_input(odef.base, word)
    run = OracleRun(odef, resolver, word)
    run.advance_to(budget)
    return run.trace(budget), list(run.queries)


class OracleSession(Session):
    def __init__(self, odef: OracleMachineDef, resolver, word: str):
        self.run = OracleRun(odef, resolver, word)
        self.word = word
        self.diagnostics: list[dict] = []
        self._refresh()

    def _refresh(self):
        self.steps = self.run.steps
        self.settled = self.run.finished or self.run.aborted
        if self.run.aborted and not self.diagnostics:
            q = self.run.queries[-1]
            self.diagnostics.append({"word": self.word, "unresolved_query_step": q.step,
                                     "query": q.query, "answer": q.answer})

    def advance(self, limit: int) -> Verdict:
        self.run.advance_to(limit)
        self._refresh()
        return self.run.verdict(limit)


class OracleAcceptor(Acceptor):
    """An oracle machine paired with a resolver, usable wherever an acceptor is."""

    def __init__(self, odef: OracleMachineDef, resolver):
        self.odef = odef
        self.resolver = resolver
        self.name = f"{odef.name}^oracle"
        self.alphabet = odef.base.input_alphabet

    def accepts_within(self, word: str, budget: int) -> Verdict:
        run = OracleRun(self.odef, self.resolver, word)
        run.advance_to(budget)
        return run.verdict(budget)

    def session(self, word: str) -> Session:
        if not self.in_alphabet(word):
            from .acceptors import RejectSession
            return RejectSession()
        return OracleSession(self.odef, self.resolver, word)

    def to_ref(self) -> dict:
        from .encoding import encode_machine
        return {"kind": "oracle", "name": self.odef.name, "encoding": encode_machine(self.odef.base),
                "special_states": list(self.odef.special_states)}


def _check_level(family, level: int) -> None:
    if isinstance(family, LanguageFamily) and family.level != level:
        raise ValueError(f"expected a level-{level} family, got level {family.level}")


def approx_s1_membership(enc: str, family1, budget: int) -> SearchResult:
    """``No`` + witness when the decoded machine shares an accepted word with ``family1``."""
    _check_level(family1, 1)
    machine = decode_machine(enc)
    res = find_common_element(TableMachine(machine), family1, budget)
    if res.verdict.is_yes:
        return SearchResult(Verdict.no(res.spent), res.witness, res.spent, res.diagnostics)
    return res


def approx_s2_membership(odef: OracleMachineDef, family1, family2, budget: int,
                         sub_budget: Optional[int] = None) -> SearchResult:
    """``No`` + witness when the S1-oracle machine accepts a word of some ``family2`` member.

    Queries are resolved by :class:`ApproxS1` with ``sub_budget`` (default:
    ``budget``) and are answered in a single step of the outer run; the outer
    ``budget`` counts oracle-machine steps only.  Runs stopped by an
    unresolved query count as Unknown and show up in ``diagnostics``.
    """
    _check_level(family1, 1)
    _check_level(family2, 2)
    resolver = ApproxS1(family1, budget if sub_budget is None else sub_budget)
    res = find_common_element(OracleAcceptor(odef, resolver), family2, budget)
    if res.verdict.is_yes:
        return SearchResult(Verdict.no(res.spent), res.witness, res.spent, res.diagnostics)
    return res
