"""Uniform handles over table machines and native bounded predicates.

Reductions whose outputs quantify over nested simulations are realized as
:class:`NativePredicate` objects; everything that consumes acceptors (searches,
oracle resolution, the CLI) treats both kinds the same way.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .simulate import Simulation, Verdict, run_machine
from .machine import MachineDef


class Session:
    """Resumable evaluation of one acceptor on one word.

    ``advance(limit)`` must be called with non-decreasing limits.  ``steps`` is
    the number of steps simulated so far; ``settled`` means no further
    advancing can change the verdict.
    """

    steps: int = 0
    settled: bool = False

    def advance(self, limit: int) -> Verdict:  # pragma: no cover - interface
        raise NotImplementedError


class TableSession(Session):
    def __init__(self, machine: MachineDef, word: str):
        self.sim = Simulation(machine, word)
        self.settled = self.sim.halted

    def advance(self, limit: int) -> Verdict:
        self.sim.advance_to(limit)
        self.steps = self.sim.steps
        self.settled = self.sim.halted
        return self.sim.verdict(limit)


class RejectSession(Session):
    """Words outside an acceptor's input alphabet are rejected outright."""

    settled = True

    def advance(self, limit: int) -> Verdict:
        return Verdict.no(0)


class CallSession(Session):
    """Fallback for predicates without incremental state: re-evaluate at each limit."""

    def __init__(self, evaluate: Callable[[str, int], Verdict], word: str):
        self.evaluate = evaluate
        self.word = word
        self.last: Optional[Verdict] = None

    def advance(self, limit: int) -> Verdict:
        if self.last is not None and self.last.definitive:
            return self.last
        v = self.evaluate(self.word, limit)
        self.last = v
        if v.definitive:
            self.steps = v.steps
            self.settled = True
        else:
            self.steps = limit
        return v


class Acceptor:
    name: str
    alphabet: tuple[str, ...]

    def accepts_within(self, word: str, budget: int) -> Verdict:  # pragma: no cover - interface
        raise NotImplementedError

    def session(self, word: str) -> Session:
        return CallSession(self.accepts_within, word)

    def in_alphabet(self, word: str) -> bool:
        allowed = set(self.alphabet)
        return all(c in allowed for c in word)

    def to_ref(self) -> dict:  # pragma: no cover - interface
        raise NotImplementedError


class TableMachine(Acceptor):
    def __init__(self, machine: MachineDef):
        self.machine = machine
        self.name = machine.name
        self.alphabet = machine.input_alphabet

    def accepts_within(self, word: str, budget: int) -> Verdict:
        return run_machine(self.machine, word, budget).verdict()

    def session(self, word: str) -> Session:
        if not self.in_alphabet(word):
            return RejectSession()
        return TableSession(self.machine, word)

    def to_ref(self) -> dict:
        from .encoding import encode_machine

        return {"kind": "table", "name": self.name, "encoding": encode_machine(self.machine)}

    def __repr__(self) -> str:
        return f"TableMachine({self.name!r})"


class NativePredicate(Acceptor):
    """A bounded predicate with a declared step-cost model.

    ``evaluate(word, n)`` must return a verdict obeying the same monotonicity
    as a machine run: a definitive answer at ``n`` stays fixed for larger
    budgets and its ``steps`` is the cost at which it was settled.
    """

    def __init__(self, name: str, alphabet: Sequence[str], evaluate: Callable[[str, int], Verdict],
                 params: Optional[Mapping] = None, cost_model: str = "",
                 session_factory: Optional[Callable[[str], Session]] = None,
                 any_word: bool = False):
        self.name = name
        self.any_word = any_word
        self.alphabet = tuple(alphabet)
        self._evaluate = evaluate
        self.params = dict(params or {})
        self.cost_model = cost_model
        self._session_factory = session_factory

    def accepts_within(self, word: str, budget: int) -> Verdict:
        if budget < 0:
            raise ValueError("budget must be non-negative")
        return self._evaluate(word, budget)

    def in_alphabet(self, word: str) -> bool:
        return self.any_word or super().in_alphabet(word)

    def session(self, word: str) -> Session:
        if self._session_factory is not None:
            return self._session_factory(word)
        return CallSession(self._evaluate, word)

    def to_ref(self) -> dict:
        return {"kind": "native", "name": self.name, "params": dict(self.params),
                "cost_model": self.cost_model}

    def __repr__(self) -> str:
        return f"NativePredicate({self.name!r})"


def as_acceptor(obj) -> Acceptor:
    if isinstance(obj, Acceptor):
        return obj
    if isinstance(obj, MachineDef):
        return TableMachine(obj)
    raise TypeError(f"cannot treat {type(obj).__name__} as an acceptor")


@dataclass(frozen=True)
class LanguageFamily:
    """A fixed finite family of known languages, at hierarchy level 1 or 2."""

    members: tuple[Acceptor, ...]
    level: int = 1
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        members = tuple(as_acceptor(m) for m in self.members)
        if not members:
            raise ValueError("a language family needs at least one member")
        if self.level not in (1, 2):
            raise ValueError("family level must be 1 or 2")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "names", tuple(m.name for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Acceptor:
        return self.members[i]

    def nonempty_witnesses(self, words: Iterable[str], budget: int) -> list[str]:
        """One accepted word per member, proving no member is the empty language."""
        pool = list(words)
        found = []
        for m in self.members:
            hit = next((w for w in pool if m.in_alphabet(w) and m.accepts_within(w, budget).is_yes), None)
            if hit is None:
                raise ValueError(f"no accepted word found for family member {m.name!r}")
            found.append(hit)
        return found
