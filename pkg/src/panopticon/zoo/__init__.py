"""Catalog of small, validated machines used as fixtures throughout the package.

The arithmetic entries are unary.  ``MULT2`` and ``MULT3`` start at their
second multiple (4 and 6) so that neither meets the primes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional

from ..acceptors import Acceptor, TableMachine
from ..errors import UnknownName
from ..machine import MachineDef
from ..simulate import Answer, accepts_within
from ..textformat import parse_machine, parse_source


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _unary(pred: Callable[[int], Optional[bool]]) -> Callable[[str], Optional[bool]]:
    return lambda w: pred(len(w)) if set(w) <= {"1"} else False


@dataclass(frozen=True)
class ZooEntry:
    name: str
    acceptor: Acceptor
    intended_language: str
    native_oracle: Callable[[str], Optional[bool]] = field(compare=False)
    check_length: int = 24
    source_file: str = ""

    @property
    def machine(self) -> MachineDef:
        return self.acceptor.machine


_CATALOG = {
    "ACCEPT_ALL": ("accept_all.tm", "every word", _unary(lambda n: True), 24),
    "EMPTY": ("empty.tm", "no word (halts at once, non-final)", _unary(lambda n: False), 24),
    "LOOP": ("loop.tm", "no word (never halts)", _unary(lambda n: None), 8),
    "MULT2": ("mult2.tm", "1^n, n in {4, 6, 8, ...}", _unary(lambda n: n >= 4 and n % 2 == 0), 24),
    "MULT3": ("mult3.tm", "1^n, n in {6, 9, 12, ...}", _unary(lambda n: n >= 6 and n % 3 == 0), 24),
    "MULT6": ("mult6.tm", "1^n, n in {6, 12, 18, ...}", _unary(lambda n: n >= 6 and n % 6 == 0), 24),
    "PRIME": ("prime.tm", "1^p for prime p (trial division)", _unary(_is_prime), 60),
    "PANDEMO": ("pandemo.tm", "the word 1, via a pan state", _unary(lambda n: n == 1), 24),
}

ZOO_NAMES = tuple(_CATALOG)


def source_text(filename: str) -> str:
    return resources.files(__package__).joinpath("machines", filename).read_text(encoding="utf-8")


def source_path(filename: str):
    return resources.files(__package__).joinpath("machines", filename)


@lru_cache(maxsize=None)
def zoo_get(name: str) -> ZooEntry:
    try:
        filename, language, oracle, check_len = _CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None
    machine = parse_machine(source_text(filename))
    return ZooEntry(name, TableMachine(machine), language, oracle, check_len, filename)


def zoo_machine(name: str) -> MachineDef:
    return zoo_get(name).machine


@dataclass
class ZooReport:
    name: str
    checked: int
    agreements: int
    disagreements: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)
    unknown_expected: bool = False

    @property
    def ok(self) -> bool:
        return not self.disagreements and (not self.unknowns or self.unknown_expected)

    @property
    def conclusive(self) -> bool:
        """False when some word ran out of budget although the machine should halt on it."""
        return not self.unknowns or self.unknown_expected

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "agreements": self.agreements,
                "disagreements": self.disagreements, "unknowns": self.unknowns,
                "unknown_expected": self.unknown_expected, "ok": self.ok,
                "conclusive": self.conclusive}


def zoo_verify(name: str, max_n: int, budget: int) -> ZooReport:
    """Run the table machine on ``1^n`` for ``n <= max_n`` and compare with the native oracle."""
    entry = zoo_get(name)
    report = ZooReport(name, 0, 0)
    for n in range(max_n + 1):
        word = "1" * n
        expected = entry.native_oracle(word)
        v = accepts_within(entry.acceptor, word, budget)
        report.checked += 1
        if v.answer is Answer.UNKNOWN:
            report.unknowns.append(n)
            if expected is not None:
                continue
            report.agreements += 1
        elif expected is None or v.is_yes != expected:
            report.disagreements.append({"n": n, "expected": expected, "got": v.answer.value})
        else:
            report.agreements += 1
    report.unknown_expected = all(entry.native_oracle("1" * n) is None for n in report.unknowns)
    return report


# Oracle fixtures -----------------------------------------------------------

def query_writer(name: str, query: str, accept_on: str = "no") -> MachineDef:
    """Base table of an oracle machine that writes ``query`` left of its input and asks about it.

    The word is written right-to-left starting two cells left of the input, so
    a blank separates it from the input.  The head then returns to the first
    bit and enters the query state ``ask``.  ``yes`` and ``no`` have no rules;
    the one named by ``accept_on`` is final.
    """
    from ..machine import Rule

    n = len(query)
    write = [f"w{k}" for k in range(1, n + 1)]
    states = ["q0", "gap", *reversed(write), "turn", "ask", "yes", "no"]
    rules = [Rule("q0", s, "gap", s, "L") for s in ("1", "B")]
    first = write[-1] if write else "turn"
    rules.append(Rule("gap", "B", first, "B", "L"))
    for k in range(n, 0, -1):
        after = f"w{k - 1}" if k > 1 else "turn"
        rules.append(Rule(f"w{k}", "B", after, query[k - 1], "L"))
    rules.append(Rule("turn", "B", "ask", "B", "R"))
    return MachineDef(
        name=name, states=tuple(states), pan_states=frozenset(),
        input_alphabet=("1",), tape_alphabet=("1", "B", "0"), blank="B",
        start_state="q0", final_states=frozenset({accept_on}), rules=tuple(rules),
    )


def oracle_fixture(name: str):
    """``OQ1`` asks about the code of MULT6 and accepts from ``q_n``; ``OQ_EMPTY`` never queries."""
    from ..oracle import OracleMachineDef

    if name == "OQ1":
        parsed = parse_source(source_text("oq1.tm"))
    elif name == "OQ_EMPTY":
        parsed = parse_source(source_text("oq_empty.tm"))
    else:
        raise UnknownName(name)
    return OracleMachineDef(parsed.machine, *parsed.oracle)


ORACLE_FIXTURES = ("OQ1", "OQ_EMPTY")
