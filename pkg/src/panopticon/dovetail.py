"""Fair enumeration and the dovetailed search for a common accepted word."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Optional, Sequence

from .acceptors import Acceptor, LanguageFamily, as_acceptor
from .simulate import Verdict


def string_by_index(alphabet: Sequence[str], j: int) -> str:
    """The ``j``-th word (1-based) in length-lexicographic order; index 1 is the empty word."""
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    if j < 1:
        raise ValueError("string index must be >= 1")
    k = len(alphabet)
    if k == 1:
        return alphabet[0] * (j - 1)
    n = j - 1
    out = []
    while n > 0:
        n -= 1
        out.append(alphabet[n % k])
        n //= k
    return "".join(reversed(out))


def index_of(alphabet: Sequence[str], word: str) -> int:
    pos = {s: i for i, s in enumerate(alphabet)}
    n = 0
    for c in word:
        n = n * len(alphabet) + pos[c] + 1
    return n + 1


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterator[str]:
    for j in count(1):
        w = string_by_index(alphabet, j)
        if len(w) > max_len:
            return
        yield w


@dataclass(frozen=True, order=True)
class Triple:
    machine_index: int
    string_index: int
    step_bound: int


def triple_sequence(k: int) -> Iterator[Triple]:
    """Every ``(i, j, l)`` with ``1 <= i <= k+1`` and ``j, l >= 1``, by sum then lexicographically."""
    if k < 1:
        raise ValueError("k must be >= 1")
    for total in count(3):
        for i in range(1, min(k + 1, total - 2) + 1):
            for j in range(1, total - i):
                yield Triple(i, j, total - i - j)


@dataclass(frozen=True)
class Witness:
    string: str
    family_index: int  # 0-based position in the family
    steps_target: int
    steps_family: int

    def replay(self, target: Acceptor, family: Sequence[Acceptor]) -> bool:
        member = family[self.family_index]
        return (target.accepts_within(self.string, self.steps_target).is_yes
                and member.accepts_within(self.string, self.steps_family).is_yes)

    def to_json(self) -> dict:
        return {"string": self.string, "family_index": self.family_index,
                "steps_target": self.steps_target, "steps_family": self.steps_family}


@dataclass
class SearchResult:
    """Unpacks as ``verdict, witness``; ``spent`` is the number of simulated steps charged."""

    verdict: Verdict
    witness: Optional[Witness]
    spent: int = 0
    diagnostics: list = field(default_factory=list)

    def __iter__(self):
        yield self.verdict
        yield self.witness

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(),
                "witness": None if self.witness is None else self.witness.to_json(),
                "spent": self.spent, "diagnostics": list(self.diagnostics)}


def merged_alphabet(acceptors: Sequence[Acceptor]) -> list[str]:
    out: list[str] = []
    for a in acceptors:
        for s in a.alphabet:
            if s not in out:
                out.append(s)
    return out


def find_common_element(target, family, budget: int) -> SearchResult:
    """Dovetail ``target`` against every family member looking for a shared accepted word.

    Triple ``(i, j, l)`` runs machine ``i`` (family members first, the target
    last) on the ``j``-th word up to step bound ``l``.  Runs are resumed rather
    than restarted, so a triple is charged only for the steps it adds (at
    least one on the first visit of a pair).  Returns ``Yes`` with a re-verified
    witness, or ``Unknown`` once ``budget`` steps are spent; never ``No``.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    target = as_acceptor(target)
    members = list(family.members if isinstance(family, LanguageFamily) else map(as_acceptor, family))
    if not members:
        raise ValueError("family must be non-empty")
    machines = members + [target]
    k = len(members)
    alphabet = merged_alphabet(machines)
    if not alphabet:
        raise ValueError("acceptors have an empty input alphabet")

    sessions: dict[tuple[int, int], object] = {}
    accepted: dict[int, dict[int, int]] = {}
    spent = 0
    witness = None
    # Triples whose pair has settled are no-ops, so each diagonal of the
    # triple order only walks the unsettled pairs plus the newly reachable
    # ones; visiting order and charges are those of triple_sequence(k).
    live: list[list[int]] = [[] for _ in range(k + 2)]
    started = [0] * (k + 2)
    for total in count(3):
        stop = False
        for i in range(1, min(k + 1, total - 2) + 1):
            jmax = total - i - 1
            keep = []
            pending = [j for j in live[i] if j <= jmax]
            rest = [j for j in live[i] if j > jmax]
            todo = pending + list(range(started[i] + 1, jmax + 1))
            for pos, j in enumerate(todo):
                if spent >= budget:
                    stop = True
                    keep.extend(todo[pos:])
                    break
                l = total - i - j
                sess = sessions.get((i, j))
                first = sess is None
                if first:
                    sess = machines[i - 1].session(string_by_index(alphabet, j))
                    sessions[(i, j)] = sess
                    started[i] = j
                before = sess.steps
                cap = min(l, before + budget - spent)
                verdict = sess.advance(cap)
                spent += max(sess.steps - before, 1 if first else 0)
                if not sess.settled:
                    keep.append(j)
                if verdict.is_yes:
                    hits = accepted.setdefault(j, {})
                    hits[i] = verdict.steps
                    if i == k + 1:
                        fam = sorted(m for m in hits if m <= k)
                        if fam:
                            witness = Witness(string_by_index(alphabet, j), fam[0] - 1, verdict.steps, hits[fam[0]])
                    elif k + 1 in hits:
                        witness = Witness(string_by_index(alphabet, j), i - 1, hits[k + 1], verdict.steps)
                    if witness is not None:
                        stop = True
                        break
                if cap < l and not sess.settled:
                    stop = True
                    keep.extend(todo[pos + 1:])
                    break
            if stop:
                break
            live[i] = keep + rest
        if stop:
            break

    diagnostics = []
    for key in sorted(sessions):
        diagnostics.extend(getattr(sessions[key], "diagnostics", ()))
    if witness is None:
        return SearchResult(Verdict.unknown(spent), None, spent, diagnostics)
    if not witness.replay(target, members):
        raise RuntimeError(f"witness {witness} failed to replay")
    return SearchResult(Verdict.yes(spent), witness, spent, diagnostics)
