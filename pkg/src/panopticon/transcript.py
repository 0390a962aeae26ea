"""Serialized oracle-machine computations and their validation.

A transcript lists every configuration of an oracle-machine run.  Each step
from the query state to the no-state carries an evidence block: the queried
code, a word, and step-exact accepting runs of both the queried machine and
one level-1 family member on that word.  That block is finite proof that the
queried language meets the family.  Steps to the yes-state carry nothing,
since disjointness has no finite certificate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .acceptors import LanguageFamily, TableMachine
from .encoding import decode_machine, encode_machine
from .errors import MalformedEncoding
from .machine import (
    Configuration,
    MachineDef,
    canonical_state_order,
    canonical_symbol_order,
    is_accepting,
    step_machine,
)
from .oracle import ApproxS1, OracleMachineDef, approx_s1_membership
from .simulate import Answer, run_machine

STEP_MISMATCH = "StepMismatch"
MISSING_EVIDENCE = "MissingEvidence"
BOGUS_EVIDENCE = "BogusEvidence"
SPURIOUS_EVIDENCE = "SpuriousEvidence"
CLAIM_MISMATCH = "ClaimMismatch"
REASONS = (STEP_MISMATCH, MISSING_EVIDENCE, BOGUS_EVIDENCE, SPURIOUS_EVIDENCE, CLAIM_MISMATCH)


@dataclass(frozen=True)
class Evidence:
    machine: str  # code of the queried machine
    witness: str
    target_run: tuple[Configuration, ...]
    family_index: int
    family_run: tuple[Configuration, ...]

    def to_json(self) -> dict:
        return {
            "machine": self.machine,
            "witness": self.witness,
            "target_run": [c.to_json() for c in self.target_run],
            "family_index": self.family_index,
            "family_run": [c.to_json() for c in self.family_run],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Evidence":
        return cls(
            str(data["machine"]),
            str(data["witness"]),
            tuple(Configuration.from_json(c) for c in data["target_run"]),
            int(data["family_index"]),
            tuple(Configuration.from_json(c) for c in data["family_run"]),
        )


@dataclass(frozen=True)
class Transcript:
    machine: OracleMachineDef
    input: str
    configs: tuple[Configuration, ...]
    evidence: Mapping[int, Evidence] = field(default_factory=dict)
    claim: bool = False

    def to_json(self) -> dict:
        base = self.machine.base
        return {
            "machine": {
                "name": base.name,
                "encoding": encode_machine(base),
                "state_names": canonical_state_order(base),
                "symbol_names": canonical_symbol_order(base),
                "state_order": list(base.states),
                "symbol_order": list(base.tape_alphabet),
                "query_state": self.machine.query_state,
                "yes_state": self.machine.yes_state,
                "no_state": self.machine.no_state,
            },
            "input": self.input,
            "configs": [c.to_json() for c in self.configs],
            "evidence": {str(k): self.evidence[k].to_json() for k in sorted(self.evidence)},
            "claim": self.claim,
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), sort_keys=True, **kw)

    @classmethod
    def from_json(cls, data: Mapping) -> "Transcript":
        m = data["machine"]
        base = decode_machine(m["encoding"], name=m["name"],
                              state_names=m["state_names"], symbol_names=m["symbol_names"])
        if sorted(m["state_order"]) != sorted(base.states) or sorted(m["symbol_order"]) != sorted(base.tape_alphabet):
            raise ValueError("state/symbol order does not match the encoded machine")
        base = MachineDef(base.name, tuple(m["state_order"]), base.pan_states, base.input_alphabet,
                          tuple(m["symbol_order"]), base.blank, base.start_state, base.final_states, base.rules)
        odef = OracleMachineDef(base, m["query_state"], m["yes_state"], m["no_state"])
        return cls(
            odef,
            str(data["input"]),
            tuple(Configuration.from_json(c) for c in data["configs"]),
            {int(k): Evidence.from_json(v) for k, v in data["evidence"].items()},
            bool(data["claim"]),
        )

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        return cls.from_json(json.loads(text))


def query_word(config: Configuration, blank: str) -> str:
    """Non-blank symbols from the head cell rightwards."""
    cells = config.cells()
    out = []
    pos = config.head
    while cells.get(pos, blank) != blank:
        out.append(cells[pos])
        pos += 1
    return "".join(out)


def record_transcript(odef: OracleMachineDef, family1: LanguageFamily, word: str, budget: int,
                      sub_budget: Optional[int] = None, resolver=None) -> Transcript:
    """Run ``odef`` step by step and record a transcript with full evidence.

    Queries go to ``resolver`` (default :class:`ApproxS1` over ``family1``).  A
    No answer without a witness, as a fixed table gives, is backed by searching
    for one within ``sub_budget``; failing that raises ``ValueError``.  An
    unresolved query ends the transcript at the query configuration.
    """
    sub = budget if sub_budget is None else sub_budget
    resolver = resolver or ApproxS1(family1, sub)
    base = odef.base
    config = Configuration.initial(base, word)
    configs = [config]
    evidence: dict[int, Evidence] = {}
    while config.step < budget:
        if config.state == odef.query_state:
            query = query_word(config, base.blank)
            res = resolver.resolve(query)
            if res.answer is Answer.UNKNOWN:
                break
            if res.answer is Answer.NO:
                witness = res.witness
                if witness is None:
                    verdict, witness = approx_s1_membership(query, family1, sub)
                    if not verdict.is_no:
                        raise ValueError(f"no evidence found for the No answer at step {config.step}")
                evidence[len(configs) - 1] = _evidence(query, witness, family1)
            nxt_state = odef.yes_state if res.answer is Answer.YES else odef.no_state
            config = Configuration(config.tape, config.head, nxt_state, config.step + 1)
        else:
            nxt = step_machine(base, config)
            if nxt is None:
                break
            config = nxt
        configs.append(config)
    claim = config.state != odef.query_state and is_accepting(base, config)
    return Transcript(odef, word, tuple(configs), evidence, claim)


def _evidence(query: str, witness, family1: LanguageFamily) -> Evidence:
    target = decode_machine(query)
    member = family1[witness.family_index]
    if not isinstance(member, TableMachine):
        raise TypeError("transcript evidence needs table-machine family members")
    t_run = run_machine(target, witness.string, witness.steps_target, log=True)
    f_run = run_machine(member.machine, witness.string, witness.steps_family, log=True)
    return Evidence(query, witness.string, t_run.log, witness.family_index, f_run.log)


@dataclass(frozen=True)
class TranscriptCheck:
    valid: bool
    reason: Optional[str] = None
    index: Optional[int] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"valid": self.valid}
        if not self.valid:
            out.update(reason=self.reason, index=self.index, detail=self.detail)
        return out

    def __str__(self) -> str:
        if self.valid:
            return "Valid"
        where = "" if self.index is None else f"({self.index})"
        return f"Invalid: {self.reason}{where} {self.detail}".rstrip()


VALID = TranscriptCheck(True)


def _invalid(reason: str, index: Optional[int], detail: str = "") -> TranscriptCheck:
    return TranscriptCheck(False, reason, index, detail)


def _accepting_computation(machine: MachineDef, word: str, run: Sequence[Configuration]) -> str:
    """Empty string when ``run`` is a step-exact accepting computation; otherwise why not."""
    if not all(c in machine.input_alphabet for c in word):
        return "witness is not over the machine's input alphabet"
    if not run or run[0] != Configuration.initial(machine, word):
        return "run does not start from the initial configuration"
    for i in range(len(run) - 1):
        if step_machine(machine, run[i]) != run[i + 1]:
            return f"run step {i + 1} does not follow"
    if not is_accepting(machine, run[-1]):
        return "run does not end accepting"
    return ""


def _check_evidence(ev: Evidence, query: str, family1: LanguageFamily) -> str:
    if ev.machine != query:
        return "evidence names a different machine than the query"
    try:
        target = decode_machine(ev.machine)
    except MalformedEncoding as exc:
        return f"queried code is malformed: {exc}"
    why = _accepting_computation(target, ev.witness, ev.target_run)
    if why:
        return f"queried machine: {why}"
    if not 0 <= ev.family_index < len(family1):
        return f"family index {ev.family_index} out of range"
    member = family1[ev.family_index]
    if not isinstance(member, TableMachine):
        return "family member is not a table machine"
    why = _accepting_computation(member.machine, ev.witness, ev.family_run)
    if why:
        return f"family member {ev.family_index}: {why}"
    return ""


def validate_transcript(t: Transcript, family1: LanguageFamily) -> TranscriptCheck:
    """``Valid`` or ``Invalid(reason, index)``; the first defect in step order wins.

    Answers to the yes-state are taken on trust.
    """
    odef, base = t.machine, t.machine.base
    configs = t.configs
    if not configs or not all(c in base.input_alphabet for c in t.input) \
            or configs[0] != Configuration.initial(base, t.input):
        return _invalid(STEP_MISMATCH, 0, "first configuration is not the initial one")
    answered_no = set()
    for i in range(len(configs) - 1):
        cur, nxt = configs[i], configs[i + 1]
        if cur.state == odef.query_state:
            if (nxt.tape, nxt.head, nxt.step) != (cur.tape, cur.head, cur.step + 1) \
                    or nxt.state not in (odef.yes_state, odef.no_state):
                return _invalid(STEP_MISMATCH, i + 1, "query step must only move to the yes/no state")
            if nxt.state == odef.no_state:
                if i not in t.evidence:
                    return _invalid(MISSING_EVIDENCE, i, "no-answer without evidence")
                why = _check_evidence(t.evidence[i], query_word(cur, base.blank), family1)
                if why:
                    return _invalid(BOGUS_EVIDENCE, i, why)
                answered_no.add(i)
            elif i in t.evidence:
                return _invalid(SPURIOUS_EVIDENCE, i, "evidence attached to a yes-answer")
        elif step_machine(base, cur) != nxt:
            return _invalid(STEP_MISMATCH, i + 1, "configuration does not follow by the transition function")
    for k in sorted(t.evidence):
        if k not in answered_no:
            return _invalid(SPURIOUS_EVIDENCE, k, "evidence attached to a non-query step")
    last = configs[-1]
    actual = last.state != odef.query_state and is_accepting(base, last)
    if t.claim != actual:
        return _invalid(CLAIM_MISMATCH, len(configs) - 1,
                        f"claim {'accepting' if t.claim else 'rejecting'} but the run ends otherwise")
    return VALID
