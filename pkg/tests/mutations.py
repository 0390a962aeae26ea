"""Single-point corruptions of a recorded transcript, each tagged with the reason it must fail for."""
from dataclasses import replace

from panopticon.machine import Configuration
from panopticon.transcript import (
    BOGUS_EVIDENCE,
    CLAIM_MISMATCH,
    MISSING_EVIDENCE,
    SPURIOUS_EVIDENCE,
    STEP_MISMATCH,
    Evidence,
)


def _configs(t, fn):
    configs = list(t.configs)
    fn(configs)
    return replace(t, configs=tuple(configs))


def _set(i, **kw):
    def fn(configs):
        configs[i] = replace(configs[i], **kw)
    return fn


def _evidence(t, fn):
    (k, ev), = t.evidence.items()
    return replace(t, evidence={k: fn(ev)})


def _retape(c: Configuration) -> Configuration:
    cells = dict(c.tape)
    cells[c.head - 1] = "0" if cells.get(c.head - 1) != "0" else "1"
    return replace(c, tape=tuple(sorted(cells.items())))


def _flip_bit(bits: str) -> str:
    k = len(bits) // 2
    return bits[:k] + ("1" if bits[k] == "0" else "0") + bits[k + 1:]


def _perturb_run(ev: Evidence) -> Evidence:
    run = list(ev.target_run)
    mid = len(run) // 2
    run[mid] = replace(run[mid], head=run[mid].head + 1)
    return replace(ev, target_run=tuple(run))


def _query_index(t) -> int:
    (k,) = t.evidence
    return k


def catalog(t):
    """``[(label, mutated_transcript, expected_reason)]`` for a transcript with one no-answered query."""
    q = _query_index(t)
    no_step = t.configs[q + 1]
    other_state = next(s for s in t.machine.base.states if s != t.configs[5].state)
    muts = [
        ("head moved", _configs(t, _set(5, head=t.configs[5].head + 1)), STEP_MISMATCH),
        ("state swapped", _configs(t, _set(5, state=other_state)), STEP_MISMATCH),
        ("tape cell altered", _configs(t, lambda c: c.__setitem__(5, _retape(c[5]))), STEP_MISMATCH),
        ("step counter skewed", _configs(t, _set(5, step=t.configs[5].step + 1)), STEP_MISMATCH),
        ("configuration deleted", _configs(t, lambda c: c.pop(10)), STEP_MISMATCH),
        ("configuration duplicated", _configs(t, lambda c: c.insert(10, c[10])), STEP_MISMATCH),
        ("configurations swapped", _configs(t, lambda c: c.__setitem__(slice(10, 12), [c[11], c[10]])),
         STEP_MISMATCH),
        ("initial head moved", _configs(t, _set(0, head=1)), STEP_MISMATCH),
        ("input changed", replace(t, input=t.input + "1"), STEP_MISMATCH),
        ("no-answer replaced by yes-answer",
         _configs(t, _set(q + 1, state=t.machine.yes_state)), SPURIOUS_EVIDENCE),
        ("evidence deleted", replace(t, evidence={}), MISSING_EVIDENCE),
        ("witness forged", _evidence(t, lambda ev: replace(ev, witness=ev.witness + "1")), BOGUS_EVIDENCE),
        ("target run truncated", _evidence(t, lambda ev: replace(ev, target_run=ev.target_run[:-1])),
         BOGUS_EVIDENCE),
        ("target run perturbed", _evidence(t, _perturb_run), BOGUS_EVIDENCE),
        ("family index out of range", _evidence(t, lambda ev: replace(ev, family_index=99)), BOGUS_EVIDENCE),
        ("queried code bit flipped", _evidence(t, lambda ev: replace(ev, machine=_flip_bit(ev.machine))),
         BOGUS_EVIDENCE),
        ("family run replaced by target run",
         _evidence(t, lambda ev: replace(ev, family_run=ev.target_run)), BOGUS_EVIDENCE),
        ("extra evidence on an ordinary step",
         replace(t, evidence={**t.evidence, 5: t.evidence[q]}), SPURIOUS_EVIDENCE),
        ("claim flipped", replace(t, claim=not t.claim), CLAIM_MISMATCH),
        ("truncated before the query", replace(t, configs=t.configs[:q], evidence={}), CLAIM_MISMATCH),
    ]
    assert no_step.state == t.machine.no_state
    return muts
