import pytest
from hypothesis import given, settings

from machinegen import machine_and_word
from panopticon.errors import FinalStateHasRules
from panopticon.machine import MachineDef, Rule
from panopticon.reductions import (
    alternator,
    build_behavioral_instance,
    const_wrapper,
    defuse,
    graft,
    probe_non_universality,
)
from panopticon.simulate import Verdict, accepts_within, run_machine
from panopticon.zoo import zoo_machine


def test_defuse_renames_pan_states():
    out = defuse(zoo_machine("PANDEMO"))
    m = out.produced
    assert not m.pan_states and "p_nop" in m.states
    assert out.state_map["p"] == "p_nop"
    assert run_machine(m, "1", 10).pan_events == ()


def test_graft_shape():
    m = graft(zoo_machine("ACCEPT_ALL")).produced
    assert m.pan_states == {"pan_hook"} and m.final_states == {"accept_hook"}
    t = run_machine(m, "", 10)
    assert t.pan_events == ((1, "pan_hook"),) and t.accepted and t.steps == 2


def test_graft_rejects_final_with_rules():
    m = MachineDef("F", ("a",), frozenset(), ("1",), ("B", "1"), "B", "a", frozenset({"a"}),
                   (Rule("a", "1", "a", "1", "R"),))
    with pytest.raises(FinalStateHasRules):
        graft(m)


def test_behavioral_instance_offsets():
    mp, w = build_behavioral_instance(zoo_machine("MULT2"), "1111")
    t = run_machine(mp, w, 100)
    assert t.pan_events == ((6, "pan_hook"),) and t.steps == 7


def _no_final_rules(m):
    return not any(m.rules_from(f) for f in m.final_states)


@settings(max_examples=150, deadline=None)
@given(machine_and_word())
def test_behavioral_biconditional_random(mw):
    m, w = mw
    if not _no_final_rules(m):
        return
    mp, _ = build_behavioral_instance(m, w)
    for n in (0, 3, 50):
        # the hook fires one step after acceptance, so n + 1 is the sharp budget
        assert bool(run_machine(mp, w, n + 1).pan_events) == accepts_within(m, w, n).is_yes
        assert run_machine(mp, w, n + 2).accepted == accepts_within(m, w, n).is_yes


@settings(max_examples=150, deadline=None)
@given(machine_and_word())
def test_defuse_preserves_verdicts_random(mw):
    m, w = mw
    d = defuse(m).produced
    assert accepts_within(d, w, 60) == accepts_within(m, w, 60)
    assert run_machine(d, w, 60).pan_events == ()


def test_const_wrapper_ignores_probe():
    wr = const_wrapper(zoo_machine("MULT2"), "1111")
    for probe in ("", "1", "0101", "zz"):
        assert wr.accepts_within(probe, 10) == Verdict.yes(5)
        assert wr.accepts_within(probe, 3) == Verdict.unknown(3)
    assert const_wrapper(zoo_machine("ACCEPT_ALL"), "").accepts_within("111", 0) == Verdict.yes(0)
    assert const_wrapper(zoo_machine("LOOP"), "").accepts_within("1", 5000).is_unknown


def test_probe_non_universality():
    res = probe_non_universality(zoo_machine("MULT2"), 4, 100)
    assert res.verdict.is_yes and res.counterexample == ""
    res = probe_non_universality(zoo_machine("ACCEPT_ALL"), 4, 100)
    assert res.verdict.is_unknown and res.counterexample is None
    res = probe_non_universality(zoo_machine("LOOP"), 2, 100)
    assert res.verdict.is_unknown and res.timed_out == ("", "1", "11")


def test_alternator_tick_accounting():
    alt = alternator(zoo_machine("MULT2"), zoo_machine("LOOP"), "")
    assert alt.accepts_within("1111", 9) == Verdict.yes(9)
    assert alt.accepts_within("1111", 8).is_unknown
    alt = alternator(zoo_machine("EMPTY"), zoo_machine("ACCEPT_ALL"), "")
    assert alt.accepts_within("111", 0) == Verdict.yes(0)


def test_alternator_rejects_when_both_tracks_reject():
    alt = alternator(zoo_machine("MULT2"), zoo_machine("EMPTY"), "")
    assert alt.accepts_within("111", 100) == Verdict.no(5)
