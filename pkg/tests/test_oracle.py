import pytest

from panopticon.acceptors import LanguageFamily
from panopticon.encoding import encode_machine
from panopticon.errors import MachineError
from panopticon.oracle import (
    QUERY_MALFORMED,
    ApproxS1,
    FixedTable,
    OracleMachineDef,
    approx_s1_membership,
    approx_s2_membership,
    run_oracle_machine,
)
from panopticon.simulate import Answer, Outcome
from panopticon.zoo import oracle_fixture, query_writer, zoo_machine

FAM1 = LanguageFamily([zoo_machine("MULT2"), zoo_machine("MULT3")])
FAM2 = LanguageFamily([zoo_machine("MULT2")], level=2)
MULT6_CODE = encode_machine(zoo_machine("MULT6"))


def test_oracle_def_checks():
    base = query_writer("X", "01")
    with pytest.raises(MachineError):
        OracleMachineDef(base, "ask", "ask", "no")
    with pytest.raises(MachineError):
        OracleMachineDef(base, "ask", "yes", "nowhere")
    with pytest.raises(MachineError):
        OracleMachineDef(base, "q0", "yes", "no")  # q0 has rules


def test_fixed_table_drives_run():
    odef = oracle_fixture("OQ1")
    trace, log = run_oracle_machine(odef, FixedTable({MULT6_CODE: False}), "", 10_000)
    assert trace.outcome is Outcome.ACCEPTED
    assert [q.query for q in log] == [MULT6_CODE] and log[0].answer == "No"
    assert trace.steps == log[0].step + 1
    trace, _ = run_oracle_machine(odef, FixedTable({MULT6_CODE: True}), "", 10_000)
    assert trace.outcome is Outcome.REJECTED


def test_unresolved_query_is_budget_exhaustion():
    trace, log = run_oracle_machine(oracle_fixture("OQ1"), FixedTable({}), "", 10_000)
    assert trace.outcome is Outcome.EXHAUSTED
    assert log[-1].answer == "Unknown"


def test_query_costs_one_step():
    odef = oracle_fixture("OQ1")
    # budget that reaches the query state but not the answer step
    trace, log = run_oracle_machine(odef, FixedTable({MULT6_CODE: False}), "", len(MULT6_CODE) + 3)
    assert trace.outcome is Outcome.EXHAUSTED and log == []


def test_malformed_query_flagged():
    odef = OracleMachineDef(query_writer("BAD", "0110"), "ask", "yes", "no")
    trace, log = run_oracle_machine(odef, ApproxS1(FAM1, 1000), "", 1000)
    assert log[0].answer == QUERY_MALFORMED
    assert trace.outcome is Outcome.EXHAUSTED


def test_approx_s1_no_with_witness():
    v, w = approx_s1_membership(MULT6_CODE, FAM1, 10**4)
    assert v.answer is Answer.NO and w.string == "111111"


def test_approx_s1_disjoint_is_unknown():
    v, w = approx_s1_membership(encode_machine(zoo_machine("PRIME")), FAM1, 10**4)
    assert v.is_unknown and w is None


def test_approx_s2_no():
    res = approx_s2_membership(oracle_fixture("OQ1"), FAM1, FAM2, 10**6)
    assert res.verdict.is_no
    assert res.witness.string == "1111"


def test_approx_s2_unresolved_queries_in_diagnostics():
    res = approx_s2_membership(oracle_fixture("OQ1"), FAM1, FAM2, 3 * 10**5, sub_budget=0)
    assert res.verdict.is_unknown
    assert res.diagnostics
    assert all(d["query"] == MULT6_CODE for d in res.diagnostics)


def test_family_levels_enforced():
    with pytest.raises(ValueError):
        approx_s2_membership(oracle_fixture("OQ1"), FAM1, FAM1, 100)


def test_resolver_is_memoized():
    r = ApproxS1(FAM1, 10**4)
    assert r.resolve(MULT6_CODE) is r.resolve(MULT6_CODE)
