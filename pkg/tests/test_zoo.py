import pytest

from panopticon.errors import UnknownName
from panopticon.zoo import ZOO_NAMES, query_writer, zoo_get, zoo_verify


@pytest.mark.parametrize("name", [n for n in ZOO_NAMES if n != "PRIME"])
def test_zoo_agrees_with_native(name):
    report = zoo_verify(name, zoo_get(name).check_length, 10**4)
    assert report.ok, report.to_json()


def test_prime_agrees_to_sixty():
    report = zoo_verify("PRIME", 60, 10**6)
    assert report.ok and not report.unknowns


def test_loop_unknowns_expected():
    report = zoo_verify("LOOP", 4, 100)
    assert report.unknowns == [0, 1, 2, 3, 4] and report.unknown_expected and report.ok


def test_unknown_name():
    with pytest.raises(UnknownName):
        zoo_get("NOPE")


def test_example_families_are_disjoint_from_primes():
    prime = zoo_get("PRIME").native_oracle
    for name in ("MULT2", "MULT3"):
        member = zoo_get(name).native_oracle
        assert not any(prime("1" * n) and member("1" * n) for n in range(201))


def test_query_writer_layout():
    m = query_writer("Q", "101")
    assert m.start_state == "q0" and "ask" in m.states and not m.rules_from("ask")
