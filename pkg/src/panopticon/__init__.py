"""Bounded simulation, encoding and reductions for Turing machines with pan states."""
from .acceptors import Acceptor, LanguageFamily, NativePredicate, TableMachine, as_acceptor
from .dovetail import SearchResult, Triple, Witness, find_common_element, index_of, string_by_index, triple_sequence
from .encoding import decode_machine, encode_machine, is_wellformed
from .errors import (
    FinalStateHasRules,
    InputAlphabetViolation,
    MachineError,
    MachineSyntaxError,
    MalformedEncoding,
    PanopticonError,
    UnknownName,
)
from .machine import BLANK, LEFT, RIGHT, Configuration, MachineDef, Rule, canonicalize, check_machine, validate_machine
from .oracle import (
    ApproxS1,
    FixedTable,
    OracleAcceptor,
    OracleMachineDef,
    approx_s1_membership,
    approx_s2_membership,
    run_oracle_machine,
)
from .reductions import (
    alternator,
    build_behavioral_instance,
    const_wrapper,
    defuse,
    graft,
    probe_non_universality,
)
from .simulate import Answer, Outcome, RunTrace, Simulation, Verdict, accepts_within, run_machine
from .textformat import format_machine, parse_machine, parse_source
from .transcript import Transcript, record_transcript, validate_transcript
from .zoo import ZOO_NAMES, oracle_fixture, zoo_get, zoo_machine, zoo_verify

__version__ = "0.1.0"
