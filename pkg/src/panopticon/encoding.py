"""Binary machine codes.

Layout (indices are 1-based, a number ``i`` is written as ``0^i``)::

    0^|Q| 1 0^|Sigma| 1 0^|Gamma| 111 <pan> 111 <final> 111 <rules>

``<pan>`` and ``<final>`` list state indices joined by ``1``; every rule
``(q_i, X_j) -> (q_k, X_l, D_m)`` is ``0^i 1 0^j 1 0^k 1 0^l 1 0^m`` and rules are
joined by ``11``.  Indices follow the canonical assignment: start state = 1,
blank = 1, input symbols next, L = 1, R = 2.  Sets and rules are emitted in
ascending index order, which makes the code a canonical form.
"""
from __future__ import annotations

from typing import Sequence

from .errors import MalformedEncoding
from .machine import (
    LEFT,
    RIGHT,
    MachineDef,
    Rule,
    canonical_state_name,
    canonical_state_order,
    canonical_symbol_name,
    canonical_symbol_order,
    validate_machine,
)

_MOVES = {LEFT: 1, RIGHT: 2}


def _unary(n: int) -> str:
    return "0" * n


def encode_machine(machine: MachineDef) -> str:
    states = canonical_state_order(machine)
    symbols = canonical_symbol_order(machine)
    sidx = {s: i for i, s in enumerate(states, 1)}
    yidx = {s: i for i, s in enumerate(symbols, 1)}

    def index_list(group) -> str:
        return "1".join(_unary(i) for i in sorted(sidx[s] for s in group))

    rules = sorted(
        (sidx[r.state], yidx[r.read], sidx[r.next_state], yidx[r.write], _MOVES[r.move])
        for r in machine.rules
    )
    rule_block = "11".join("1".join(_unary(x) for x in rule) for rule in rules)
    return (
        _unary(len(states)) + "1" + _unary(len(machine.input_alphabet)) + "1"
        + _unary(len(symbols)) + "111"
        + index_list(machine.pan_states) + "111"
        + index_list(machine.final_states) + "111"
        + rule_block
    )


class _Reader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def fail(self, message: str, offset: int | None = None):
        raise MalformedEncoding(self.pos if offset is None else offset, message)

    def zeros(self, low: int = 0, high: int | None = None, what: str = "count") -> int:
        start = self.pos
        while self.pos < len(self.bits) and self.bits[self.pos] == "0":
            self.pos += 1
        n = self.pos - start
        if n < low or (high is not None and n > high):
            self.fail(f"{what} {n} out of range", start)
        return n

    def expect(self, literal: str):
        if self.bits[self.pos:self.pos + len(literal)] != literal:
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def peek(self, n: int = 1) -> str:
        return self.bits[self.pos:self.pos + n]

    def index_list(self, high: int) -> list[int]:
        out: list[int] = []
        if self.peek() == "1":
            self.expect("111")
            return out
        while True:
            out.append(self.zeros(1, high, "state index"))
            if self.peek(3) == "111":
                self.pos += 3
                return out
            self.expect("1")
            if self.peek() != "0":
                self.fail("expected an index after separator")

    def at_end(self) -> bool:
        return self.pos >= len(self.bits)


def decode_machine(bits: str, name: str = "decoded",
                   state_names: Sequence[str] | None = None,
                   symbol_names: Sequence[str] | None = None) -> MachineDef:
    """Inverse of :func:`encode_machine`.

    Anything outside the encoder's image (stray characters, out-of-range
    indices, non-canonical ordering, invariant violations) raises
    :class:`MalformedEncoding` with the offending bit offset.  Optional name
    lists supply labels in canonical index order; the defaults are ``q1..qn``
    and the canonical symbol names.
    """
    for pos, ch in enumerate(bits):
        if ch not in "01":
            raise MalformedEncoding(pos, f"unexpected character {ch!r}")
    rd = _Reader(bits)
    nq = rd.zeros(1, what="state count")
    rd.expect("1")
    ns = rd.zeros(what="input alphabet size")
    rd.expect("1")
    ng = rd.zeros(ns + 1, what="tape alphabet size")
    rd.expect("111")

    pan_at = rd.pos
    pan = rd.index_list(nq)
    final_at = rd.pos
    final = rd.index_list(nq)
    for group, where in ((pan, pan_at), (final, final_at)):
        if any(a >= b for a, b in zip(group, group[1:])):
            raise MalformedEncoding(where, "indices not strictly increasing")

    rules: list[tuple[int, int, int, int, int]] = []
    rule_offsets: list[int] = []
    while not rd.at_end():
        if rules:
            rd.expect("11")
        rule_offsets.append(rd.pos)
        i = rd.zeros(1, nq, "source state")
        rd.expect("1")
        j = rd.zeros(1, ng, "read symbol")
        rd.expect("1")
        k = rd.zeros(1, nq, "target state")
        rd.expect("1")
        l = rd.zeros(1, ng, "written symbol")
        rd.expect("1")
        m = rd.zeros(1, 2, "direction")
        rules.append((i, j, k, l, m))
    for n, (a, b) in enumerate(zip(rules, rules[1:]), 1):
        if a[:2] >= b[:2]:
            raise MalformedEncoding(rule_offsets[n], "rules not in strictly increasing key order")

    snames = list(state_names) if state_names is not None else [canonical_state_name(i) for i in range(1, nq + 1)]
    ynames = list(symbol_names) if symbol_names is not None else [canonical_symbol_name(i) for i in range(1, ng + 1)]
    if len(snames) != nq or len(ynames) != ng:
        raise ValueError("name lists do not match the encoded alphabet sizes")
    st = lambda i: snames[i - 1]
    sy = lambda j: ynames[j - 1]
    machine = MachineDef(
        name=name,
        states=tuple(snames),
        pan_states=frozenset(st(i) for i in pan),
        input_alphabet=tuple(ynames[1:ns + 1]),
        tape_alphabet=tuple(ynames),
        blank=ynames[0],
        start_state=snames[0],
        final_states=frozenset(st(i) for i in final),
        rules=tuple(Rule(st(i), sy(j), st(k), sy(l), "L" if m == 1 else "R") for i, j, k, l, m in rules),
    )
    problems = validate_machine(machine)
    if problems:
        kind = problems[0].kind
        where = pan_at if kind == "PanFinalOverlap" else (rule_offsets[0] if rule_offsets else 0)
        if kind == "PanWritesTape":
            bad = problems[0].subject
            for off, (i, j, *_rest) in zip(rule_offsets, rules):
                if (st(i), sy(j)) == tuple(bad):
                    where = off
                    break
        raise MalformedEncoding(where, problems[0].message)
    return machine


def is_wellformed(bits: str) -> bool:
    try:
        decode_machine(bits)
    except MalformedEncoding:
        return False
    return True
