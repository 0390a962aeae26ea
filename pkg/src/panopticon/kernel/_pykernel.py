"""Reference stepping loop over a dense transition table.

The compiled twin in ``_ckernel.pyx`` must stay line-for-line equivalent.
"""

HALTED = 0
LIMIT = 1
OUT_OF_TAPE = 2


def advance(tape, pos, state, steps, limit, nxt, wr, mv, pan, nsym, events):
    """Step until the machine halts, ``steps == limit``, or the head leaves ``tape``.

    ``tape`` is a bytearray of symbol indices and is modified in place.  Every
    step that lands in a pan state appends ``(step, state)`` to ``events``.
    Returns ``(pos, state, steps, status)``.
    """
    n = len(tape)
    while True:
        idx = state * nsym + tape[pos]
        target = nxt[idx]
        if target < 0:
            return pos, state, steps, HALTED
        if steps >= limit:
            return pos, state, steps, LIMIT
        tape[pos] = wr[idx]
        pos += mv[idx]
        state = target
        steps += 1
        if pan[state]:
            events.append((steps, state))
        if pos < 0 or pos >= n:
            return pos, state, steps, OUT_OF_TAPE
