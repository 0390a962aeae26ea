# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping loop; see ``_pykernel.advance`` for the contract."""

cdef enum:
    HALTED = 0
    LIMIT = 1
    OUT_OF_TAPE = 2


def advance(unsigned char[:] tape, Py_ssize_t pos, int state, long long steps, long long limit,
            int[:] nxt, const unsigned char[:] wr, const signed char[:] mv,
            const unsigned char[:] pan, int nsym, list events):
    cdef Py_ssize_t n = tape.shape[0]
    cdef Py_ssize_t idx
    cdef int target
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
