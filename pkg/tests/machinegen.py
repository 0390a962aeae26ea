"""Random valid machines for roundtrip and differential tests."""
import random

from hypothesis import strategies as st

from panopticon.machine import BLANK, MachineDef, Rule

SYMBOLS = ["1", "0", "a", "x"]


def random_machine(rng: random.Random, max_states: int = 8, max_symbols: int = 4, name: str = "R") -> MachineDef:
    n_states = rng.randint(1, max_states)
    n_sym = rng.randint(1, max_symbols)  # tape symbols including the blank
    states = [f"s{i}" for i in range(n_states)]
    rng.shuffle(states)
    others = SYMBOLS[: n_sym - 1]
    tape = [BLANK] + others
    rng.shuffle(tape)
    n_input = rng.randint(0, len(others))
    inputs = rng.sample(others, n_input)
    final = {s for s in states if rng.random() < 0.3}
    pan = {s for s in states if s not in final and rng.random() < 0.3}
    rules = []
    for q in states:
        for a in tape:
            if rng.random() < 0.6:
                write = a if q in pan else rng.choice(tape)
                rules.append(Rule(q, a, rng.choice(states), write, rng.choice("LR")))
    return MachineDef(name, tuple(states), frozenset(pan), tuple(inputs), tuple(tape), BLANK,
                      rng.choice(states), frozenset(final), tuple(rules))


@st.composite
def machines(draw, max_states: int = 8, max_symbols: int = 4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_machine(random.Random(seed), max_states, max_symbols)


@st.composite
def machine_and_word(draw, max_len: int = 6):
    m = draw(machines())
    if not m.input_alphabet:
        return m, ""
    word = draw(st.text(alphabet=st.sampled_from(list(m.input_alphabet)), max_size=max_len))
    return m, word
