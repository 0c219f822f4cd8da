import random

from hypothesis import strategies as st

from threepage.safety import random_closed_word
from threepage.word import ALPHABET, Word

letters = st.sampled_from(ALPHABET)
words = st.lists(letters, max_size=20).map(Word)


@st.composite
def closed_words(draw, max_len=14, x_rate=0.15):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_len))
    return random_closed_word(random.Random(seed), n, x_rate)


@st.composite
def classical_words(draw, max_len=12):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_len))
    return random_closed_word(random.Random(seed), n, 0.0)
