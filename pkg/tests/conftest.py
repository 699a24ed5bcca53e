import random

from hypothesis import strategies as st

from f2aut.words import Letter, Word

letters = st.sampled_from([Letter.a, Letter.A, Letter.b, Letter.B])

words = st.lists(letters, max_size=12).map(Word.from_letters)

nonempty_words = st.lists(letters, min_size=1, max_size=12).map(
    Word.from_letters).filter(lambda w: len(w) > 0)


def random_reduced(rng: random.Random, length: int) -> Word:
    """A uniformly chosen freely reduced word of exactly the given length."""
    if length == 0:
        return Word()
    out = [rng.randrange(4)]
    while len(out) < length:
        c = rng.randrange(4)
        if c != out[-1] ^ 1:
            out.append(c)
    return Word(bytes(out))
