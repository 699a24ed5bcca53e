"""Words and cyclic words over the rank-2 free group on {a, b}.

Text format: lowercase ``a``/``b`` are the generators, uppercase ``A``/``B``
their inverses, ``1`` is the identity, whitespace is ignored. Internally a
word is a freely reduced byte string with letter codes a=0, A=1, b=2, B=3;
``code ^ 1`` is the inverse letter and byte order equals the canonical
letter order a < A < b < B.

Word values are immutable. CyclicWord stores the canonical representative
of a conjugacy class: cyclically reduced, rotated to the lexicographically
least rotation under the canonical letter order.
"""

from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Tuple

from f2aut import kernel


class ParseError(ValueError):
    """Raised for malformed word text; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at index {position}")
        self.position = position


class Letter(IntEnum):
    """A signed generator. Member names match the text format."""

    a = 0
    A = 1
    b = 2
    B = 3

    @property
    def generator(self) -> str:
        """The unsigned generator name, "a" or "b"."""
        return "a" if self < 2 else "b"

    @property
    def sign(self) -> int:
        """+1 for a generator, -1 for an inverse letter."""
        return -1 if self & 1 else 1

    def inverse(self) -> "Letter":
        return Letter(self ^ 1)

    @classmethod
    def from_char(cls, ch: str) -> "Letter":
        try:
            return cls[ch]
        except KeyError:
            raise ValueError(f"not a letter: {ch!r}") from None

    def __str__(self) -> str:
        return self.name


_LETTER_CHARS = "aAbB"


class Word:
    """A freely reduced word. The empty word is the identity.

    Construct via :func:`parse_word`, :meth:`from_letters`, or the module
    constants; the raw constructor trusts its input to be reduced.
    """

    __slots__ = ("data",)

    def __init__(self, data: bytes = b""):
        self.data = data

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        return cls(kernel.free_reduce(bytes(letters)))

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(c) for c in self.data)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.data == other.data

    def __hash__(self) -> int:
        return hash((Word, self.data))

    def __mul__(self, other: "Word") -> "Word":
        return Word(kernel.concat_reduce(self.data, other.data))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = identity
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "Word":
        return Word(kernel.invert_bytes(self.data))

    def is_identity(self) -> bool:
        return not self.data

    def render(self) -> str:
        """Canonical compact text; "1" for the identity."""
        if not self.data:
            return "1"
        return "".join(_LETTER_CHARS[c] for c in self.data)

    def __repr__(self) -> str:
        return f"Word({self.render()!r})"


class CyclicWord:
    """The canonical representative of a conjugacy class.

    Stored cyclically reduced and rotated to the least rotation, so equal
    cyclic words compare equal as values.
    """

    __slots__ = ("data",)

    def __init__(self, data: bytes = b""):
        self.data = data

    @classmethod
    def from_word(cls, w: Word) -> "CyclicWord":
        core, _ = kernel.cyclic_trim(w.data)
        return cls(kernel.least_rotation(core))

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(c) for c in self.data)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicWord) and self.data == other.data

    def __hash__(self) -> int:
        return hash((CyclicWord, self.data))

    def as_word(self) -> Word:
        """The canonical rotation read as a plain word."""
        return Word(self.data)

    def render(self) -> str:
        if not self.data:
            return "1"
        return "".join(_LETTER_CHARS[c] for c in self.data)

    def __repr__(self) -> str:
        return f"CyclicWord({self.render()!r})"


class AbelianImage(NamedTuple):
    """Exponent sums of a word: the image in Z x Z."""

    exp_a: int
    exp_b: int


identity = Word()


def parse_word(text: str) -> Word:
    """Parse word text, freely reducing.

    >>> parse_word("abA").render()
    'abA'
    >>> parse_word("a bA B").render()
    'abAB'
    >>> parse_word("1").render()
    '1'
    """
    codes = bytearray()
    saw_one = False
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch == "1":
            if codes or saw_one:
                raise ParseError(f"unexpected character {ch!r}", pos)
            saw_one = True
            continue
        if saw_one:
            raise ParseError(f"unexpected character {ch!r}", pos)
        idx = _LETTER_CHARS.find(ch)
        if idx < 0:
            raise ParseError(f"unexpected character {ch!r}", pos)
        codes.append(idx)
    return Word(kernel.free_reduce(bytes(codes)))


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Freely reduce a letter sequence to a Word."""
    return Word.from_letters(letters)


def cyclic_reduce(w: Word) -> Tuple[CyclicWord, Word]:
    """Split off the conjugator: w = c * core * c^-1.

    Returns the canonical cyclic word of the core and the conjugator c.
    """
    core, conj = kernel.cyclic_trim(w.data)
    return CyclicWord(kernel.least_rotation(core)), Word(conj)


def cyclic_length(w) -> int:
    """Length of the cyclic reduction (the conjugacy-class length)."""
    if isinstance(w, CyclicWord):
        return len(w.data)
    core, _ = kernel.cyclic_trim(w.data)
    return len(core)


def count_letter(w: CyclicWord, x: Letter) -> int:
    """Occurrences of x and x^-1 together in the cyclic word."""
    pair = {int(x), int(x) ^ 1}
    return sum(1 for c in w.data if c in pair)


def count_pair(w: CyclicWord, x: Letter, y: Letter) -> int:
    """Occurrences of the length-2 subwords xy and y^-1 x^-1, cyclically.

    Adjacency wraps around, so a cyclic word of length 1 has one adjacent
    pair (its letter followed by itself).
    """
    data = w.data
    n = len(data)
    if n == 0:
        return 0
    fwd = (int(x), int(y))
    rev = (int(y) ^ 1, int(x) ^ 1)
    total = 0
    for i in range(n):
        pair = (data[i], data[(i + 1) % n])
        if pair == fwd or pair == rev:
            total += 1
    return total


def is_positive(w: CyclicWord) -> bool:
    """True when no letter is an inverse letter. The empty word is positive."""
    return all(not (c & 1) for c in w.data)


def abelianize(w) -> AbelianImage:
    """Exponent sums (conjugation-invariant, so CyclicWord is accepted too)."""
    exp_a = exp_b = 0
    for c in w.data:
        if c < 2:
            exp_a += 1 if c == 0 else -1
        else:
            exp_b += 1 if c == 2 else -1
    return AbelianImage(exp_a, exp_b)


def conjugate(w: Word, c: Word) -> Word:
    """The freely reduced form of c * w * c^-1."""
    return Word(
        kernel.concat_reduce(
            kernel.concat_reduce(c.data, w.data), kernel.invert_bytes(c.data)
        )
    )
