"""Whitehead automorphisms of the rank-2 free group.

Two flavours exist: type-1 maps permute the four letters (a signed
permutation of the generators), type-2 maps multiply selected letters by a
fixed multiplier letter. Both lower to a plain :class:`Automorphism`, which
stores the images of the generators extensionally so that equality and
deduplication are cheap.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, Optional, Tuple

from . import kernel
from .words import CyclicWord, Letter, ParseError, Word, count_letter, count_pair, parse_word


class InvalidAutomorphismError(ValueError):
    """Raised when a pair of image words does not define an automorphism."""


def _image_tables(image_a: bytes, image_b: bytes) -> Tuple[bytes, bytes, bytes, bytes]:
    return (
        image_a,
        kernel.invert_bytes(image_a),
        image_b,
        kernel.invert_bytes(image_b),
    )


class Automorphism:
    """An automorphism of F2 given by the images of the generators.

    Direct construction validates the pair by reducing it to a basis with
    bounded Nielsen moves (and recovers the inverse images on the way).
    Internal callers that already know the inverse pass it to skip the
    search.
    """

    __slots__ = ("image_of_a", "image_of_b", "_inv_a", "_inv_b")

    def __init__(
        self,
        image_of_a: Word,
        image_of_b: Word,
        _inverse_pair: Optional[Tuple[Word, Word]] = None,
    ):
        self.image_of_a = image_of_a
        self.image_of_b = image_of_b
        if _inverse_pair is None:
            _inverse_pair = _nielsen_inverse(image_of_a, image_of_b)
        self._inv_a, self._inv_b = _inverse_pair

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return (
            self.image_of_a == other.image_of_a
            and self.image_of_b == other.image_of_b
        )

    def __hash__(self) -> int:
        return hash((self.image_of_a.data, self.image_of_b.data))

    def is_identity(self) -> bool:
        return self.image_of_a.data == b"\x00" and self.image_of_b.data == b"\x02"

    def render(self) -> str:
        return "a -> %s; b -> %s" % (self.image_of_a.render(), self.image_of_b.render())

    def __repr__(self) -> str:
        return "Automorphism(%r, %r)" % (self.image_of_a.render(), self.image_of_b.render())


def _trusted(image_a: bytes, image_b: bytes, inv_a: bytes, inv_b: bytes) -> Automorphism:
    return Automorphism(
        Word(image_a), Word(image_b), (Word(inv_a), Word(inv_b))
    )


class WhiteheadW1:
    """Letter-permutation map: sends a to one letter, b to another axis."""

    __slots__ = ("image_of_a", "image_of_b")

    def __init__(self, image_of_a: Letter, image_of_b: Letter):
        if image_of_a.generator == image_of_b.generator:
            raise InvalidAutomorphismError(
                "letter images %s, %s collapse onto one generator"
                % (image_of_a, image_of_b)
            )
        self.image_of_a = image_of_a
        self.image_of_b = image_of_b

    def to_automorphism(self) -> Automorphism:
        pa, pb = int(self.image_of_a), int(self.image_of_b)
        # The inverse permutation sends each image letter back to its source.
        table = {pa: 0, pa ^ 1: 1, pb: 2, pb ^ 1: 3}
        return _trusted(
            bytes((pa,)), bytes((pb,)), bytes((table[0],)), bytes((table[2],))
        )

    def __repr__(self) -> str:
        return "WhiteheadW1(%s, %s)" % (self.image_of_a, self.image_of_b)


class WhiteheadW2:
    """Multiplier map (S, x): letters in S pick up x on the right.

    A letter c maps to cx when only c lies in S, to x^-1 c when only c^-1
    does, and to the conjugate x^-1 c x when both do. The multiplier and its
    inverse may not appear in S.
    """

    __slots__ = ("multiplier", "set_S")

    def __init__(self, multiplier: Letter, set_S: Iterable[Letter]):
        s = frozenset(Letter(x) for x in set_S)
        if multiplier in s or multiplier.inverse() in s:
            raise InvalidAutomorphismError(
                "multiplier %s or its inverse appears in S" % multiplier
            )
        self.multiplier = Letter(multiplier)
        self.set_S = s

    def _letter_image(self, c: Letter) -> bytes:
        x = int(self.multiplier)
        fwd = c in self.set_S
        rev = c.inverse() in self.set_S
        if fwd and rev:
            return bytes((x ^ 1, int(c), x))
        if fwd:
            return bytes((int(c), x))
        if rev:
            return bytes((x ^ 1, int(c)))
        return bytes((int(c),))

    def to_automorphism(self) -> Automorphism:
        ia = self._letter_image(Letter.a)
        ib = self._letter_image(Letter.b)
        inverse_twin = WhiteheadW2(self.multiplier.inverse(), self.set_S)
        return Automorphism(
            Word(ia),
            Word(ib),
            (
                Word(inverse_twin._letter_image(Letter.a)),
                Word(inverse_twin._letter_image(Letter.b)),
            ),
        )

    def __repr__(self) -> str:
        members = ",".join(str(x) for x in sorted(self.set_S))
        return "WhiteheadW2(%s, {%s})" % (self.multiplier, members)


def apply(f: Automorphism, w: Word) -> Word:
    """Image of w under f, freely reduced."""
    return Word(kernel.apply_mapped(w.data, *_image_tables(f.image_of_a.data, f.image_of_b.data)))


def apply_cyclic(f: Automorphism, w: CyclicWord) -> CyclicWord:
    """Image of a cyclic word under f, cyclically reduced and canonical."""
    raw = kernel.apply_mapped_cyclic(
        w.data, *_image_tables(f.image_of_a.data, f.image_of_b.data)
    )
    return CyclicWord(kernel.least_rotation(raw))


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """The automorphism w -> f(g(w))."""
    f_tab = _image_tables(f.image_of_a.data, f.image_of_b.data)
    g_inv_tab = _image_tables(g._inv_a.data, g._inv_b.data)
    return _trusted(
        kernel.apply_mapped(g.image_of_a.data, *f_tab),
        kernel.apply_mapped(g.image_of_b.data, *f_tab),
        kernel.apply_mapped(f._inv_a.data, *g_inv_tab),
        kernel.apply_mapped(f._inv_b.data, *g_inv_tab),
    )


def inverse(f: Automorphism) -> Automorphism:
    """The inverse automorphism (always available: pairs are validated)."""
    return _trusted(f._inv_a.data, f._inv_b.data, f.image_of_a.data, f.image_of_b.data)


_NAMED: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]] = {
    # name: image of a, image of b, inverse image of a, inverse image of b
    "sigma": ((0, 2), (2,), (0, 3), (2,)),
    "tau": ((0,), (2, 0), (0,), (2, 1)),
    "sigma_inv": ((0, 3), (2,), (0, 2), (2,)),
    "tau_inv": ((0,), (2, 1), (0,), (2, 0)),
    "delta1": ((3, 0, 2), (2,), (2, 0, 3), (2,)),
    "delta2": ((2, 0, 3), (2,), (3, 0, 2), (2,)),
    "delta3": ((0,), (1, 2, 0), (0,), (0, 2, 1)),
    "delta4": ((0,), (0, 2, 1), (0,), (1, 2, 0)),
    "pi": ((2,), (1,), (3,), (0,)),
}


def named(name: str) -> Automorphism:
    """One of the standing maps: sigma, tau, delta1..delta4, pi.

    The two multiplier maps sigma (a -> ab) and tau (b -> ba), the four
    conjugating maps delta1..delta4, and the quarter-turn pi (a -> b,
    b -> a^-1). The inverses sigma_inv and tau_inv are accepted too since
    they name chain steps.
    """
    try:
        ia, ib, ja, jb = _NAMED[name]
    except KeyError:
        raise ValueError("unknown automorphism name: %r" % name) from None
    return _trusted(bytes(ia), bytes(ib), bytes(ja), bytes(jb))


IDENTITY = _trusted(b"\x00", b"\x02", b"\x00", b"\x02")
SIGMA = named("sigma")
TAU = named("tau")
SIGMA_INV = named("sigma_inv")
TAU_INV = named("tau_inv")
DELTA1 = named("delta1")
DELTA2 = named("delta2")
DELTA3 = named("delta3")
DELTA4 = named("delta4")
PI = named("pi")


def all_w1() -> Tuple[Automorphism, ...]:
    """The 8 letter-permutation automorphisms.

    Ordered by the byte codes of (image of a, image of b); the identity
    comes first.
    """
    maps = []
    for pa in range(4):
        for pb in range(4):
            if (pa >> 1) != (pb >> 1):
                maps.append(WhiteheadW1(Letter(pa), Letter(pb)).to_automorphism())
    return tuple(maps)


ALL_W1 = all_w1()


def delta_norm(f: Automorphism, psi_image: CyclicWord, w_image_after_f: CyclicWord) -> int:
    """Length gain of f on an already-computed image, floored at 1.

    The caller supplies both the image under the chain and its image under
    f so that hot loops never recompute an application here.
    """
    return max(1, len(w_image_after_f) - len(psi_image))


_DELTA_COUNTS = {
    "sigma": (Letter.a, Letter.B),
    "tau": (Letter.b, Letter.A),
    "sigma_inv": (Letter.a, Letter.b),
    "tau_inv": (Letter.b, Letter.a),
}


def predicted_length_delta(w: CyclicWord, which: str) -> int:
    """Cancellation-free prediction of the length change of one step.

    For sigma this is (occurrences of a or a^-1) minus twice the cyclic
    occurrences of the fragment a b^-1 (or its inverse b a^-1); the other
    three steps mirror the pattern. The prediction equals the actual change
    only when the step causes no proper cancellation on w; callers are
    responsible for being in that regime.
    """
    try:
        x, y = _DELTA_COUNTS[which]
    except KeyError:
        raise ValueError("unknown step name: %r" % which) from None
    return count_letter(w, x) - 2 * count_pair(w, x, y)


def render_automorphism(f: Automorphism) -> str:
    return f.render()


def parse_automorphism(text: str) -> Automorphism:
    """Parse the "a -> w; b -> w" form (the inverse of render)."""
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("expected two clauses separated by ';'", 0)
    images: Dict[str, Word] = {}
    for part in parts:
        if "->" not in part:
            raise ParseError("clause %r lacks '->'" % part.strip(), 0)
        lhs, rhs = part.split("->", 1)
        gen = lhs.strip()
        if gen not in ("a", "b") or gen in images:
            raise ParseError("clause must bind a or b exactly once, got %r" % gen, 0)
        images[gen] = parse_word(rhs.strip())
    return Automorphism(images["a"], images["b"])


# --- bounded Nielsen reduction -------------------------------------------

_ELEMENTARY = (
    # (which word changes, left factor?, other word inverted?) encoded as
    # callables below; each move rewrites one of the pair by the other.
    ("a", False, False),  # p -> p q
    ("a", False, True),   # p -> p q^-1
    ("a", True, False),   # p -> q p
    ("a", True, True),    # p -> q^-1 p
    ("b", False, False),  # q -> q p
    ("b", False, True),   # q -> q p^-1
    ("b", True, False),   # q -> p q
    ("b", True, True),    # q -> p^-1 q
)

# Images of a and b under the elementary map e with (phi . e) realizing the
# move, in the order of _ELEMENTARY.
_ELEMENTARY_IMAGES = (
    (b"\x00\x02", b"\x02"),
    (b"\x00\x03", b"\x02"),
    (b"\x02\x00", b"\x02"),
    (b"\x03\x00", b"\x02"),
    (b"\x00", b"\x02\x00"),
    (b"\x00", b"\x02\x01"),
    (b"\x00", b"\x00\x02"),
    (b"\x00", b"\x01\x02"),
)


def _is_basis_pair(p: bytes, q: bytes) -> bool:
    """Commutator test: (p, q) is a basis iff [p, q] is conjugate to [a, b]
    or its inverse (a classical rank-2 criterion)."""
    comm = kernel.free_reduce(p + q + kernel.invert_bytes(p) + kernel.invert_bytes(q))
    core, _ = kernel.cyclic_trim(comm)
    if len(core) != 4:
        return False
    return kernel.least_rotation(core) in (b"\x00\x02\x01\x03", b"\x00\x03\x01\x02")


def _nielsen_inverse(image_a: Word, image_b: Word) -> Tuple[Word, Word]:
    """Find the inverse images by reducing the pair to single letters.

    Best-first search over length-non-increasing elementary moves; a
    basis always reaches a letter pair this way, so the pair is rejected
    up front by the commutator criterion and the search then cannot miss.
    """
    p, q = image_a.data, image_b.data
    if not _is_basis_pair(p, q):
        raise InvalidAutomorphismError(
            "images %s, %s do not generate the whole group"
            % (image_a.render(), image_b.render())
        )
    depth_cap = 4 * (len(p) + len(q))
    start_total = len(p) + len(q)
    # State: the evolving pair plus the images of the accumulated move
    # composition M = e1 . e2 ... ek (so the final inverse is M . beta^-1).
    counter = 0
    heap = [(start_total, 0, p, q, b"\x00", b"\x02", 0)]
    seen = set()
    while heap:
        total, _, p, q, ma, mb, depth = heapq.heappop(heap)
        if (p, q) in seen:
            continue
        seen.add((p, q))
        if len(p) == 1 and len(q) == 1:
            # p, q are distinct-axis letters (anything else is not a basis,
            # already excluded). phi = beta . M^-1 with beta: a->p, b->q.
            beta_inv = {p[0]: 0, p[0] ^ 1: 1, q[0]: 2, q[0] ^ 1: 3}
            m_tab = _image_tables(ma, mb)
            inv_a, inv_b = m_tab[beta_inv[0]], m_tab[beta_inv[2]]
            got_a = kernel.apply_mapped(inv_a, *_image_tables(image_a.data, image_b.data))
            got_b = kernel.apply_mapped(inv_b, *_image_tables(image_a.data, image_b.data))
            if got_a != b"\x00" or got_b != b"\x02":
                raise InvalidAutomorphismError(
                    "inverse verification failed for %s, %s"
                    % (image_a.render(), image_b.render())
                )
            return Word(inv_a), Word(inv_b)
        if depth >= depth_cap:
            continue
        q_inv = kernel.invert_bytes(q)
        p_inv = kernel.invert_bytes(p)
        candidates = (
            (kernel.concat_reduce(p, q), q),
            (kernel.concat_reduce(p, q_inv), q),
            (kernel.concat_reduce(q, p), q),
            (kernel.concat_reduce(q_inv, p), q),
            (p, kernel.concat_reduce(q, p)),
            (p, kernel.concat_reduce(q, p_inv)),
            (p, kernel.concat_reduce(p, q)),
            (p, kernel.concat_reduce(p_inv, q)),
        )
        for idx, (np_, nq) in enumerate(candidates):
            ntotal = len(np_) + len(nq)
            if ntotal > total or not np_ or not nq or (np_, nq) in seen:
                continue
            ea, eb = _ELEMENTARY_IMAGES[idx]
            m_tab = _image_tables(ma, mb)
            nma = kernel.apply_mapped(ea, *m_tab)
            nmb = kernel.apply_mapped(eb, *m_tab)
            counter += 1
            heapq.heappush(heap, (ntotal, counter, np_, nq, nma, nmb, depth + 1))
    raise InvalidAutomorphismError(
        "bounded reduction exhausted without reaching a basis for %s, %s"
        % (image_a.render(), image_b.render())
    )
