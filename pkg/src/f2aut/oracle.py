"""Brute-force ground truth used by tests and the CLI --verify mode.

The catalog is the breadth-first closure of a fixed 16-map generating set
(the 8 letter permutations, the two multiplier maps with their inverses,
and the four conjugating maps), deduplicated by image pair. Every entry
remembers its parent and the generator that produced it, so the factor
sequence of any entry can be replayed.

Depth 8 holds about 1.1 million automorphisms and several hundred MB;
growth is roughly 4x per level, which is why the hard cap exists.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from . import kernel
from .autos import ALL_W1, DELTA1, DELTA2, DELTA3, DELTA4, SIGMA, SIGMA_INV, TAU, TAU_INV, Automorphism, compose
from .words import CyclicWord, Word, cyclic_length, is_positive

GENERATORS: Tuple[Automorphism, ...] = ALL_W1 + (
    SIGMA,
    SIGMA_INV,
    TAU,
    TAU_INV,
    DELTA1,
    DELTA2,
    DELTA3,
    DELTA4,
)

HARD_DEPTH_CAP = 12


class CatalogDepthError(RuntimeError):
    """Requested catalog depth exceeds the configured hard cap."""


class OracleAnswer:
    __slots__ = ("answer", "witness")

    def __init__(self, answer: str, witness: Optional[Automorphism] = None):
        self.answer = answer
        self.witness = witness

    def __repr__(self) -> str:
        return "OracleAnswer(%r)" % self.answer


class AutoCatalog:
    """All products of at most ``depth`` generator factors, deduplicated."""

    def __init__(self, depth: int):
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        if depth > HARD_DEPTH_CAP:
            raise CatalogDepthError(
                "depth %d exceeds the hard cap %d" % (depth, HARD_DEPTH_CAP)
            )
        self.depth = depth
        gen_tabs = [
            (
                f.image_of_a.data,
                kernel.invert_bytes(f.image_of_a.data),
                f.image_of_b.data,
                kernel.invert_bytes(f.image_of_b.data),
            )
            for f in GENERATORS
        ]
        index = {(b"\x00", b"\x02"): 0}
        entries: List[Tuple[bytes, bytes, int, int]] = [(b"\x00", b"\x02", -1, -1)]
        frontier = [0]
        for _ in range(depth):
            new = []
            for ei in frontier:
                pa, pb = entries[ei][0], entries[ei][1]
                for gi, tab in enumerate(gen_tabs):
                    ca = kernel.apply_mapped(pa, *tab)
                    cb = kernel.apply_mapped(pb, *tab)
                    key = (ca, cb)
                    if key not in index:
                        index[key] = len(entries)
                        new.append(len(entries))
                        entries.append((ca, cb, ei, gi))
            frontier = new
        self._entries = entries
        self._index = index

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, f: Automorphism) -> bool:
        return (f.image_of_a.data, f.image_of_b.data) in self._index

    def image_pairs(self) -> Iterator[Tuple[bytes, bytes]]:
        for pa, pb, _, _ in self._entries:
            yield pa, pb

    def factors(self, i: int) -> Tuple[int, ...]:
        """Generator indices whose left-to-right composition is entry i."""
        out = []
        while self._entries[i][2] >= 0:
            out.append(self._entries[i][3])
            i = self._entries[i][2]
        return tuple(out)

    def automorphism_at(self, i: int) -> Automorphism:
        f = GENERATORS[0]  # the identity leads the W1 block
        for gi in reversed(self.factors(i)):
            f = compose(GENERATORS[gi], f)
        return f


@functools.lru_cache(maxsize=4)
def enumerate_automorphisms(depth: int) -> AutoCatalog:
    """Build (or reuse) the catalog of the given depth."""
    return AutoCatalog(depth)


def oracle_potentially_positive(u: Word, depth: int) -> OracleAnswer:
    """Scan the catalog for a map sending [u] to a positive cyclic word.

    One-sided: "no_within_depth" only says the catalog has no witness.
    """
    cat = enumerate_automorphisms(depth)
    data = u.data
    for i, (pa, pb) in enumerate(cat.image_pairs()):
        img = kernel.apply_mapped_cyclic(
            data, pa, kernel.invert_bytes(pa), pb, kernel.invert_bytes(pb)
        )
        if is_positive(CyclicWord(img)):
            return OracleAnswer("yes", cat.automorphism_at(i))
    return OracleAnswer("no_within_depth")


def sample_ratios(u: Word, v: Word, depth: int) -> List[Fraction]:
    """Exact cyclic-length ratios of the images of u and v over the catalog."""
    if cyclic_length(u) == 0 or cyclic_length(v) == 0:
        raise ValueError("ratio sampling needs nonzero cyclic lengths")
    cat = enumerate_automorphisms(depth)
    ud, vd = u.data, v.data
    out = []
    for pa, pb in cat.image_pairs():
        ia_inv = kernel.invert_bytes(pa)
        ib_inv = kernel.invert_bytes(pb)
        nu = len(kernel.apply_mapped_cyclic(ud, pa, ia_inv, pb, ib_inv))
        nv = len(kernel.apply_mapped_cyclic(vd, pa, ia_inv, pb, ib_inv))
        out.append(Fraction(nu, nv))
    return out
