"""Bounded enumeration of multiplier chains, the search core.

A chain is a composition of the steps sigma (a -> ab) and tau (b -> ba),
or of their inverses; the two families are the polarities C1 and C2. The
enumerator walks every chain of a polarity up to a length bound in
shortlex order (ascending length, then lexicographic with sigma before
tau) while carrying the images of the input words incrementally, one step
application per tree edge. Memory stays proportional to the depth because
each length round is a fresh depth-limited descent.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Tuple

from . import kernel
from .words import CyclicWord, Word

CONTINUE = "continue"
PRUNE = "prune"
STOP = "stop"

_NAMES = ("sigma", "tau", "sigma_inv", "tau_inv")
_CHARS = "stST"
_CODE_BY_NAME = {name: code for code, name in enumerate(_NAMES)}
_CODE_BY_CHAR = {ch: code for code, ch in enumerate(_CHARS)}

# Word-level images (a, a^-1, b, b^-1) of each step, for apply_chain.
_STEP_TABLES = (
    (b"\x00\x02", b"\x03\x01", b"\x02", b"\x03"),
    (b"\x00", b"\x01", b"\x02\x00", b"\x01\x03"),
    (b"\x00\x03", b"\x02\x01", b"\x02", b"\x03"),
    (b"\x00", b"\x01", b"\x02\x01", b"\x00\x03"),
)


class ImageSizeError(RuntimeError):
    """An intermediate image outgrew the configured cap."""

    def __init__(self, limit: int, observed: int):
        super().__init__(
            "intermediate image length %d exceeds cap %d" % (observed, limit)
        )
        self.limit = limit
        self.observed = observed


class Chain:
    """A composition of steps of one polarity, steps[0] applied first."""

    __slots__ = ("polarity", "steps")

    def __init__(self, polarity: str, steps: Sequence[str] = ()):
        steps = tuple(steps)
        if polarity not in ("C1", "C2"):
            raise ValueError("polarity must be C1 or C2, got %r" % polarity)
        allowed = ("sigma", "tau") if polarity == "C1" else ("sigma_inv", "tau_inv")
        for s in steps:
            if s not in allowed:
                raise ValueError("step %r not allowed in a %s chain" % (s, polarity))
        if not steps:
            polarity = "C1"  # the identity chain is canonically tagged C1
        self.polarity = polarity
        self.steps = steps

    @classmethod
    def from_codes(cls, codes: Sequence[int]) -> "Chain":
        c = cls.__new__(cls)
        c.polarity = "C2" if codes and codes[0] >= 2 else "C1"
        c.steps = tuple(_NAMES[k] for k in codes)
        return c

    def step_codes(self) -> Tuple[int, ...]:
        return tuple(_CODE_BY_NAME[s] for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.polarity == other.polarity and self.steps == other.steps

    def __hash__(self) -> int:
        return hash((self.polarity, self.steps))

    def render_steps(self) -> str:
        """The compact form: s/t for sigma/tau, S/T for their inverses."""
        return "".join(_CHARS[_CODE_BY_NAME[s]] for s in self.steps)

    def to_json(self) -> dict:
        return {"polarity": self.polarity, "steps": self.render_steps()}

    @classmethod
    def from_json(cls, obj: dict) -> "Chain":
        codes = tuple(_CODE_BY_CHAR[ch] for ch in obj["steps"])
        c = cls.from_codes(codes)
        if c.polarity != obj["polarity"] and codes:
            raise ValueError("steps %r do not match polarity %r" % (obj["steps"], obj["polarity"]))
        return c

    def rank(self) -> int:
        """1-based position in the polarity's shortlex enumeration."""
        value = 0
        for s in self.steps:
            value = (value << 1) | (_CODE_BY_NAME[s] & 1)
        return (1 << len(self.steps)) + value

    def exponent_runs(self) -> Tuple[Tuple[str, int], ...]:
        """Collapse the step sequence into (step, count) runs for display."""
        runs = []
        for s in self.steps:
            if runs and runs[-1][0] == s:
                runs[-1][1] += 1
            else:
                runs.append([s, 1])
        return tuple((s, n) for s, n in runs)

    def __repr__(self) -> str:
        return "Chain(%r, %r)" % (self.polarity, "".join(self.render_steps()))


class ChainVisit:
    """One enumeration callback: the chain and the images of the inputs."""

    __slots__ = ("chain", "images")

    def __init__(self, chain: Chain, images: Tuple[CyclicWord, ...]):
        self.chain = chain
        self.images = images


class TraversalSummary:
    __slots__ = ("visited", "stopped", "peak_image_sets")

    def __init__(self, visited: int, stopped: bool, peak_image_sets: int):
        self.visited = visited
        self.stopped = stopped
        self.peak_image_sets = peak_image_sets

    def __repr__(self) -> str:
        return "TraversalSummary(visited=%d, stopped=%r, peak_image_sets=%d)" % (
            self.visited,
            self.stopped,
            self.peak_image_sets,
        )


def apply_chain(c: Chain, w: Word) -> Word:
    """Apply the chain to a plain word, steps[0] first."""
    data = w.data
    for code in c.step_codes():
        data = kernel.apply_mapped(data, *_STEP_TABLES[code])
    return Word(data)


def apply_chain_cyclic(c: Chain, w: CyclicWord) -> CyclicWord:
    data = w.data
    for code in c.step_codes():
        data = kernel.apply_step_cyclic(data, code)
    return CyclicWord(kernel.least_rotation(data))


def chain_powers(w: CyclicWord, step: str, count: int) -> Tuple[CyclicWord, ...]:
    """[w, step(w), step^2(w), ..., step^count(w)], computed incrementally."""
    code = _CODE_BY_NAME[step]
    out = [CyclicWord(kernel.least_rotation(w.data))]
    data = w.data
    for _ in range(count):
        data = kernel.apply_step_cyclic(data, code)
        out.append(CyclicWord(kernel.least_rotation(data)))
    return tuple(out)


def power_lengths(w: CyclicWord, step: str, count: int) -> Tuple[int, ...]:
    """Cyclic lengths of [w, step(w), ..., step^count(w)] without rotation work."""
    return kernel.step_power_lengths(w.data, _CODE_BY_NAME[step], count)


def chain_count(max_len: int) -> int:
    """Chains of one polarity with length <= max_len."""
    return (1 << (max_len + 1)) - 1


class _Stop(Exception):
    pass


def enumerate_chains(
    polarity: str,
    max_len: int,
    inputs: Sequence[CyclicWord],
    visitor: Callable[[ChainVisit], Optional[str]],
    prefix: Sequence[str] = (),
    include_self: bool = True,
    image_size_cap: Optional[int] = None,
) -> TraversalSummary:
    """Visit every chain of the polarity with length <= max_len once.

    Order is shortlex: all chains of length L before any of length L+1,
    lexicographic within a length with sigma before tau. Images of the
    inputs ride along, recomputed one application per tree edge; a length
    round holds at most max_len+1 image tuples at a time.

    With a nonempty ``prefix`` only chains extending it are visited (the
    prefix chain itself included), which is how parallel callers split the
    tree. ``include_self=False`` skips the bare prefix chain, used to avoid
    revisiting the shared identity chain when both polarities run.
    The visitor returns None/"continue", "prune" (skip all extensions of
    the visited chain) or "stop" (abort the traversal).
    """
    if polarity not in ("C1", "C2"):
        raise ValueError("polarity must be C1 or C2, got %r" % polarity)
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    first, second = (0, 1) if polarity == "C1" else (2, 3)
    prefix_codes = tuple(_CODE_BY_NAME[s] if isinstance(s, str) else int(s) for s in prefix)
    for k in prefix_codes:
        if k not in (first, second):
            raise ValueError("prefix step %s not of polarity %s" % (_NAMES[k], polarity))
    p = len(prefix_codes)

    base = tuple(kernel.least_rotation(w.data) for w in inputs)
    stack = [base]
    for code in prefix_codes:
        stack.append(_advance(stack[-1], code, image_size_cap))

    visited = 0
    stopped = False
    peak = len(stack)
    pruned = set()
    steps_buf = list(prefix_codes)

    def visit_here() -> Optional[str]:
        nonlocal visited
        visited += 1
        images = tuple(CyclicWord(d) for d in stack[-1])
        return visitor(ChainVisit(Chain.from_codes(tuple(steps_buf)), images))

    def descend(level: int, target: int) -> None:
        # level counts suffix steps already applied under the prefix.
        nonlocal peak
        if level == target:
            act = visit_here()
            if act == PRUNE:
                pruned.add(tuple(steps_buf))
            elif act == STOP:
                raise _Stop
            return
        if pruned and tuple(steps_buf) in pruned:
            return
        for code in (first, second):
            stack.append(_advance(stack[-1], code, image_size_cap))
            if len(stack) > peak:
                peak = len(stack)
            steps_buf.append(code)
            try:
                descend(level + 1, target)
            finally:
                stack.pop()
                steps_buf.pop()

    try:
        if p <= max_len and include_self:
            act = visit_here()
            if act == PRUNE:
                pruned.add(prefix_codes)
            elif act == STOP:
                raise _Stop
        if prefix_codes not in pruned:
            for target in range(1, max_len - p + 1):
                descend(0, target)
    except _Stop:
        stopped = True
    return TraversalSummary(visited, stopped, peak)


def _advance(
    images: Tuple[bytes, ...], code: int, cap: Optional[int]
) -> Tuple[bytes, ...]:
    out = []
    for data in images:
        nd = kernel.least_rotation(kernel.apply_step_cyclic(data, code))
        if cap is not None and len(nd) > cap:
            raise ImageSizeError(cap, len(nd))
        out.append(nd)
    return tuple(out)
