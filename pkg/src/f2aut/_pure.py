"""Pure-Python word kernel.

Words over the rank-2 free group are byte strings with the letter codes
a=0, a^-1=1, b=2, b^-1=3, so ``code ^ 1`` is the inverse letter and plain
byte order matches the canonical letter order. Every function here takes
and returns ``bytes``; inputs are assumed freely reduced unless noted.

The compiled twin of this module is ``f2aut._speedups``; both must stay
behaviourally identical (covered by the backend equivalence tests).
"""

NAME = "pure"

# Step codes for the four one-letter multiplier maps used by chains.
STEP_SIGMA = 0      # a -> ab
STEP_TAU = 1        # b -> ba
STEP_SIGMA_INV = 2  # a -> ab^-1
STEP_TAU_INV = 3    # b -> ba^-1

_STEP_IMAGES = (
    (bytes((0, 2)), bytes((3, 1)), bytes((2,)), bytes((3,))),
    (bytes((0,)), bytes((1,)), bytes((2, 0)), bytes((1, 3))),
    (bytes((0, 3)), bytes((2, 1)), bytes((2,)), bytes((3,))),
    (bytes((0,)), bytes((1,)), bytes((2, 1)), bytes((0, 3))),
)


def free_reduce(data):
    """Cancel adjacent inverse pairs until none remain."""
    out = bytearray()
    push = out.append
    pop = out.pop
    for c in data:
        if out and out[-1] == c ^ 1:
            pop()
        else:
            push(c)
    return bytes(out)


def concat_reduce(left, right):
    """Freely reduced concatenation of two freely reduced words."""
    out = bytearray(left)
    push = out.append
    pop = out.pop
    for c in right:
        if out and out[-1] == c ^ 1:
            pop()
        else:
            push(c)
    return bytes(out)


def invert_bytes(data):
    """The inverse word: reversed letters, each inverted."""
    return bytes(c ^ 1 for c in reversed(data))


def cyclic_trim(data):
    """Split a freely reduced word as conjugator * core * conjugator^-1.

    Returns ``(core, conjugator)`` where core is cyclically reduced and the
    conjugator is the peeled prefix (possibly empty).
    """
    start, end = 0, len(data)
    while end - start >= 2 and data[start] == data[end - 1] ^ 1:
        start += 1
        end -= 1
    return data[start:end], data[:start]


def least_rotation(data):
    """Lexicographically least rotation (Booth's algorithm).

    Input must be cyclically reduced; byte order is the canonical letter
    order, so this is the canonical form of the cyclic word.
    """
    n = len(data)
    if n < 2:
        return data
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = data[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != data[(k + i + 1) % n]:
            if sj < data[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != data[(k + i + 1) % n]:
            if sj < data[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    k %= n
    return data[k:] + data[:k]


def _apply(data, ia, iA, ib, iB):
    imgs = (ia, iA, ib, iB)
    out = bytearray()
    push = out.append
    pop = out.pop
    for c in data:
        for d in imgs[c]:
            if out and out[-1] == d ^ 1:
                pop()
            else:
                push(d)
    return out


def _trim_ends(out):
    start, end = 0, len(out)
    while end - start >= 2 and out[start] == out[end - 1] ^ 1:
        start += 1
        end -= 1
    return bytes(out[start:end])


def apply_mapped(data, ia, iA, ib, iB):
    """Apply the letter substitution a->ia, a^-1->iA, b->ib, b^-1->iB.

    The images must themselves be freely reduced; the result is the freely
    reduced image word.
    """
    return bytes(_apply(data, ia, iA, ib, iB))


def apply_mapped_cyclic(data, ia, iA, ib, iB):
    """Like apply_mapped but returns a cyclically reduced representative.

    The rotation of the result is arbitrary (not canonicalized).
    """
    return _trim_ends(_apply(data, ia, iA, ib, iB))


def apply_step_cyclic(data, step):
    """Apply one chain step (STEP_* code) to a cyclically reduced word."""
    ia, iA, ib, iB = _STEP_IMAGES[step]
    return _trim_ends(_apply(data, ia, iA, ib, iB))


def step_power_lengths(data, step, count):
    """Cyclic lengths of step^j applied to ``data`` for j = 0..count."""
    ia, iA, ib, iB = _STEP_IMAGES[step]
    lengths = [len(data)]
    cur = data
    for _ in range(count):
        cur = _trim_ends(_apply(cur, ia, iA, ib, iB))
        lengths.append(len(cur))
    return tuple(lengths)
