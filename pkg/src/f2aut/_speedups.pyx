# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernel; behaviourally identical to f2aut._pure.

Letter codes: a=0, a^-1=1, b=2, b^-1=3 (inverse = code ^ 1). All words are
bytes. The inner loops run without the GIL so thread workers can overlap.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize, PyBytes_GET_SIZE
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memmove

NAME = "compiled"

STEP_SIGMA = 0
STEP_TAU = 1
STEP_SIGMA_INV = 2
STEP_TAU_INV = 3

# Per-step letter images: STEP_IMG[step][letter][0..1], STEP_IMG_LEN[step][letter].
cdef unsigned char STEP_IMG[4][4][2]
cdef Py_ssize_t STEP_IMG_LEN[4][4]


def _init_tables():
    images = (
        ((0, 2), (3, 1), (2,), (3,)),   # sigma: a->ab, A->BA, b->b, B->B
        ((0,), (1,), (2, 0), (1, 3)),   # tau: a->a, A->A, b->ba, B->AB
        ((0, 3), (2, 1), (2,), (3,)),   # sigma_inv: a->aB, A->bA, b->b, B->B
        ((0,), (1,), (2, 1), (0, 3)),   # tau_inv: a->a, A->A, b->bA, B->aB
    )
    cdef int s, c, j
    for s in range(4):
        for c in range(4):
            STEP_IMG_LEN[s][c] = len(images[s][c])
            for j in range(len(images[s][c])):
                STEP_IMG[s][c][j] = images[s][c][j]


_init_tables()


cdef inline Py_ssize_t _reduce_into(const unsigned char* src, Py_ssize_t n,
                                    unsigned char* out) noexcept nogil:
    cdef Py_ssize_t top = 0, i
    cdef unsigned char c
    for i in range(n):
        c = src[i]
        if top > 0 and out[top - 1] == (c ^ 1):
            top -= 1
        else:
            out[top] = c
            top += 1
    return top


cdef inline Py_ssize_t _apply_raw(const unsigned char* src, Py_ssize_t n,
                                  const unsigned char** imgs,
                                  const Py_ssize_t* lens,
                                  unsigned char* out) noexcept nogil:
    cdef Py_ssize_t top = 0, i, j, il
    cdef const unsigned char* im
    cdef unsigned char d
    for i in range(n):
        im = imgs[src[i]]
        il = lens[src[i]]
        for j in range(il):
            d = im[j]
            if top > 0 and out[top - 1] == (d ^ 1):
                top -= 1
            else:
                out[top] = d
                top += 1
    return top


cdef inline Py_ssize_t _apply_step_raw(const unsigned char* src, Py_ssize_t n,
                                       int step, unsigned char* out) noexcept nogil:
    cdef Py_ssize_t top = 0, i, j, il
    cdef unsigned char d
    for i in range(n):
        il = STEP_IMG_LEN[step][src[i]]
        for j in range(il):
            d = STEP_IMG[step][src[i]][j]
            if top > 0 and out[top - 1] == (d ^ 1):
                top -= 1
            else:
                out[top] = d
                top += 1
    return top


cdef inline void _trim_bounds(const unsigned char* buf, Py_ssize_t top,
                              Py_ssize_t* pstart, Py_ssize_t* pend) noexcept nogil:
    cdef Py_ssize_t s = 0, e = top
    while e - s >= 2 and buf[s] == (buf[e - 1] ^ 1):
        s += 1
        e -= 1
    pstart[0] = s
    pend[0] = e


def free_reduce(bytes data not None):
    """Cancel adjacent inverse pairs until none remain."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef unsigned char* out = <unsigned char*> malloc(n + 1)
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t top
    with nogil:
        top = _reduce_into(src, n, out)
    result = PyBytes_FromStringAndSize(<char*> out, top)
    free(out)
    return result


def concat_reduce(bytes left not None, bytes right not None):
    """Freely reduced concatenation of two freely reduced words."""
    cdef Py_ssize_t nl = PyBytes_GET_SIZE(left)
    cdef Py_ssize_t nr = PyBytes_GET_SIZE(right)
    cdef const unsigned char* pl = <const unsigned char*> PyBytes_AS_STRING(left)
    cdef const unsigned char* pr = <const unsigned char*> PyBytes_AS_STRING(right)
    cdef unsigned char* out = <unsigned char*> malloc(nl + nr + 1)
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = nl, i
    cdef unsigned char c
    with nogil:
        memcpy(out, pl, nl)
        for i in range(nr):
            c = pr[i]
            if top > 0 and out[top - 1] == (c ^ 1):
                top -= 1
            else:
                out[top] = c
                top += 1
    result = PyBytes_FromStringAndSize(<char*> out, top)
    free(out)
    return result


def invert_bytes(bytes data not None):
    """The inverse word: reversed letters, each inverted."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef unsigned char* out = <unsigned char*> malloc(n + 1)
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            out[i] = src[n - 1 - i] ^ 1
    result = PyBytes_FromStringAndSize(<char*> out, n)
    free(out)
    return result


def cyclic_trim(bytes data not None):
    """Split a freely reduced word as conjugator * core * conjugator^-1."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef Py_ssize_t s = 0, e = n
    while e - s >= 2 and src[s] == (src[e - 1] ^ 1):
        s += 1
        e -= 1
    return data[s:e], data[:s]


def least_rotation(bytes data not None):
    """Lexicographically least rotation (Booth's algorithm)."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    if n < 2:
        return data
    cdef const unsigned char* s = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef Py_ssize_t* f = <Py_ssize_t*> malloc(2 * n * sizeof(Py_ssize_t))
    if f == NULL:
        raise MemoryError()
    cdef Py_ssize_t k = 0, j, i
    cdef unsigned char sj
    with nogil:
        for j in range(2 * n):
            f[j] = -1
        for j in range(1, 2 * n):
            sj = s[j % n]
            i = f[j - k - 1]
            while i != -1 and sj != s[(k + i + 1) % n]:
                if sj < s[(k + i + 1) % n]:
                    k = j - i - 1
                i = f[i]
            if sj != s[(k + i + 1) % n]:
                if sj < s[k % n]:
                    k = j
                f[j - k] = -1
            else:
                f[j - k] = i + 1
        k = k % n
    free(f)
    return data[k:] + data[:k]


def apply_mapped(bytes data not None, bytes ia not None, bytes iA not None,
                 bytes ib not None, bytes iB not None):
    """Apply the letter substitution; freely reduced result."""
    return _apply_mapped_common(data, ia, iA, ib, iB, 0)


def apply_mapped_cyclic(bytes data not None, bytes ia not None, bytes iA not None,
                        bytes ib not None, bytes iB not None):
    """Apply the letter substitution; cyclically reduced (unrotated) result."""
    return _apply_mapped_common(data, ia, iA, ib, iB, 1)


cdef _apply_mapped_common(bytes data, bytes ia, bytes iA, bytes ib, bytes iB,
                          int cyclic):
    cdef const unsigned char* imgs[4]
    cdef Py_ssize_t lens[4]
    imgs[0] = <const unsigned char*> PyBytes_AS_STRING(ia)
    imgs[1] = <const unsigned char*> PyBytes_AS_STRING(iA)
    imgs[2] = <const unsigned char*> PyBytes_AS_STRING(ib)
    imgs[3] = <const unsigned char*> PyBytes_AS_STRING(iB)
    lens[0] = PyBytes_GET_SIZE(ia)
    lens[1] = PyBytes_GET_SIZE(iA)
    lens[2] = PyBytes_GET_SIZE(ib)
    lens[3] = PyBytes_GET_SIZE(iB)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef Py_ssize_t cap = 1, i, top, s, e
    cdef unsigned char* out
    with nogil:
        for i in range(n):
            cap += lens[src[i]]
    out = <unsigned char*> malloc(cap)
    if out == NULL:
        raise MemoryError()
    with nogil:
        top = _apply_raw(src, n, imgs, lens, out)
        if cyclic:
            _trim_bounds(out, top, &s, &e)
        else:
            s = 0
            e = top
    result = PyBytes_FromStringAndSize(<char*> (out + s), e - s)
    free(out)
    return result


def apply_step_cyclic(bytes data not None, int step):
    """Apply one chain step (STEP_* code) to a cyclically reduced word."""
    if step < 0 or step > 3:
        raise ValueError("step code out of range: %d" % step)
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    cdef unsigned char* out = <unsigned char*> malloc(2 * n + 1)
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t top, s, e
    with nogil:
        top = _apply_step_raw(src, n, step, out)
        _trim_bounds(out, top, &s, &e)
    result = PyBytes_FromStringAndSize(<char*> (out + s), e - s)
    free(out)
    return result


def step_power_lengths(bytes data not None, int step, Py_ssize_t count):
    """Cyclic lengths of step^j applied to ``data`` for j = 0..count."""
    if step < 0 or step > 3:
        raise ValueError("step code out of range: %d" % step)
    if count < 0:
        raise ValueError("count must be nonnegative")
    cdef Py_ssize_t n = PyBytes_GET_SIZE(data)
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(data)
    lengths = [n]
    cdef unsigned char* cur = <unsigned char*> malloc(n + 1)
    if cur == NULL:
        raise MemoryError()
    cdef unsigned char* nxt
    cdef Py_ssize_t curlen = n, top, s, e, j
    memcpy(cur, src, n)
    for j in range(count):
        nxt = <unsigned char*> malloc(2 * curlen + 1)
        if nxt == NULL:
            free(cur)
            raise MemoryError()
        with nogil:
            top = _apply_step_raw(cur, curlen, step, nxt)
            _trim_bounds(nxt, top, &s, &e)
            if s > 0:
                memmove(nxt, nxt + s, e - s)
        free(cur)
        cur = nxt
        curlen = e - s
        lengths.append(curlen)
    free(cur)
    return tuple(lengths)
