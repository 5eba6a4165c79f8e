# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in :mod:`onevar.kernels`."""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"


def free_reduce(letters):
    cdef Py_ssize_t n = len(letters)
    cdef Py_ssize_t i, top = 0
    cdef int x
    cdef int *buf = <int *> malloc((n + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            x = letters[i]
            if top > 0 and buf[top - 1] == -x:
                top -= 1
            else:
                buf[top] = x
                top += 1
        return tuple([buf[i] for i in range(top)])
    finally:
        free(buf)


cdef bint _solves(const int *codes, const int *offsets, int nterms, int var,
                  const int *g, int glen, int *stack) noexcept nogil:
    cdef int t, i, j, s, x, top
    for t in range(nterms):
        top = 0
        for i in range(offsets[t], offsets[t + 1]):
            s = codes[i]
            if s == var:
                for j in range(glen):
                    x = g[j]
                    if top > 0 and stack[top - 1] == -x:
                        top -= 1
                    else:
                        stack[top] = x
                        top += 1
            elif s == -var:
                for j in range(glen - 1, -1, -1):
                    x = -g[j]
                    if top > 0 and stack[top - 1] == -x:
                        top -= 1
                    else:
                        stack[top] = x
                        top += 1
            else:
                if top > 0 and stack[top - 1] == -s:
                    top -= 1
                else:
                    stack[top] = s
                    top += 1
        if top != 0:
            return False
    return True


cdef class _Terms:
    cdef int *codes
    cdef int *offsets
    cdef int nterms
    cdef int maxlen

    def __cinit__(self, terms):
        cdef int total = 0, k = 0, t
        self.nterms = len(terms)
        self.maxlen = 0
        for term in terms:
            total += len(term)
            if len(term) > self.maxlen:
                self.maxlen = len(term)
        self.codes = <int *> malloc((total + 1) * sizeof(int))
        self.offsets = <int *> malloc((self.nterms + 1) * sizeof(int))
        if self.codes == NULL or self.offsets == NULL:
            raise MemoryError()
        self.offsets[0] = 0
        for t, term in enumerate(terms):
            for s in term:
                self.codes[k] = s
                k += 1
            self.offsets[t + 1] = k

    def __dealloc__(self):
        free(self.codes)
        free(self.offsets)


def is_solution(terms, var, g):
    cdef _Terms packed = _Terms(terms)
    cdef int glen = len(g)
    cdef int i
    cdef int *gbuf = <int *> malloc((glen + 1) * sizeof(int))
    cdef int *stack = <int *> malloc((packed.maxlen * (glen + 1) + 1) * sizeof(int))
    if gbuf == NULL or stack == NULL:
        free(gbuf)
        free(stack)
        raise MemoryError()
    try:
        for i in range(glen):
            gbuf[i] = g[i]
        return _solves(packed.codes, packed.offsets, packed.nterms, var,
                       gbuf, glen, stack)
    finally:
        free(gbuf)
        free(stack)


def scan_ball(terms, var, int rank, int radius, int first):
    if radius < 1:
        return []
    cdef _Terms packed = _Terms(terms)
    cdef int nletters = 2 * rank
    cdef int *order = <int *> malloc(nletters * sizeof(int))
    cdef int *word = <int *> malloc((radius + 1) * sizeof(int))
    cdef int *idx = <int *> malloc((radius + 2) * sizeof(int))
    cdef int *stack = <int *> malloc((packed.maxlen * (radius + 1) + 1) * sizeof(int))
    cdef int i, length, x
    found = []
    if order == NULL or word == NULL or idx == NULL or stack == NULL:
        free(order)
        free(word)
        free(idx)
        free(stack)
        raise MemoryError()
    try:
        for i in range(rank):
            order[2 * i] = i + 1
            order[2 * i + 1] = -(i + 1)
        word[0] = first
        length = 1
        idx[1] = 0
        if _solves(packed.codes, packed.offsets, packed.nterms, var, word, 1, stack):
            found.append((first,))
        while length > 0:
            if length == radius or idx[length] == nletters:
                length -= 1
                continue
            x = order[idx[length]]
            idx[length] += 1
            if x == -word[length - 1]:
                continue
            word[length] = x
            length += 1
            idx[length] = 0
            if _solves(packed.codes, packed.offsets, packed.nterms, var,
                       word, length, stack):
                found.append(tuple([word[i] for i in range(length)]))
        return found
    finally:
        free(order)
        free(word)
        free(idx)
        free(stack)
