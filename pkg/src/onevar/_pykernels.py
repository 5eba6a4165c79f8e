"""Pure-Python versions of the hot loops in :mod:`onevar.kernels`.

Letters are nonzero ints: ``+i`` is generator ``i`` and ``-i`` its inverse.
Equation terms use the same encoding, with ``var`` standing for the unknown.
"""

IMPLEMENTATION = "python"


def free_reduce(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_solution(terms, var, g):
    """True iff every term collapses to the identity after ``var -> g``."""
    g = tuple(g)
    ginv = tuple(-x for x in reversed(g))
    for term in terms:
        out = []
        for s in term:
            if s == var:
                piece = g
            elif s == -var:
                piece = ginv
            else:
                piece = (s,)
            for x in piece:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        if out:
            return False
    return True


def letter_order(rank):
    order = []
    for i in range(1, rank + 1):
        order.append(i)
        order.append(-i)
    return order


def scan_ball(terms, var, rank, radius, first):
    """Solutions among reduced words of length 1..radius starting with ``first``.

    Words are visited depth-first in letter order a < A < b < B < ...
    """
    if radius < 1:
        return []
    order = letter_order(rank)
    found = []
    word = [first]

    def visit():
        if is_solution(terms, var, word):
            found.append(tuple(word))
        if len(word) == radius:
            return
        last = word[-1]
        for x in order:
            if x == -last:
                continue
            word.append(x)
            visit()
            word.pop()

    visit()
    return found
