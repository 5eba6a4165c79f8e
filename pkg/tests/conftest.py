import random

import pytest
from hypothesis import strategies as st

from onevar import _pykernels, kernels
from onevar.words import Word

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def W(text, rank=2):
    return Word.parse(text, rank)


def letters(rank=2):
    return [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]


def raw_sequences(rank=2, max_size=12):
    return st.lists(st.sampled_from(letters(rank)), max_size=max_size)


def words(rank=2, max_size=8, nonempty=False):
    return raw_sequences(rank, max_size).map(lambda s: Word(s, rank)).filter(
        lambda w: bool(w) or not nonempty)


def random_word(rng, length, rank=2):
    out = []
    while len(out) < length:
        x = rng.choice(letters(rank))
        if out and out[-1] == -x:
            continue
        out.append(x)
    return Word(out, rank, reduced=True)


@pytest.fixture
def rng():
    return random.Random(20261016)


KERNELS = [_pykernels]
if kernels.IMPLEMENTATION != "python":
    from onevar import _ckernels

    KERNELS.append(_ckernels)


@pytest.fixture(scope="module", params=KERNELS, ids=lambda m: m.IMPLEMENTATION)
def impl(request):
    return request.param


def random_non_axis(rng, axis, max_len=3):
    """A nonempty word of length <= max_len outside <axis>."""
    from onevar.words import in_cyclic

    while True:
        w = random_word(rng, rng.randint(1, max_len), axis.rank)
        if in_cyclic(w, axis) is None:
            return w


def random_raw_mixed(rng, rank=2, syllables=4, max_word=3, max_exp=2):
    """A raw token list h0 t^e1 h1 ... with arbitrary (possibly pinching) parts."""
    toks = [random_word(rng, rng.randint(0, max_word), rank)]
    for _ in range(rng.randint(0, syllables)):
        toks.append(rng.choice([k for k in range(-max_exp, max_exp + 1) if k]))
        toks.append(random_word(rng, rng.randint(0, max_word), rank))
    return toks


def random_cyclic_s(rng, e, max_syllables=3, max_word=3):
    """A cyclically reduced s in e with exp_t(s) = +-1 and every base part outside <axis>.

    s = t^e1 h1 ... t^en hn with all hi outside <axis>; the cyclic word has
    no pinch, so s is Britton-reduced and cyclically reduced.
    """
    from onevar.hnn import britton_reduce

    while True:
        n = rng.randint(1, max_syllables)
        exps = [rng.choice([-1, 1]) for _ in range(n)]
        total = sum(exps)
        if abs(total) != 1:
            continue
        toks = []
        for k in exps:
            toks += [k, random_non_axis(rng, e.axis, max_word)]
        return britton_reduce(e, toks)


def random_amalgam_raw_for(rng, g, n=None, max_word=3):
    """Raw ``(side, Word)`` syllables for ``g``, biased towards edge powers."""
    from onevar.words import power

    out = []
    for _ in range(rng.randint(0, 5) if n is None else n):
        side = "LR"[rng.random() < 0.5]
        edge = g.edge(side)
        if rng.random() < 0.3:
            w = power(edge, rng.choice([-2, -1, 1, 2]))
        else:
            w = random_word(rng, rng.randint(0, max_word), edge.rank)
        if rng.random() < 0.3:
            w = power(edge, rng.randint(-1, 1)) * w * power(edge, rng.randint(-1, 1))
        out.append((side, w))
    return out
