import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from onevar.equations import (
    VAR,
    EquationSystem,
    EquationTerm,
    ParseError,
    brute_force_variety,
    exp_var,
    finite_subsystem,
    parse_system,
    parse_term,
    scan_variety,
    substitute,
    substitute_mixed,
)
from onevar.hnn import CentralizerExtension, is_trivial, retract, syllable_length
from onevar.words import RankMismatchError, Word, ball, power

from conftest import W, random_word, words


def T(text, rank=2):
    return parse_term(text, rank)


def S(*texts, rank=2):
    return parse_system(list(texts), rank)


def naive_reduce(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def naive_variety(system, L):
    """Every product of <= L letters, reduced, then substituted by hand."""
    letters = [1, -1, 2, -2]
    cands = {naive_reduce(p) for n in range(L + 1) for p in itertools.product(letters, repeat=n)}
    out = set()
    for g in cands:
        ginv = tuple(-x for x in reversed(g))
        ok = True
        for t in system.terms:
            seq = []
            for s in t.symbols:
                seq += g if s == VAR else ginv if s == -VAR else (s,)
            if naive_reduce(seq):
                ok = False
                break
        if ok:
            out.add(g)
    return out


class TestParse:
    def test_examples(self):
        assert str(T("xax^-1b^-1")) == "xaXB"
        assert str(T("xa = ax")) == "xaXA"
        assert not T("xx^-1")

    def test_sugar(self):
        assert T("X a x") == T("x^-1 a x")
        assert T("(xa)^2") == T("xaxa")
        assert T("(xa)^-2") == T("AXAX")
        assert T("a^0 x") == T("x")
        assert T("1 = x") == T("X")
        assert T("= x") == T("X")

    def test_rank(self):
        assert T("xc", rank=3).symbols == (VAR, 3)
        with pytest.raises(ParseError) as exc:
            T("xc")
        assert exc.value.column == 2
        assert str(T("y x", rank=25)) == "yx"

    @pytest.mark.parametrize("text,column", [
        ("x a (", 5), ("x ^", 3), ("x ) a", 3), ("a = b = c", 7), ("x $ a", 3), ("x^-", 2),
    ])
    def test_errors_report_position(self, text, column):
        with pytest.raises(ParseError) as exc:
            T(text)
        assert exc.value.line == 1
        assert exc.value.column == column

    def test_system_lines(self):
        sys_ = parse_system("# a comment\nxa = ax\n\nxb = bx\nxa = ax\n")
        assert [str(t) for t in sys_] == ["xaXA", "xbXB"]
        with pytest.raises(ParseError) as exc:
            parse_system("xa = ax\nx (")
        assert exc.value.line == 2

    def test_term_validation(self):
        with pytest.raises(ValueError):
            EquationTerm((3,), rank=2)
        assert EquationTerm((VAR, 1, -1, -VAR)).symbols == ()

    def test_system_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            EquationSystem((T("xa"), T("xc", rank=3)), rank=2)

    @given(words(max_size=6), st.integers(0, 3))
    def test_text_round_trip(self, g, k):
        t = EquationTerm(g.letters + (VAR,) * k + (-1,), 2)
        assert T(str(t)) == t


class TestSubstitute:
    def test_examples(self):
        assert substitute(T("xaXB"), W("b")) == W("baBB")
        assert substitute(T("xaXA"), W("aaa")) == Word.identity()
        assert substitute(T("xx"), W("ab")) == W("abab")

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            substitute(T("xa"), Word((3,), rank=3))

    @given(words(max_size=5), words(max_size=5), words(max_size=4))
    def test_homomorphism(self, u, v, g):
        # substituting into a product of terms multiplies the values
        tu = EquationTerm(u.letters + (VAR,), 2)
        tv = EquationTerm((-VAR,) + v.letters, 2)
        both = EquationTerm(tu.symbols + tv.symbols, 2)
        assert substitute(both, g) == substitute(tu, g) * substitute(tv, g)


class TestSubstituteMixed:
    E = CentralizerExtension(W("a"))

    def test_relator(self):
        assert is_trivial(substitute_mixed(T("xaXA"), Word.identity(), self.E))

    def test_pinch(self):
        m = substitute_mixed(T("xaXB"), Word.identity(), self.E)
        assert m.exponents == ()
        assert m.words == (W("aB"),)

    def test_square(self):
        m = substitute_mixed(T("xx"), W("b"), self.E)
        assert str(m) == "b t b t"
        assert syllable_length(m) == 2
        assert retract(m, 1) == W("baba")

    def test_commuting_square(self, rng):
        for _ in range(200):
            axis_len = rng.randint(1, 3)
            axis = random_word(rng, axis_len)
            e = CentralizerExtension.of(axis)
            syms = []
            for _ in range(rng.randint(1, 4)):
                syms += list(random_word(rng, rng.randint(0, 3)).letters)
                syms.append(rng.choice([VAR, -VAR]))
            t = EquationTerm(tuple(syms), 2)
            g = random_word(rng, rng.randint(0, 4))
            m = substitute_mixed(t, g, e)
            for n in range(-5, 6):
                assert retract(m, n) == substitute(t, g * power(e.axis, n))


class TestExpVar:
    def test_examples(self):
        assert exp_var(T("xaXb")) == 0
        assert exp_var(T("xaxb")) == 2
        assert exp_var(T("a")) == 0

    @given(words(max_size=4, nonempty=True), st.lists(st.sampled_from([VAR, -VAR, 1, 2]), max_size=8))
    def test_conjugation_invariant(self, c, syms):
        t = EquationTerm(tuple(syms), 2)
        assert exp_var(t.conjugated(c)) == exp_var(t)


class TestVariety:
    def test_examples(self):
        assert [str(w) for w in brute_force_variety(S("xaXA"), 2)] == ["1", "a", "A", "aa", "AA"]
        assert brute_force_variety(S("xaXB"), 4) == []
        assert brute_force_variety(S("xxAA"), 3) == [W("a")]

    @pytest.mark.parametrize("eqs", [
        ["xaXA"], ["xxAA"], ["xaXB"], ["xaXbaB"], ["xaXA", "xbXB"], ["xab = bax"], ["x a x = a"],
        ["xxbXB"], [],
    ])
    def test_matches_naive(self, eqs):
        system = S(*eqs)
        got = brute_force_variety(system, 5)
        assert {w.letters for w in got} == naive_variety(system, 5)
        assert got == sorted(got, key=Word.sort_key)

    def test_monotone(self):
        for eqs in (["xaXA"], ["xaXbaB"], ["x a x = a"], ["xab = bax"]):
            system = S(*eqs)
            for L in range(5):
                small = brute_force_variety(system, L)
                large = brute_force_variety(system, L + 1)
                assert small == [w for w in large if len(w) <= L]

    def test_intersection(self, rng):
        pool = ["xaXA", "xbXB", "xabXBA", "xxAA", "xaXbaB", "xabX = ba", "x a x = a", "xb = Bx"]
        for e1, e2 in itertools.combinations(pool, 2):
            both = set(brute_force_variety(S(e1, e2), 5))
            assert both == set(brute_force_variety(S(e1), 5)) & set(brute_force_variety(S(e2), 5))

    def test_budget_truncates(self):
        res = scan_variety(S("xaXA"), 6, budget=200)
        assert res.truncated and res.radius < 6 and res.requested == 6
        assert res.diagnostics
        full = scan_variety(S("xaXA"), res.radius, budget=None)
        assert res.solutions == full.solutions
        assert not full.truncated

    def test_workers_agree(self):
        system = S("xaXbaB", "xx = xx")
        one = scan_variety(system, 6, workers=1)
        two = scan_variety(system, 6, workers=2)
        assert one.solutions == two.solutions

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            brute_force_variety(S("xa"), -1)


class TestFiniteSubsystem:
    def test_duplicates(self):
        system = EquationSystem((T("xaXA"), T("xaXA")))
        assert len(system) == 1
        assert finite_subsystem(system, 3).terms == (T("xaXA"),)

    def test_redundant_term_dropped(self):
        system = S("xaXA", "xaaXAA")
        assert finite_subsystem(system, 4).terms == (T("xaXA"),)
        assert brute_force_variety(S("xaXA"), 4) == brute_force_variety(system, 4)

    def test_trivial_term(self):
        sub = finite_subsystem(S("xX"), 2)
        assert sub.terms == ()
        assert brute_force_variety(sub, 2) == list(ball(2, 2))

    def test_same_bounded_variety(self):
        system = S("xaXA", "xbXB", "xabXBA", "xx = xx", "xaaXAA")
        sub = finite_subsystem(system, 4)
        assert len(sub) == 2
        assert brute_force_variety(sub, 4) == brute_force_variety(system, 4)
