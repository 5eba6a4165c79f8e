import json

import pytest

from onevar.equations import EquationSystem, brute_force_variety, parse_system
from onevar.solver import (
    CosetFamily,
    SolutionSet,
    canonicalize,
    detect_full,
    fit_cosets,
    solve,
    verify_family,
    verify_point,
)
from onevar.words import Word, ball, power

from conftest import W, random_word


def S(*texts):
    return parse_system(list(texts), 2)


def shape(result):
    return (result.full, [str(p) for p in result.points],
            [(str(c.rep), str(c.root)) for c in result.cosets])


class TestDetectFull:
    def test_examples(self):
        assert detect_full(S("xX"))
        assert not detect_full(S("xaXA"))
        assert detect_full(EquationSystem())

    def test_non_full_has_witness(self):
        for eq in ("xaXA", "xx", "x = a", "xaXbxAXB"):
            system = S(eq)
            assert not detect_full(system)
            assert any(not verify_point(system, g) for g in ball(2, 1))


class TestVerify:
    def test_points(self):
        assert verify_point(S("xxAA"), W("a"))
        assert not verify_point(S("xxAA"), W("b"))
        assert verify_point(S("xaXA"), W("aaaaa"))

    def test_families(self):
        assert verify_family(S("xaXA"), W(""), W("a"))
        assert not verify_family(S("xaXA"), W("b"), W("a"))
        pair = S("xaXA", "xbXB")
        assert not verify_family(pair, W(""), W("a"))
        assert verify_point(pair, W(""))

    def test_proper_power_generator(self):
        # <aa> is a subset of <a>, so it is also a family of solutions
        assert verify_family(S("xaXA"), W("a"), W("aa"))
        assert not verify_family(S("xaaX = a"), W("1"), W("aa"))

    def test_empty_generator(self):
        with pytest.raises(ValueError):
            verify_family(S("xaXA"), W("a"), W("1"))

    def test_agrees_with_points(self, rng):
        for eq in ("xaXA", "xaXbaB", "xabX = ba", "xxAA", "xaXA", "XaxA"):
            system = S(eq)
            for _ in range(30):
                g = random_word(rng, rng.randint(0, 3))
                r = random_word(rng, rng.randint(1, 3))
                if verify_family(system, g, r):
                    assert all(verify_point(system, g * power(r, n)) for n in range(-20, 21))
                elif verify_point(system, g):
                    assert any(not verify_point(system, g * power(r, n)) for n in range(-50, 51))


class TestCosetFamily:
    def test_normalized(self):
        assert CosetFamily.normalized(W("a"), W("a")) == CosetFamily(W(""), W("a"))
        assert CosetFamily.normalized(W(""), W("A")) == CosetFamily(W(""), W("a"))
        assert CosetFamily.normalized(W("bab"), W("aa")) == CosetFamily(W("bab"), W("a"))
        assert CosetFamily.normalized(W("ab"), W("Bab")).rep == W("b")

    def test_membership(self):
        fam = CosetFamily(W("b"), W("a"))
        assert W("baaa") in fam and W("bA") in fam
        assert W("ab") not in fam

    def test_elements_within(self):
        fam = CosetFamily(W(""), W("a"))
        assert [str(w) for w in fam.elements_within(2)] == ["1", "a", "A", "aa", "AA"]


class TestFitCosets:
    def test_centralizer(self):
        system = S("xaXA")
        families, left = fit_cosets(system, brute_force_variety(system, 2))
        assert families == [CosetFamily(W(""), W("a"))]
        assert left == []

    def test_single_point(self):
        system = S("xxAA")
        families, left = fit_cosets(system, brute_force_variety(system, 3))
        assert families == [] and left == [W("a")]

    def test_empty(self):
        assert fit_cosets(S("xaXB"), []) == ([], [])

    def test_union(self):
        system = S("xaXA xbXB")  # [x,a][x,b] = 1: a product, not the pair
        sols = brute_force_variety(system, 4)
        families, left = fit_cosets(system, sols)
        for fam in families:
            assert verify_family(system, fam.rep, fam.root)
        covered = {w for w in sols if any(w in f for f in families)}
        assert covered | set(left) == set(sols)
        assert not covered & set(left)


class TestCanonicalize:
    def test_merges(self):
        raw = SolutionSet(cosets=(CosetFamily(W("a"), W("a")),))
        assert canonicalize(raw).cosets == (CosetFamily(W(""), W("a")),)
        raw = SolutionSet(cosets=(CosetFamily(W(""), W("a")), CosetFamily(W(""), W("A"))))
        assert len(canonicalize(raw).cosets) == 1

    def test_absorbs_points(self):
        raw = SolutionSet(points=(W("aaa"), W("b")), cosets=(CosetFamily(W(""), W("a")),))
        assert canonicalize(raw).points == (W("b"),)

    def test_sorted(self):
        raw = SolutionSet(points=(W("ba"), W("b"), W("A")))
        assert [str(p) for p in canonicalize(raw).points] == ["A", "b", "ba"]


class TestSolve:
    def test_examples(self):
        assert shape(solve(S("xaaXAA"), 6)) == (False, [], [("1", "a")])
        assert shape(solve(S("xaXB"), 6)) == (False, [], [])
        assert shape(solve(S("xxAA"), 6)) == (False, ["a"], [])

    def test_full_and_constants(self):
        assert solve(S("xX")).full
        res = solve(S("a = b"))
        assert res.is_empty and res.diagnostics
        assert solve(S("xX", "a = a")).full

    def test_conjugate_coset(self):
        res = solve(S("x a X = B a b"))
        assert shape(res) == (False, [], [("B", "a")])
        assert res.stable

    def test_low_bound_diagnostic(self):
        res = solve(S("x abab = baba x"), 4)
        assert any("below twice" in d for d in res.diagnostics)

    def test_budget(self):
        res = solve(S("xaXA"), 8, budget=1000)
        assert res.bound < 8 and not res.stable
        assert any("budget" in d for d in res.diagnostics)

    def test_negative_bound(self):
        with pytest.raises(ValueError):
            solve(S("xa"), -1)

    @pytest.mark.parametrize("eqs", [
        ["xaXA"], ["xaaXAA"], ["xxAA"], ["xaXbaB"], ["xabX = ba"], ["xaXA xbXB"],
        ["x a x = a"], ["xaXA", "xxaXXA"], ["xxx = ababab"], ["xabXBA"],
    ])
    def test_sound_and_complete_in_ball(self, eqs):
        system = S(*eqs)
        res = solve(system, 6)
        for p in res.points:
            assert verify_point(system, p)
        for c in res.cosets:
            assert verify_family(system, c.rep, c.root)
            assert c.root == min(c.root, ~c.root)
        assert res.elements_within(6) == brute_force_variety(system, 6)
        assert not any(p in c for p in res.points for c in res.cosets)

    @pytest.mark.parametrize("eqs", [["xaXA"], ["xxAA"], ["xaXbaB"], ["xaXA xbXB"]])
    def test_conjugated_system_same_answer(self, eqs, rng):
        base = solve(S(*eqs), 6)
        for _ in range(3):
            c = random_word(rng, rng.randint(1, 3))
            conj = EquationSystem(tuple(t.conjugated(c) for t in S(*eqs).terms), 2)
            assert shape(solve(conj, 6)) == shape(base)


class TestSerialization:
    @pytest.mark.parametrize("eqs", [["xaXA"], ["xxAA"], ["xX"], ["xaXB"], ["xaXA xbXB"]])
    def test_round_trips(self, eqs):
        res = solve(S(*eqs), 6)
        data = json.loads(res.to_json())
        assert list(data) == ["rank", "bound", "full", "stable", "points", "cosets", "diagnostics"]
        assert SolutionSet.from_dict(data) == res
        assert SolutionSet.from_text(res.to_text()) == res
        assert SolutionSet.from_dict(data).to_text() == res.to_text()

    def test_text_format(self):
        text = solve(S("xaXA"), 6).to_text()
        assert text == "# rank=2 bound=6 stable=true\ncoset 1 a\n"
        assert solve(S("xaXB"), 6).to_text().endswith("empty\n")
