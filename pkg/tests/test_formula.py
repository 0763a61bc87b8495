import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ltloracle.errors import ImpossibleLengthError, LtlSyntaxError, UnknownAtomError
from ltloracle.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Finally,
    GenSpec,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    TrueConst,
    FalseConst,
    Until,
    format_ltl,
    formula_depth,
    formula_length,
    is_nnf,
    parse_ltl,
    random_formula,
    to_nnf,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestParse:
    def test_globally(self):
        assert parse_ltl("G p", ["p"]) == Globally(p)

    def test_until_next(self):
        assert parse_ltl("p U (X q)", ["p", "q"]) == Until(p, Next(q))

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError) as err:
            parse_ltl("G (p -> X q)", ["p"])
        assert err.value.name == "q"

    @pytest.mark.parametrize("text, expected", [
        ("p U q U r", Until(p, Until(q, r))),
        ("p -> q -> r", Implies(p, Implies(q, r))),
        ("p & q | r", Or(And(p, q), r)),
        ("p | q & r", Or(p, And(q, r))),
        ("p U q & r", And(Until(p, q), r)),
        ("!p U q", Until(Not(p), q)),
        ("X p R q", Release(Next(p), q)),
        ("G F p", Globally(Finally(p))),
        ("p & q -> r | p", Implies(And(p, q), Or(r, p))),
        ("true U false", Until(TRUE, FALSE)),
        ("TRUE", TRUE),
        ("((p))", p),
    ])
    def test_precedence_and_associativity(self, text, expected):
        assert parse_ltl(text) == expected

    @pytest.mark.parametrize("text, position", [
        ("p U", 3),
        ("(p & q", 6),
        ("p q", 2),
        ("p $ q", 2),
        ("", 0),
    ])
    def test_syntax_error_positions(self, text, position):
        with pytest.raises(LtlSyntaxError) as err:
            parse_ltl(text)
        assert err.value.position == position

    def test_identifiers_with_digits_and_underscores(self):
        assert parse_ltl("a_1 U b2") == Until(Atom("a_1"), Atom("b2"))

    def test_uppercase_operator_needs_separation(self):
        with pytest.raises(LtlSyntaxError):
            parse_ltl("Gp0")


class TestFormat:
    def test_canonical_forms(self):
        assert format_ltl(Globally(p)) == "(G p)"
        assert format_ltl(Until(p, q)) == "(p U q)"
        assert format_ltl(Not(p)) == "(! p)"
        assert format_ltl(Implies(TRUE, FALSE)) == "(true -> false)"

    def test_deterministic(self):
        f = parse_ltl("G (p -> X q) | r R p")
        assert format_ltl(f) == format_ltl(parse_ltl(format_ltl(f)))

    def test_round_trip_1000_random_formulas(self):
        for seed in range(1000):
            spec = GenSpec(seed=seed, ap_count=3, formula_length=1 + seed % 40)
            f = random_formula(spec)
            assert parse_ltl(format_ltl(f), ["p0", "p1", "p2"]) == f

    def test_deep_formula_round_trip(self):
        f = p
        for _ in range(600):
            f = Globally(f)
        text = format_ltl(f)
        # structural == on a 600-deep chain would exhaust the interpreter stack
        assert format_ltl(parse_ltl(text)) == text
        assert formula_length(parse_ltl(text)) == 601


class TestLength:
    def test_atom(self):
        assert formula_length(p) == 1
        assert formula_depth(p) == 1

    def test_until_next(self):
        f = Until(p, Next(q))
        assert formula_length(f) == 4
        assert formula_depth(f) == 3


class TestNNF:
    def test_dualities(self):
        assert to_nnf(Not(Globally(p))) == Finally(Not(p))
        assert to_nnf(Not(Until(p, q))) == Release(Not(p), Not(q))
        assert to_nnf(Not(Not(p))) == p
        assert to_nnf(Not(Next(p))) == Next(Not(p))
        assert to_nnf(Implies(p, q)) == Or(Not(p), q)
        assert to_nnf(Not(TRUE)) == FALSE

    def test_no_implies_no_inner_negation(self):
        for seed in range(500):
            f = random_formula(GenSpec(seed=seed, formula_length=25))
            g = to_nnf(f)
            assert is_nnf(g)
            assert is_nnf(to_nnf(Not(f)))

    def test_is_nnf_rejects(self):
        assert not is_nnf(Implies(p, q))
        assert not is_nnf(Not(Globally(p)))
        assert is_nnf(Not(p))


class TestRandomFormula:
    def test_length_one_is_a_leaf(self):
        for seed in range(50):
            f = random_formula(GenSpec(seed=seed, formula_length=1))
            assert isinstance(f, (Atom, TrueConst, FalseConst))

    def test_deterministic(self):
        spec = GenSpec(seed=99, formula_length=25)
        assert random_formula(spec) == random_formula(spec)

    def test_length_25_exact(self):
        for seed in range(500):
            assert formula_length(random_formula(GenSpec(seed=seed, formula_length=25))) == 25

    @pytest.mark.slow
    def test_length_500_point_mass(self):
        lengths = {formula_length(random_formula(GenSpec(seed=s, formula_length=500)))
                   for s in range(10_000)}
        assert lengths == {500}

    def test_atoms_from_alphabet(self):
        f = random_formula(GenSpec(seed=5, formula_length=60), ["a", "b"])
        names = {n for n in format_ltl(f).replace("(", " ").replace(")", " ").split() if n.islower()}
        assert names <= {"a", "b", "true", "false"}

    def test_binary_only_even_length_impossible(self):
        spec = GenSpec(seed=1, formula_length=4, operator_weights={"atom": 1, "and": 1})
        with pytest.raises(ImpossibleLengthError):
            random_formula(spec)
        spec = GenSpec(seed=1, formula_length=5, operator_weights={"atom": 1, "and": 1})
        assert formula_length(random_formula(spec)) == 5

    @settings(max_examples=200, deadline=None)
    @given(seed=st.integers(0, 2**64 - 1), length=st.integers(1, 120))
    def test_length_exact_property(self, seed, length):
        assert formula_length(random_formula(GenSpec(seed=seed, formula_length=length))) == length
