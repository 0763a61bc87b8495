import pytest

from ltloracle.checker import (
    Lasso,
    accepts_lasso_word,
    check,
    check_reference,
    eval_lasso,
    ltl_to_buchi,
    verify_counterexample,
)
from ltloracle.checker.suites import (
    FORMULA_TEMPLATES,
    exhaustive_kripke,
    random_instances,
    template_formulas,
)
from ltloracle.errors import MalformedLassoError, ResourceLimitError
from ltloracle.logic import (
    TRUE,
    Atom,
    GenSpec,
    KripkeStructure,
    Not,
    parse_ltl,
    random_formula,
    to_nnf,
)
from ltloracle.rng import SplitMix64

P = frozenset({"p"})
E = frozenset()


def random_lasso_words(count, seed, aps=("p0", "p1"), max_len=8):
    rng = SplitMix64(seed)
    for _ in range(count):
        n = rng.between(1, max_len)
        cut = rng.below(n)
        letters = [frozenset(a for a in aps if rng.random() < 0.5) for _ in range(n)]
        yield rng, letters[:cut], letters[cut:]


class TestBuchi:
    def test_true_accepts_everything(self):
        aut = ltl_to_buchi(TRUE)
        assert aut.acceptance == ()
        for _, stem, loop in random_lasso_words(50, 1):
            assert accepts_lasso_word(aut, stem, loop)

    def test_atom_language(self):
        aut = ltl_to_buchi(Atom("p0"))
        for _, stem, loop in random_lasso_words(1000, 2):
            assert accepts_lasso_word(aut, stem, loop) == eval_lasso(stem, loop, Atom("p0"))

    def test_globally(self):
        aut = ltl_to_buchi(parse_ltl("G p"))
        assert accepts_lasso_word(aut, [], [P])
        assert not accepts_lasso_word(aut, [], [P, E])

    def test_language_matches_lasso_evaluation(self):
        rng = SplitMix64(77)
        for i in range(1000):
            f = random_formula(GenSpec(seed=rng.next_u64(), ap_count=2, formula_length=rng.between(1, 10)))
            (_, stem, loop), = random_lasso_words(1, rng.next_u64())
            assert accepts_lasso_word(ltl_to_buchi(to_nnf(f)), stem, loop) == eval_lasso(stem, loop, f), f

    def test_requires_nnf(self):
        with pytest.raises(ValueError):
            ltl_to_buchi(parse_ltl("p -> q"))

    def test_resource_cap(self):
        f = to_nnf(parse_ltl("G F p & G F q & F G r & (p U (q U r))"))
        with pytest.raises(ResourceLimitError):
            ltl_to_buchi(f, state_cap=3)


class TestEvalLasso:
    def test_examples(self):
        assert eval_lasso([], [P], parse_ltl("G p"))
        assert eval_lasso([], [P, E], parse_ltl("G F p"))
        assert eval_lasso([E], [P], parse_ltl("true U p"))
        assert not eval_lasso([], [P, E], parse_ltl("F G p"))
        assert eval_lasso([P], [E], parse_ltl("X (G !p)"))
        assert eval_lasso([], [P, E], parse_ltl("false R (p | X p)"))

    def test_empty_loop_rejected(self):
        with pytest.raises(ValueError):
            eval_lasso([P], [], Atom("p"))


class TestCheck:
    def test_examples(self, self_loop_p, two_cycle):
        assert check(self_loop_p, parse_ltl("G p")).holds
        v = check(self_loop_p, parse_ltl("F (! p)"))
        assert not v.holds
        assert v.counterexample == Lasso((), (0,))
        assert check(two_cycle, parse_ltl("G (p -> X q)")).holds

    def test_reference_examples(self, self_loop_p, two_cycle):
        assert check_reference(self_loop_p, parse_ltl("G p")).holds
        assert not check_reference(self_loop_p, parse_ltl("F (! p)")).holds
        assert check_reference(two_cycle, parse_ltl("G (p -> X q)")).holds

    def test_two_cycle_by_path_analysis(self, two_cycle):
        # the only path is (pq)^omega: p at even, q at odd positions
        assert eval_lasso([], [frozenset({"p"}), frozenset({"q"})], parse_ltl("G (p -> X q)"))
        assert not check(two_cycle, parse_ltl("G p")).holds
        assert check(two_cycle, parse_ltl("G F q")).holds

    def test_true_holds_everywhere(self):
        for k in exhaustive_kripke(2):
            assert check_reference(k, TRUE).holds
            assert check(k, TRUE).holds

    def test_counterexamples_verify(self):
        for k, f in random_instances(300, seed=5):
            for verdict in (check(k, f), check_reference(k, f)):
                assert verify_counterexample(k, f, verdict.counterexample)
                assert (verdict.counterexample is None) == verdict.holds

    def test_agreement_on_sample(self):
        fs = template_formulas()
        for k in exhaustive_kripke(2):
            for f in fs:
                assert check(k, f, reuse_automata=True).holds == check_reference(k, f).holds

    def test_deterministic(self):
        for k, f in random_instances(100, seed=8):
            assert check(k, f) == check(k, f)
            assert check_reference(k, f) == check_reference(k, f)

    def test_negation_coherence_on_single_paths(self):
        rng = SplitMix64(21)
        for i in range(300):
            f = random_formula(GenSpec(seed=rng.next_u64(), ap_count=2, formula_length=rng.between(1, 12)))
            (_, stem, loop), = random_lasso_words(1, rng.next_u64())
            k = KripkeStructure.word_structure(stem, loop)
            k = KripkeStructure(k.n_states, k.initial, k.transitions, k.labels, ("p0", "p1"))
            assert check(k, f).holds != check(k, Not(f)).holds

    def test_product_cap(self):
        k = KripkeStructure.build([[0, 1, 2], [0, 1, 2], [0, 1, 2]], [{"p"}, set(), {"p"}], alphabet=["p"])
        with pytest.raises(ResourceLimitError):
            check(k, parse_ltl("G F p -> G F ! p"), state_cap=4)


class TestVerifyCounterexample:
    def test_holds_passes_vacuously(self, self_loop_p):
        assert verify_counterexample(self_loop_p, parse_ltl("G p"), None)

    def test_non_edge(self, two_cycle):
        with pytest.raises(MalformedLassoError):
            verify_counterexample(two_cycle, parse_ltl("G p"), Lasso((0,), (0,)))

    def test_loop_must_close(self, two_cycle):
        with pytest.raises(MalformedLassoError):
            verify_counterexample(two_cycle, parse_ltl("G p"), Lasso((), (0, 1, 0)))

    def test_must_start_initial(self, two_cycle):
        with pytest.raises(MalformedLassoError):
            verify_counterexample(two_cycle, parse_ltl("G p"), Lasso((), (1, 0)))

    def test_satisfying_lasso_is_not_a_counterexample(self, two_cycle):
        assert not verify_counterexample(two_cycle, parse_ltl("G F p"), Lasso((), (0, 1)))


class TestSuites:
    def test_catalog(self):
        assert len(FORMULA_TEMPLATES) == 30
        assert len(set(FORMULA_TEMPLATES)) == 30

    def test_exhaustive_counts(self):
        # one-state structures: self loop, labeled or not
        assert len(exhaustive_kripke(1)) == 2
        ks = exhaustive_kripke(3)
        assert all(k.n_states <= 3 for k in ks)
        assert len({(k.transitions, k.labels, k.initial) for k in ks}) == len(ks)
