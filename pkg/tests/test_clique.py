import random
from itertools import permutations

import pytest

from wordbench.core import ContractViolation, Pattern, Vocabulary, get_pattern
from wordbench.clique import (
    AnagramPlanner,
    CliqueSolveConfig,
    CliqueStepper,
    check_all_anagrams,
    clique_coverage,
    coverage_upper_bound,
    guess_remaining_words,
    plan_first_clique,
    process_cliques,
    select_best_clique,
    solve_clique,
)
from wordbench.graph import GraphRegime, find_k_cliques, form_graph
from wordbench.tracker import WordleTracker


def test_config_clique_size_start():
    assert CliqueSolveConfig(3).max_clique_size_start == 8
    assert CliqueSolveConfig(5).max_clique_size_start == 5
    assert CliqueSolveConfig(6).max_clique_size_start == 4
    cfg = CliqueSolveConfig(2, alphabet_size=6)
    assert cfg.max_clique_size_start == 3


def test_coverage_upper_bounds():
    assert coverage_upper_bound(4, 6, GraphRegime.HARD, 26) == 24
    assert coverage_upper_bound(8, 3, GraphRegime.HARD, 26) == 24
    assert coverage_upper_bound(5, 5, GraphRegime.SOFT, 26) == 21
    # capped by what is actually unseen
    assert coverage_upper_bound(4, 6, GraphRegime.HARD, 10) == 10


def test_select_best_clique_max_coverage_lex_tie():
    vocab = Vocabulary(["abc", "abd", "def", "ghi", "jkl"], 3)
    unseen = (1 << 26) - 1
    # jkl+ghi covers 6 unseen, abc+abd covers 4
    got = select_best_clique(iter([(0, 1), (2, 3), (3, 4)]), vocab, unseen)
    assert got == (2, 3)
    # tie between (2,3) and (3,4): first (lex smaller) wins
    assert clique_coverage((2, 3), vocab, unseen) == clique_coverage((3, 4), vocab, unseen)


def test_select_best_clique_early_stop_matches_full_scan():
    rng = random.Random(12)
    pool = ["".join(p) for p in permutations("abcdefghij", 3)]
    for _ in range(20):
        vocab = Vocabulary(rng.sample(pool, 30), 3)
        t = WordleTracker(vocab)
        g = form_graph(t)
        cliques = [c.members for c in find_k_cliques(g, 3)]
        if not cliques:
            continue
        unseen = t.unseen_mask()
        ub = coverage_upper_bound(3, 3, g.regime, 26)
        streamed = select_best_clique(iter(cliques), vocab, unseen, ub)
        full = min(cliques, key=lambda m: (-clique_coverage(m, vocab, unseen), m))
        assert streamed == full


def test_planner_spec_rotation_example():
    # letters {a,b,c}, hidden "cab": start "abc", then the rotation lands on it
    planner = AnagramPlanner({"a", "b", "c"}, 3, {})
    assert planner.peek() == "abc"
    planner.observe("abc", get_pattern("abc", "cab"))
    assert planner.peek() == "cab"


def test_planner_respects_initial_pins():
    planner = AnagramPlanner({"a", "b", "c"}, 3, {1: "a"})
    assert planner.peek() == "bac"  # 'a' pinned at slot 1, rest sorted into open slots


def test_planner_deduces_slot_by_elimination():
    planner = AnagramPlanner({"a", "b", "c"}, 3, {})
    planner.observe("abc", Pattern.from_text("XGX"))
    # b pinned green at slot 1; a failed slot 0 -> a must sit at 2, c at 0
    assert planner.solved_layout
    assert planner.peek() == "cba"


def test_planner_bound_exhaustive_small_lengths():
    for l in (2, 3, 4):
        letters = "abcdef"[:l]
        for hidden in ("".join(p) for p in permutations(letters)):
            planner = AnagramPlanner(set(letters), l, {})
            guesses = 0
            while True:
                text = planner.peek()
                guesses += 1
                pat = get_pattern(text, hidden)
                if pat.is_all_green:
                    break
                planner.observe(text, pat)
            assert guesses <= l, (hidden, guesses)


def test_planner_rejects_incomplete_letters():
    with pytest.raises(ContractViolation):
        AnagramPlanner({"a", "b"}, 3, {})


def test_process_cliques_picks_highest_coverage():
    vocab = Vocabulary(["abc", "def", "ghi", "abd", "abe"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("ghi")
    log = []
    # sorted indices: abc=0 abd=1 abe=2 def=3 ghi=4
    process_cliques([(0, 1), (0, 3, 4)], t, hidden, log)
    # the 9-letter triple beats the 4-letter overlapping pair
    assert [r.guess for r in log] == ["abc", "def", "ghi"]
    assert log[-1].pattern.is_all_green


def test_process_cliques_stops_early_on_hit():
    vocab = Vocabulary(["abc", "def", "ghi"], 3)
    t = WordleTracker(vocab)
    log = []
    process_cliques([(0, 1, 2)], t, vocab.lookup("def"), log)
    assert [r.guess for r in log] == ["abc", "def"]


def test_process_cliques_updates_after_each_guess():
    vocab = Vocabulary(["abc", "def", "ghi", "gde"], 3)
    t = WordleTracker(vocab)
    process_cliques([(0, 1)], t, vocab.lookup("ghi"))
    assert t.words_guessed == [0, 1]
    assert t.grey_letters == {"a", "b", "c", "d", "e", "f"}
    assert "a" not in t.unseen_chars
    # gde shares grey letters: discarded already
    assert vocab.lookup("gde").index in t.discarded_words


def test_process_cliques_requires_nonempty():
    vocab = Vocabulary(["abc"], 3)
    with pytest.raises(ContractViolation):
        process_cliques([], WordleTracker(vocab), vocab[0])


def test_check_all_anagrams_early_return():
    vocab = Vocabulary(["abc", "bca"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("abc")
    t.observe(hidden, get_pattern(hidden, hidden))
    before = t.to_json()
    out = check_all_anagrams(t, hidden)
    assert out.to_json() == before


def test_check_all_anagrams_requires_all_letters():
    vocab = Vocabulary(["abc", "abd"], 3)
    t = WordleTracker(vocab)
    with pytest.raises(ContractViolation):
        check_all_anagrams(t, vocab.lookup("abc"))


def test_check_all_anagrams_free_guesses_solve():
    vocab = Vocabulary(["abc", "cab", "xyz"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("cab")
    t.observe(vocab.lookup("abc"), get_pattern("abc", hidden))
    log = []
    check_all_anagrams(t, hidden, log=log)
    assert log[-1].pattern.is_all_green
    assert len(log) <= 3
    assert all(r.phase == "anagram" for r in log)


def test_check_all_anagrams_strict_stays_in_vocab():
    vocab = Vocabulary(["abc", "acb", "bac", "bca", "cab", "cba", "xyz"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("cba")
    t.observe(vocab.lookup("abc"), get_pattern("abc", hidden))
    log = []
    check_all_anagrams(t, hidden, strict_vocab=True, log=log)
    assert log[-1].guess == "cba"
    for r in log:
        assert r.legal_word and r.guess in vocab
    # index order among non-discarded anagrams
    texts = [r.guess for r in log]
    assert texts == sorted(texts)


def test_guess_remaining_single_candidate():
    vocab = Vocabulary(["abc", "abd", "aef"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("abd")
    t.discarded_words = {0, 2}
    log = []
    guess_remaining_words(t, hidden, log=log)
    assert [r.guess for r in log] == ["abd"]


def test_guess_remaining_spec_trace():
    vocab = Vocabulary(["abc", "abd", "aef"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("aef")
    log = []
    guess_remaining_words(t, hidden, log=log)
    # "abc" greys b,c which discards "abd"; "aef" then solves
    assert [r.guess for r in log] == ["abc", "aef"]


def test_guess_remaining_delegates_to_anagrams():
    vocab = Vocabulary(["abc", "bca", "cab", "xyz"], 3)
    t = WordleTracker(vocab)
    hidden = vocab.lookup("cab")
    log = []
    guess_remaining_words(t, hidden, log=log)
    assert log[0].guess == "abc" and log[0].phase == "remaining"
    assert all(r.phase == "anagram" for r in log[1:])
    assert log[-1].pattern.is_all_green


def test_solve_clique_planted_disjoint_family_covers_24_letters():
    planted = ["abcdef", "ghijkl", "mnopqr", "stuvwx"]
    extra = ["abcdeg", "ghijkm", "mnopqs", "acegik", "bdfhjl"]
    vocab = Vocabulary(planted + extra, 6)
    hidden = vocab.lookup("bdfhjl")
    t = solve_clique(vocab, hidden, use_first_plan_cache=False)
    first_four = t.guesses()[:4]
    assert set(first_four) == set(planted)
    letters = set("".join(first_four))
    assert len(letters) == 24


def test_solve_clique_no_edges_goes_remaining():
    # every pair shares two letters: no graph at all
    vocab = Vocabulary(["abc", "abd", "abe", "abf"], 3)
    hidden = vocab.lookup("abe")
    t = solve_clique(vocab, hidden, use_first_plan_cache=False)
    assert all(r.phase in ("remaining", "anagram") for r in t.rows)
    assert t.outcome.is_solved
    assert t.rows[-1].guess == "abe"


def test_solve_clique_exhaustive_small_vocab():
    rng = random.Random(3)
    pool = ["".join(p) for p in permutations("abcdefghij", 3)]
    vocab = Vocabulary(rng.sample(pool, 50), 3)
    for hidden in vocab.words:
        t = solve_clique(vocab, hidden)
        assert t.outcome.is_solved
        assert t.rows[-1].guess == hidden.text
        assert t.outcome.num_moves == len(t.rows)


def test_solve_clique_strict_mode_all_guesses_legal():
    rng = random.Random(5)
    pool = ["".join(p) for p in permutations("abcdefgh", 3)]
    vocab = Vocabulary(rng.sample(pool, 40), 3)
    cfg = CliqueSolveConfig.for_vocab(vocab, strict_vocab_anagrams=True)
    for hidden in rng.sample(vocab.words, 10):
        t = solve_clique(vocab, hidden, cfg)
        assert t.outcome.is_solved
        for r in t.rows:
            assert r.legal_word and r.guess in vocab


def test_solve_clique_hidden_retention_and_shrinkage():
    rng = random.Random(7)
    pool = ["".join(p) for p in permutations("abcdefghi", 3)]
    vocab = Vocabulary(rng.sample(pool, 45), 3)
    for hidden in rng.sample(vocab.words, 12):
        stepper = CliqueStepper(vocab)
        prev_remaining = stepper.tracker.remaining_count()
        while not stepper.done:
            s = stepper.next_guess()
            stepper.observe(s.text, get_pattern(s.text, hidden))
            assert hidden.index not in stepper.tracker.discarded_words or \
                stepper.guessed_texts[-1] == hidden.text or hidden.text in stepper.guessed_texts
            cur = stepper.tracker.remaining_count()
            assert cur <= prev_remaining
            prev_remaining = cur


def test_stepper_matches_composed_algorithm():
    # reference composition: form graph, find all k-cliques, process, finish
    rng = random.Random(21)
    pool = ["".join(p) for p in permutations("abcdefghij", 3)]
    for trial in range(8):
        vocab = Vocabulary(rng.sample(pool, 35), 3)
        cfg = CliqueSolveConfig.for_vocab(vocab)
        for hidden in rng.sample(vocab.words, 6):
            log = []
            tracker = WordleTracker(vocab)
            l = vocab.word_length
            while len(tracker.letters_found) != l:
                g = form_graph(tracker)
                if not g.edge_exists:
                    break
                chosen = None
                for k in range(cfg.max_clique_size_start, cfg.min_clique_size - 1, -1):
                    cliques = find_k_cliques(g, k)
                    if cliques:
                        chosen = cliques
                        break
                if chosen is None:
                    break
                process_cliques(chosen, tracker, hidden, log)
            if not (log and log[-1].pattern.is_all_green):
                if tracker.letters_found == set(hidden.text):
                    check_all_anagrams(tracker, hidden, log=log)
                else:
                    guess_remaining_words(tracker, hidden, log=log)
            want = [(r.guess, r.pattern.code, r.phase) for r in log]
            got_t = solve_clique(vocab, hidden, use_first_plan_cache=False)
            got = [(r.guess, r.pattern.code, r.phase) for r in got_t.rows]
            assert got == want


def test_first_plan_cache_computed_once(monkeypatch):
    import wordbench.clique as cq

    rng = random.Random(90)
    pool = ["".join(p) for p in permutations("abcdefghijk", 3)]
    vocab = Vocabulary(rng.sample(pool, 40), 3)
    calls = {"n": 0}
    real = cq._search_clique

    def counted(tracker, cfg):
        calls["n"] += 1
        return real(tracker, cfg)

    monkeypatch.setattr(cq, "_search_clique", counted)
    cfg = CliqueSolveConfig.for_vocab(vocab)
    a = plan_first_clique(vocab, cfg)
    b = plan_first_clique(vocab, cfg)
    assert a == b and a is not None
    assert calls["n"] == 1


def test_solve_clique_rejects_foreign_hidden():
    vocab = Vocabulary(["abc", "abd"], 3)
    other = Vocabulary(["xyz"], 3)
    with pytest.raises(ContractViolation):
        solve_clique(vocab, other[0])
