import itertools
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from explab import codes, graphs, oracle
from explab.errors import (
    CounterexampleFound,
    EmptyRange,
    InvalidInput,
    TooLarge,
)

F = Fraction


def brute_min_ratio(b, alpha, punctured=False):
    """Literal itertools reference: min |boundary|/|S| over subsets of size
    <= floor(alpha * n_in); ties broken by the smallest subset bitmask."""
    import math

    cap = math.floor(alpha * b.n_in)
    best = None
    for size in range(1, cap + 1):
        for combo in itertools.combinations(range(b.n_in), size):
            outs = set()
            for i in combo:
                outs.update(b.nbrs[i])
            if punctured:
                outs -= set(combo)
            key = (F(len(outs), size), sum(1 << i for i in combo))
            if best is None or key < best:
                best = key
    return best


# ---------------------------------------------------------------------------
# exact expansion
# ---------------------------------------------------------------------------

def test_h_k4_expansion_frozen(h_k4):
    ratio, wit = oracle.exact_expansion(h_k4, F(1, 3))
    assert ratio == F(3, 2)
    assert wit.members() == (0, 1)
    assert wit.boundary_size == 3 and wit.size == 2


def test_expansion_matches_reference(h_k4):
    for alpha in (F(1, 6), F(1, 4), F(1, 3), F(1, 2), F(1)):
        fast = oracle.exact_expansion(h_k4, alpha)
        slow = oracle.exact_expansion_reference(h_k4, alpha)
        assert fast[0] == slow[0]
        assert fast[1].subset == slow[1].subset


def test_expansion_matches_brute(h_k4):
    for alpha in (F(1, 4), F(1, 2), F(2, 3)):
        ratio, wit = oracle.exact_expansion(h_k4, alpha)
        want_ratio, want_mask = brute_min_ratio(h_k4, alpha)
        assert ratio == want_ratio
        assert wit.subset == want_mask


@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(4, 7), st.data())
@settings(max_examples=30, deadline=None)
def test_expansion_random_bipartite_cross_check(seed, c, n_out, data):
    """Vectorized enumerator vs the scalar Gray-code route on random
    (c, *)-regular-input bipartite graphs."""
    rng = graphs.SplitMix64(seed)
    n_in = data.draw(st.integers(3, 10))
    nbrs = []
    for _ in range(n_in):
        outs = list(range(n_out))
        rng.shuffle(outs)
        nbrs.append(tuple(sorted(outs[:c])))
    # output degrees are irregular here; bypass the constructor check by
    # testing through the mask interface of a wrapper graph when invalid
    try:
        b = graphs.BipartiteGraph(n_in, n_out, tuple(nbrs))
    except Exception:
        return  # irregular outputs: not this test's subject
    alpha = data.draw(st.sampled_from([F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1)]))
    try:
        fast = oracle.exact_expansion(b, alpha)
        slow = oracle.exact_expansion_reference(b, alpha)
    except EmptyRange:
        return
    assert fast[0] == slow[0]
    assert fast[1].subset == slow[1].subset


def test_expansion_multi_equals_single(h_k8, standard_alphas):
    multi = oracle.exact_expansion_multi(h_k8, standard_alphas, max_inputs=28)
    for alpha in standard_alphas:
        single = oracle.exact_expansion(h_k8, alpha, max_inputs=28)
        assert multi[alpha][0] == single[0]
        assert multi[alpha][1].subset == single[1].subset


def test_h_k8_frozen_values(h_k8, standard_alphas):
    multi = oracle.exact_expansion_multi(h_k8, standard_alphas, max_inputs=28)
    assert multi[F(1, 2)][0] == F(3, 7)
    assert multi[F(1, 3)][0] == F(5, 9)
    assert multi[F(1, 4)][0] == F(2, 3)


def test_expansion_tie_break_smallest_mask():
    # complete bipartite 3x3 with c=3: every single input covers everything,
    # all subsets tie at ratio 3/size; witness must be the lexicographically
    # smallest bitmask among minimizers
    b = graphs.BipartiteGraph(3, 3, ((0, 1, 2),) * 3)
    ratio, wit = oracle.exact_expansion(b, F(1))
    assert ratio == F(1)
    assert wit.subset == 0b111
    ratio2, wit2 = oracle.exact_expansion(b, F(2, 3))
    assert ratio2 == F(3, 2)
    assert wit2.subset == 0b011


def test_expansion_empty_range(h_k4):
    with pytest.raises(EmptyRange):
        oracle.exact_expansion(h_k4, F(1, 7))


def test_expansion_alpha_validation(h_k4):
    with pytest.raises(InvalidInput):
        oracle.exact_expansion(h_k4, F(0))
    with pytest.raises(InvalidInput):
        oracle.exact_expansion(h_k4, F(3, 2))


def test_expansion_too_large(h_k8):
    with pytest.raises(TooLarge):
        oracle.exact_expansion(h_k8, F(1, 2))  # default cap is 24 < 28


def test_exact_delta_equals_expansion(h_k4):
    assert oracle.exact_delta(h_k4, F(1, 2)) == oracle.exact_expansion(h_k4, F(1, 2))[0]


def test_thread_count_does_not_change_answers(h_k8, standard_alphas):
    base = oracle.exact_expansion_multi(h_k8, standard_alphas, max_inputs=28)
    os.environ["EXPLAB_THREADS"] = "3"
    try:
        threaded = oracle.exact_expansion_multi(h_k8, standard_alphas,
                                                max_inputs=28)
    finally:
        del os.environ["EXPLAB_THREADS"]
    for alpha in standard_alphas:
        assert base[alpha][0] == threaded[alpha][0]
        assert base[alpha][1].subset == threaded[alpha][1].subset


# ---------------------------------------------------------------------------
# vertex expansion
# ---------------------------------------------------------------------------

def test_vertex_expansion_k4(k4):
    ratio, wit = oracle.exact_vertex_expansion(k4, F(1, 2))
    assert ratio == F(2)
    p_ratio, _ = oracle.exact_vertex_expansion(k4, F(1, 2), punctured=True)
    assert p_ratio == F(1)  # pair boundary minus itself: the other 2 vertices


def test_vertex_expansion_matches_brute(petersen):
    import math

    alpha = F(3, 10)
    ratio, wit = oracle.exact_vertex_expansion(petersen, alpha, punctured=True)
    cap = math.floor(alpha * petersen.n)
    best = None
    for size in range(1, cap + 1):
        for combo in itertools.combinations(range(petersen.n), size):
            outs = graphs.star_boundary(petersen, combo)
            r = F(len(outs), size)
            best = r if best is None or r < best else best
    assert ratio == best


# ---------------------------------------------------------------------------
# sampled expansion
# ---------------------------------------------------------------------------

def test_sampled_expansion_is_upper_estimate(h_k4):
    exact, _ = oracle.exact_expansion(h_k4, F(1, 2))
    est = oracle.sampled_expansion(h_k4, F(1, 2), samples=2000, seed=1)
    assert est["exhaustive"] is False
    assert est["ratio_upper_estimate"] >= exact


def test_sampled_expansion_deterministic(h_k8):
    a = oracle.sampled_expansion(h_k8, F(1, 2), samples=300, seed=9)
    b = oracle.sampled_expansion(h_k8, F(1, 2), samples=300, seed=9)
    assert a == b


# ---------------------------------------------------------------------------
# subset verifiers
# ---------------------------------------------------------------------------

def test_alon_chung_k4_exact_all_tight(k4):
    rep = oracle.verify_alon_chung(
        k4, exact_spectrum=(F(-1), F(-1), F(1)), instance="K4")
    assert rep.ok and not rep.violations
    assert rep.checked == 15  # nonempty proper-and-full subsets of 4 vertices
    # gamma = 1/2: every pair attains the two-sided bound with equality
    pair_tight = [w for w in rep.tight_witnesses if w["size"] == 2]
    assert len(pair_tight) >= 2  # min and max ends both tight


def test_alon_chung_float_corpus():
    for name, g in graphs.corpus_small(include_random=False)[:12]:
        rep = oracle.verify_alon_chung(g, instance=name)
        assert rep.ok, name


def test_alon_chung_rejects_false_spectrum(k4):
    """Feeding a mu that is too small must produce counterexamples: the
    verifier is not vacuous."""
    with pytest.raises(CounterexampleFound) as exc:
        oracle.verify_alon_chung(k4, exact_spectrum=(F(-1), F(-1), F(1, 4)))
    rep = exc.value.report
    assert rep is not None and rep.violations


def test_nbhd_k4_exact(k4):
    rep = oracle.verify_nbhd_and_boundary(
        k4, exact_spectrum=(F(-1), F(-1), F(1)), instance="K4")
    assert rep.ok
    # the pair subsets attain sum |S cap N(v)|^2 = 10 = D|S| exactly
    assert any(w["size"] == 2 for w in rep.tight_witnesses)


def test_nbhd_rejects_false_spectrum(k4):
    with pytest.raises(CounterexampleFound):
        oracle.verify_nbhd_and_boundary(k4, exact_spectrum=(F(-1), F(-1), F(1, 8)))


def test_nbhd_float_corpus():
    for name, g in graphs.corpus_small(include_random=False)[:12]:
        rep = oracle.verify_nbhd_and_boundary(g, instance=name)
        assert rep.ok, name


def test_verifier_report_shape(k4):
    rep = oracle.verify_alon_chung(k4, exact_spectrum=(F(-1), F(-1), F(1)),
                                   instance="K4")
    j = rep.to_json()
    assert j["instance"] == "K4"
    assert j["violations"] == []
    assert isinstance(j["tight_witnesses"], list)
    assert j["checked"] > 0


def test_verifier_rejects_oversized(petersen):
    big = graphs.gen_random_regular(22, 3, seed=1)
    with pytest.raises(TooLarge):
        oracle.verify_alon_chung(big)


def test_k4_nbhd_pair_value_is_ten(k4):
    # direct recomputation of the tight case: S = {0,1} in K4,
    # sum over vertices of |S cap N(v)|^2 = 1+1+4+4 = 10
    s = {0, 1}
    total = sum(len(s & set(k4.adj[v])) ** 2 for v in range(4))
    assert total == 10
    d_coeff = F(1, 2) * (9 - 1) + 1  # alpha(d^2 - mu^2) + mu^2 = 5
    assert total == d_coeff * len(s)


# ---------------------------------------------------------------------------
# minimum distance
# ---------------------------------------------------------------------------

def test_min_distance_known_codes():
    assert oracle.min_distance_bruteforce(codes.code_repetition(5)) == 5
    assert oracle.min_distance_bruteforce(codes.code_parity(6, None)) == 2
    assert oracle.min_distance_bruteforce(codes.code_hamming74()) == 3


def test_min_distance_generic_field_path():
    from explab import fields

    f4 = fields.field_make(2, 2)
    rs = codes.code_rs(4, 2, f4)
    assert oracle.min_distance_bruteforce(rs) == 3
    f5 = fields.field_make(5)
    rs5 = codes.code_rs(5, 3, f5)
    assert oracle.min_distance_bruteforce(rs5) == 3  # MDS: n - k + 1


def test_min_distance_matches_codeword_enumeration():
    code = codes.code_hamming74()
    want = min(sum(1 for x in w if x) for w in code.codewords()
               if any(w))
    assert oracle.min_distance_bruteforce(code) == want


def test_min_distance_rejects_zero_k():
    import warnings

    from explab import fields

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        empty = codes.code_from_parity_check(
            fields.field_make(2), codes._identity(3), 3, allow_empty=True)
    with pytest.raises(InvalidInput):
        oracle.min_distance_bruteforce(empty)


def test_min_distance_word_cap():
    code = codes.code_full(30, None)
    with pytest.raises(TooLarge):
        oracle.min_distance_bruteforce(code, max_words=1 << 20)
