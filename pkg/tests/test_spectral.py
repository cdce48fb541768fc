import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from explab import graphs, spectral
from explab.errors import DisconnectedWarning, NotSymmetric, TooLarge


def charpoly_int(a):
    """Characteristic polynomial of an integer matrix, exact, via
    Faddeev-LeVerrier over Fractions. Returns coefficients of
    det(xI - A) from x^n down to x^0."""
    n = a.shape[0]
    m = [[Fraction(int(a[i, j])) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A*M_{k-1} + c_{k-1} I ; c_k = -tr(A*M_k)/k
        am = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[-1]
        tr = sum(sum(m[i][t] * am[t][i] for t in range(n)) for i in range(n))
        coeffs.append(-tr / k)
        mk = am
    return coeffs


def eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# eigenvalue solver
# ---------------------------------------------------------------------------

def test_solver_matches_numpy_on_corpus():
    for name, g in graphs.corpus_small(include_random=False):
        a = graphs.adjacency_matrix(g).astype(float)
        ours = np.array(spectral.symmetric_eigenvalues(a))
        ref = np.linalg.eigvalsh(a)[::-1]
        assert np.max(np.abs(ours - ref)) < 1e-9, name


@given(st.integers(0, 10**6), st.integers(2, 12))
@settings(max_examples=25, deadline=None)
def test_solver_matches_numpy_random_symmetric(seed, n):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n))
    m = m + m.T
    ours = np.array(spectral.symmetric_eigenvalues(m))
    ref = np.linalg.eigvalsh(m)[::-1]
    assert np.max(np.abs(ours - ref)) < 1e-8 * max(1.0, np.abs(m).max())


def test_solver_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        spectral.symmetric_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_solver_rejects_oversize():
    with pytest.raises(TooLarge):
        spectral.symmetric_eigenvalues(np.zeros((513, 513)))


def test_solver_diagonal_fastpath():
    vals = spectral.symmetric_eigenvalues(np.diag([3.0, -1.0, 2.0]))
    assert vals == [3.0, 2.0, -1.0]


def test_solver_1x1():
    assert spectral.symmetric_eigenvalues(np.array([[7.0]])) == [7.0]


# ---------------------------------------------------------------------------
# known spectra
# ---------------------------------------------------------------------------

def test_complete_graph_spectrum(k4):
    _, spec = spectral.mu(k4)
    assert abs(spec.lambda_top - 3) < 1e-9
    for v in spec.eigenvalues[1:]:
        assert abs(v + 1) < 1e-9


def test_cycle_spectrum_cosines():
    for n in (4, 5, 6, 7):
        g = graphs.gen_cycle(n)
        _, spec = spectral.mu(g)
        expected = sorted((2 * math.cos(2 * math.pi * j / n) for j in range(n)),
                          reverse=True)
        for got, want in zip(spec.eigenvalues, expected):
            assert abs(got - want) < 1e-9


def test_petersen_spectrum_exact_charpoly(petersen):
    """Petersen eigenvalues {3, 1^5, (-2)^4} certified by an exact integer
    characteristic polynomial, then matched against the float solver."""
    a = graphs.adjacency_matrix(petersen)
    coeffs = charpoly_int(a)
    # (x-3)(x-1)^5(x+2)^4 has integer coefficients; check the roots exactly
    assert eval_poly(coeffs, Fraction(3)) == 0
    assert eval_poly(coeffs, Fraction(1)) == 0
    assert eval_poly(coeffs, Fraction(-2)) == 0
    # multiplicities via derivative-free counting on the float side
    muv, spec = spectral.mu(petersen)
    rounded = sorted(round(v) for v in spec.eigenvalues)
    assert rounded == [-2] * 4 + [1] * 5 + [3]
    assert abs(muv - 2.0) < 1e-9


def test_mu_values():
    cases = [
        (graphs.gen_complete(4), 1.0),
        (graphs.gen_cycle(5), 2 * math.cos(math.pi / 5)),  # |lambda_min| = phi
        (graphs.gen_petersen(), 2.0),
        (graphs.gen_paley(13), (1 + math.sqrt(13)) / 2),
    ]
    for g, want in cases:
        muv, _ = spectral.mu(g)
        assert abs(muv - want) < 1e-8


def test_c5_mu_is_golden_ratio():
    muv, _ = spectral.mu(graphs.gen_cycle(5))
    assert abs(muv - (math.sqrt(5) + 1) / 2 + 1) < 1e-9 or \
        abs(muv - 1.6180339887498949) < 1e-8


def test_mu_degenerate_bipartite():
    # even cycles are bipartite: lambda_min = -d, mu = d
    muv, spec = spectral.mu(graphs.gen_cycle(6))
    assert abs(muv - 2.0) < 1e-9
    assert abs(spec.lambda_min + 2.0) < 1e-9


def test_disconnected_warns():
    g = graphs.graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    with pytest.warns(DisconnectedWarning):
        spectral.graph_spectrum(g)


def test_spectrum_json(k4):
    _, spec = spectral.mu(k4)
    j = spec.to_json()
    assert set(j) >= {"eigenvalues", "mu"}
    assert len(j["eigenvalues"]) == 4


# ---------------------------------------------------------------------------
# edge-vertex spectrum identities
# ---------------------------------------------------------------------------

def test_edge_vertex_mtm_identity_exact():
    for g in (graphs.gen_complete(4), graphs.gen_cycle(5), graphs.gen_petersen()):
        rep = spectral.edge_vertex_spectrum_check(g)
        assert rep.mtm_identity_exact


def test_edge_vertex_lambda_top_is_sqrt_2d():
    for g, d in ((graphs.gen_complete(4), 3), (graphs.gen_cycle(5), 2),
                 (graphs.gen_petersen(), 3)):
        rep = spectral.edge_vertex_spectrum_check(g)
        assert abs(rep.lambda_top - math.sqrt(2 * d)) < 1e-8
        assert rep.lambda_top_matches


def test_edge_vertex_spectrum_formula():
    """spectrum(H) = {±sqrt(d + lambda_i(G))} plus dn/2 - n zeros."""
    for g in (graphs.gen_complete(4), graphs.gen_cycle(5), graphs.gen_cycle(6),
              graphs.gen_petersen()):
        rep = spectral.edge_vertex_spectrum_check(g)
        assert rep.spectrum_formula_matches


def test_edge_vertex_mu_is_sqrt_d_plus_lambda1():
    """The second singular direction comes from lambda_1, not from mu."""
    cases = [
        (graphs.gen_complete(4), 3, -1.0),   # lambda_1(K4) = -1
        (graphs.gen_cycle(5), 2, 2 * math.cos(2 * math.pi / 5)),
        (graphs.gen_petersen(), 3, 1.0),
    ]
    for g, d, lam1 in cases:
        rep = spectral.edge_vertex_spectrum_check(g)
        assert abs(rep.mu_h - math.sqrt(d + lam1)) < 1e-8
        assert rep.mu_corrected_exact
        assert rep.mu_below_claim  # <= sqrt(d + mu) always holds


def test_edge_vertex_mu_claim_fails_on_absolute_value_graphs():
    """For graphs where |lambda_min| > lambda_1 the sqrt(d + mu) value is
    strictly above the true mu(H); the report records the miss instead of
    papering over it."""
    expected_gap = [
        (graphs.gen_complete(4), 2.0, math.sqrt(2)),
        (graphs.gen_cycle(5), math.sqrt(2 + (1 + math.sqrt(5)) / 2), None),
        (graphs.gen_petersen(), math.sqrt(5), 2.0),
    ]
    for g, claim, truth in expected_gap:
        rep = spectral.edge_vertex_spectrum_check(g)
        assert abs(rep.claimed_mu - claim) < 1e-8
        assert not rep.mu_claim_exact
        if truth is not None:
            assert abs(rep.mu_h - truth) < 1e-8


def test_edge_vertex_mu_claim_holds_iff_lambda1_equals_mu():
    """mu_claim_exact marks exactly the lambda_1 = mu graphs. A disconnected
    regular graph has lambda_1 = d = mu, making claim and corrected value
    coincide at sqrt(2d) — with multiplicity, which the extraction must not
    swallow."""
    two_k4 = graphs.graph_from_edges(
        8, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
            (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = spectral.edge_vertex_spectrum_check(two_k4)
    assert rep.mu_claim_exact and rep.mu_corrected_exact
    assert abs(rep.mu_h - math.sqrt(6)) < 1e-8
    # a seeded random graph lands on whichever side its spectrum dictates
    g2 = graphs.gen_random_regular(10, 3, seed=4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep2 = spectral.edge_vertex_spectrum_check(g2)
        _, spec2 = spectral.mu(g2)
    assert rep2.mu_claim_exact == (abs(spec2.lambda_1 - spec2.mu) < 1e-8)


def test_spectrum_of_bipartite(h_k4):
    vals = spectral.spectrum_of_bipartite(h_k4).eigenvalues
    assert len(vals) == 10
    assert abs(vals[0] - math.sqrt(6)) < 1e-8
    # symmetric spectrum: bipartite
    for v, w in zip(vals, reversed(vals)):
        assert abs(v + w) < 1e-8
