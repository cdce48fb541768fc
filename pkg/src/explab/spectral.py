"""Symmetric eigenvalues and spectral quantities of graphs.

The eigensolver is a self-contained cyclic Jacobi (plane rotations, full sweeps)
so results do not depend on an external LAPACK build. Adjacency matrices stay in
integer arithmetic until they enter the solver.

`mu` is the largest nontrivial eigenvalue magnitude of a d-regular graph:
max(lambda_1, |lambda_{n-1}|) with eigenvalues sorted descending (lambda_0 = d).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CheckFailed,
    DisconnectedWarning,
    InvalidInput,
    NoConvergence,
    NotSymmetric,
    TooLarge,
)
from .graphs import (
    BipartiteGraph,
    Graph,
    adjacency_matrix,
    biadjacency_matrix,
    edge_vertex_graph,
    is_connected,
)

DEFAULT_TOL = 1e-10
MAX_N = 512
MAX_SWEEPS = 100


def symmetric_eigenvalues(a, tol: float = DEFAULT_TOL) -> list:
    """All eigenvalues of a real symmetric matrix, sorted descending.

    Cyclic Jacobi: rotate away every off-diagonal pair per sweep until the
    off-diagonal Frobenius norm drops below tol.
    """
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInput(f"matrix shape {m.shape} is not square")
    n = m.shape[0]
    if n > MAX_N:
        raise TooLarge(f"n={n} exceeds solver cap {MAX_N}")
    scale = max(1.0, float(np.max(np.abs(m))))
    if float(np.max(np.abs(m - m.T))) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric")
    if n == 1:
        return [float(m[0, 0])]

    def offnorm(x):
        off = x - np.diag(np.diag(x))
        return math.sqrt(float(np.sum(off * off)))

    for sweep in range(MAX_SWEEPS + 1):
        if offnorm(m) < tol:
            vals = sorted((float(v) for v in np.diag(m)), reverse=True)
            return vals
        if sweep == MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                # rotation angle that zeroes m[p, q]
                tau = (m[q, q] - m[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = m[p, :].copy()
                rq = m[q, :].copy()
                m[p, :] = c * rp - s * rq
                m[q, :] = s * rp + c * rq
                cp = m[:, p].copy()
                cq = m[:, q].copy()
                m[:, p] = c * cp - s * cq
                m[:, q] = s * cp + c * cq
                m[p, q] = 0.0
                m[q, p] = 0.0
    raise NoConvergence(f"off-diagonal norm stuck above {tol} after {MAX_SWEEPS} sweeps")


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple  # sorted descending
    mu: float
    tol: float = DEFAULT_TOL

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda_top(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda_1(self) -> float:
        return self.eigenvalues[1]

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]

    def to_json(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "mu": self.mu,
            "tol": self.tol,
        }


def graph_spectrum(g: Graph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Adjacency spectrum with mu = max(lambda_1, |lambda_min|).

    Disconnected inputs are legal but warn: lambda_1 then equals the degree and
    mu is uninformative.
    """
    if g.n < 2:
        raise InvalidInput("need at least 2 vertices for a nontrivial spectrum")
    if not is_connected(g):
        warnings.warn("graph is disconnected; lambda_1 equals the top eigenvalue",
                      DisconnectedWarning)
    vals = symmetric_eigenvalues(adjacency_matrix(g), tol)
    mu_val = max(vals[1], abs(vals[-1]))
    return Spectrum(tuple(vals), mu_val, tol)


def mu(g: Graph, tol: float = DEFAULT_TOL):
    """(mu, full spectrum) of a graph."""
    s = graph_spectrum(g, tol)
    return s.mu, s


def _multiset_close(xs, ys, tol) -> bool:
    if len(xs) != len(ys):
        return False
    return all(abs(x - y) <= tol for x, y in zip(sorted(xs), sorted(ys)))


@dataclass(frozen=True)
class EdgeVertexSpectrumReport:
    """Structural facts about the spectrum of an edge-vertex bipartite graph.

    For d-regular g with adjacency eigenvalues lambda_i, the bipartite adjacency
    of its edge-vertex graph has spectrum {+-sqrt(d + lambda_i)} plus zeros.
    `claimed_mu` is sqrt(d + mu(g)) -- an upper bound on the largest nontrivial
    eigenvalue which is NOT attained when |lambda_min| > lambda_1; the attained
    value is sqrt(d + lambda_1), reported as `corrected_mu`.
    """

    n: int
    d: int
    lambda_top: float          # largest eigenvalue of the bipartite adjacency
    mu_h: float                # largest nontrivial (mu of the bipartite graph)
    sqrt_2d: float
    claimed_mu: float          # sqrt(d + mu(g))
    corrected_mu: float        # sqrt(d + lambda_1(g))
    mtm_identity_exact: bool   # M^T M == A(g) + d I, integer-exact
    lambda_top_matches: bool   # lambda_top == sqrt(2d) within tol
    spectrum_formula_matches: bool  # full multiset matches {+-sqrt(d+lambda_i)} u {0}
    mu_below_claim: bool       # mu_h <= claimed_mu + tol
    mu_claim_exact: bool       # |mu_h - claimed_mu| <= tol  (fails when lambda_1 < mu)
    mu_corrected_exact: bool   # |mu_h - corrected_mu| <= tol
    tol: float = DEFAULT_TOL
    h_eigenvalues: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in (
            "n", "d", "lambda_top", "mu_h", "sqrt_2d", "claimed_mu", "corrected_mu",
            "mtm_identity_exact", "lambda_top_matches", "spectrum_formula_matches",
            "mu_below_claim", "mu_claim_exact", "mu_corrected_exact", "tol")}
        out["h_eigenvalues"] = list(self.h_eigenvalues)
        return out


def edge_vertex_spectrum_check(g: Graph, tol: float = DEFAULT_TOL) -> EdgeVertexSpectrumReport:
    """Verify the structural spectrum facts for g's edge-vertex graph.

    Raises CheckFailed if any of the always-true facts fails: the integer
    identity M^T M = A + dI, lambda_top = sqrt(2d), the full-spectrum formula,
    or mu_h <= sqrt(d + mu(g)). The exact-equality comparison of mu_h against
    sqrt(d + mu(g)) is only reported (mu_claim_exact); it genuinely fails for
    graphs whose most negative eigenvalue beats lambda_1 in magnitude.
    """
    d = g.assert_regular()
    h = edge_vertex_graph(g)
    m = biadjacency_matrix(h)  # n_in x n_out

    a_g = adjacency_matrix(g)
    mtm_ok = bool(np.array_equal(m.T @ m, a_g + d * np.eye(g.n, dtype=np.int64)))

    g_spec = graph_spectrum(g, tol)
    # full bipartite adjacency [[0, M^T], [M, 0]] indexed outputs-then-inputs;
    # block order does not affect the spectrum
    size = h.n_in + h.n_out
    big = np.zeros((size, size), dtype=np.int64)
    big[: h.n_out, h.n_out :] = m.T
    big[h.n_out :, : h.n_out] = m
    h_vals = symmetric_eigenvalues(big, tol)

    # eigensolver tolerance is on the off-diagonal norm; comparisons of the
    # resulting eigenvalues get a looser cushion
    cmp_tol = max(tol, 1e-8)

    expected = []
    for lam in g_spec.eigenvalues:
        root = math.sqrt(max(d + lam, 0.0))
        expected.append(root)
        expected.append(-root)
    expected.extend([0.0] * (size - 2 * g.n))

    lambda_top = h_vals[0]
    # drop exactly one +lambda_top and one -lambda_top — the trivial pair of
    # a connected bipartite graph. Values are sorted, so that is the first
    # and last entry; any further copy of that magnitude (lambda_1(g) = d,
    # disconnected g) is a genuine second singular value and must stay.
    mu_h = max((abs(v) for v in h_vals[1:-1]), default=0.0)

    sqrt_2d = math.sqrt(2 * d)
    claimed = math.sqrt(d + g_spec.mu)
    corrected = math.sqrt(max(d + g_spec.lambda_1, 0.0))

    report = EdgeVertexSpectrumReport(
        n=g.n,
        d=d,
        lambda_top=lambda_top,
        mu_h=mu_h,
        sqrt_2d=sqrt_2d,
        claimed_mu=claimed,
        corrected_mu=corrected,
        mtm_identity_exact=mtm_ok,
        lambda_top_matches=abs(lambda_top - sqrt_2d) <= cmp_tol,
        spectrum_formula_matches=_multiset_close(h_vals, expected, cmp_tol),
        mu_below_claim=mu_h <= claimed + cmp_tol,
        mu_claim_exact=abs(mu_h - claimed) <= cmp_tol,
        mu_corrected_exact=abs(mu_h - corrected) <= cmp_tol,
        tol=tol,
        h_eigenvalues=tuple(h_vals),
    )
    if not report.mtm_identity_exact:
        raise CheckFailed("M^T M != A + dI", )
    if not report.lambda_top_matches:
        raise CheckFailed(
            f"top eigenvalue {lambda_top} != sqrt(2d) = {sqrt_2d}")
    if not report.spectrum_formula_matches:
        raise CheckFailed("bipartite spectrum does not match {+-sqrt(d+lambda_i)} u {0}")
    if not report.mu_below_claim:
        raise CheckFailed(
            f"mu of the bipartite graph {mu_h} exceeds sqrt(d + mu) = {claimed}")
    return report


def spectrum_of_bipartite(b: BipartiteGraph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of the full (n_in+n_out) bipartite adjacency; mu excludes the
    +-lambda_top pair (bipartite spectra are symmetric)."""
    m = biadjacency_matrix(b)
    size = b.n_in + b.n_out
    big = np.zeros((size, size), dtype=np.int64)
    big[: b.n_out, b.n_out :] = m.T
    big[b.n_out :, : b.n_out] = m
    vals = symmetric_eigenvalues(big, tol)
    # bipartite spectra are symmetric about zero, so the sorted list starts
    # with +lambda_top and ends with -lambda_top; drop exactly that one pair
    # (further copies of the magnitude belong to other components and stay)
    mu_val = max((abs(v) for v in vals[1:-1]), default=0.0)
    return Spectrum(tuple(vals), mu_val, tol)
