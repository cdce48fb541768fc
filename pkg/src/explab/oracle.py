"""Exact brute-force ground truth on small instances.

Everything here enumerates ALL subsets (or all codewords) and reports exact
rational ratios, so closed-form bounds can be compared with no tolerance at
tight instances. Hard caps raise TooLarge instead of silently sampling; the
clearly-labeled sampled mode is a separate entry point.

The subset enumerator is a block-decomposed OR dynamic program over numpy
arrays: boundary masks of all 2^L low-input subsets are built once, then each
high-input subset contributes one vectorized OR + popcount pass. Results are
identical to the scalar reference (kept below for cross-checking), including
the smallest-bitmask tie-break, and a worker pool over high blocks merges
per-size minima in block order so parallel runs stay bit-identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np

from .errors import (
    CounterexampleFound,
    EmptyRange,
    InternalMismatch,
    InvalidInput,
    TooLarge,
)
from .graphs import BipartiteGraph, Graph, bip_boundary
from .spectral import graph_spectrum

MAX_EXACT_INPUTS = 24
MAX_SUBSET_VERTICES = 20
MAX_WORDS = 1 << 24
MAX_SAMPLED_INPUTS = 40


def worker_count() -> int:
    """Worker cap from EXPLAB_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("EXPLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SubsetWitness:
    subset: int          # bitmask over the enumerated ground set
    size: int
    boundary_size: int
    ratio: Fraction

    def __post_init__(self):
        if self.ratio != Fraction(self.boundary_size, self.size):
            raise InternalMismatch("witness ratio inconsistent with its fields")

    def members(self) -> tuple:
        return tuple(i for i in range(self.subset.bit_length())
                     if (self.subset >> i) & 1)

    def to_json(self) -> dict:
        return {
            "subset": self.subset,
            "members": list(self.members()),
            "size": self.size,
            "boundary_size": self.boundary_size,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
        }


def _size_cap(alpha, n: int) -> int:
    if isinstance(alpha, Fraction):
        cap = (alpha.numerator * n) // alpha.denominator
    else:
        cap = floor(alpha * n)
    if not 0 < alpha <= 1:
        raise InvalidInput(f"alpha={alpha} must satisfy 0 < alpha <= 1")
    cap = min(cap, n)
    if cap < 1:
        raise EmptyRange(f"floor(alpha * {n}) = 0: no admissible subset sizes")
    return cap


def _mask_dtype(n_bits: int):
    for dt, width in ((np.uint8, 8), (np.uint16, 16), (np.uint32, 32),
                      (np.uint64, 64)):
        if n_bits <= width:
            return dt
    return None


def _or_dp(masks, dtype):
    """f[x] = OR of masks[i] over set bits i of x, for all x < 2^len(masks)."""
    L = len(masks)
    f = np.zeros(1 << L, dtype=dtype)
    for i in range(L):
        lo = 1 << i
        f[lo : 2 * lo] = f[:lo] | dtype(masks[i])
    return f


def _min_boundary_by_size(item_masks, cap: int, punctured: bool):
    """Per-size minimum boundary popcount over all subsets of size 1..cap.

    item_masks[i] is an int whose set bits are item i's neighbors on the other
    side (or in the same vertex set, for plain graphs). When `punctured`, the
    subset's own bits are removed from its boundary before counting, which only
    makes sense when items and boundary targets share the index space.

    Returns (minb, witness): arrays of length cap+1, minb[s] = min count,
    witness[s] = smallest bitmask attaining it (index 0 unused).
    """
    n = len(item_masks)
    width = max((m.bit_length() for m in item_masks), default=1)
    if punctured:
        width = max(width, n)
    dtype = _mask_dtype(width)
    if dtype is None:
        return _min_boundary_by_size_scalar(item_masks, cap, punctured)

    L = min(n, 18)
    H = n - L
    f_low = _or_dp(item_masks[:L], dtype)
    sizes_low = np.bitwise_count(np.arange(1 << L, dtype=np.uint64)).astype(np.uint8)
    order = np.argsort(sizes_low, kind="stable").astype(np.int64)
    sorted_sizes = sizes_low[order]
    starts = np.searchsorted(sorted_sizes, np.arange(L + 2))
    f_low_sorted = f_low[order]
    idx_sorted = order.astype(np.uint64) if punctured else None
    high_masks = _or_dp(item_masks[L:], dtype) if H else np.zeros(1, dtype=dtype)

    INF = 1 << 30
    minb = [INF] * (cap + 1)
    witness = [None] * (cap + 1)

    def scan_block(h: int):
        s_h = int(h).bit_count()
        if s_h > cap:
            return None
        orred = f_low_sorted | high_masks[h]
        if punctured:
            own = (np.uint64(h << L) | idx_sorted).astype(np.uint64)
            counts = np.bitwise_count(orred.astype(np.uint64) & ~own)
        else:
            counts = np.bitwise_count(orred)
        local_min = [INF] * (cap + 1)
        local_wit = [None] * (cap + 1)
        lo_min = 1 if s_h == 0 else 0
        for s_low in range(lo_min, min(L, cap - s_h) + 1):
            st, en = int(starts[s_low]), int(starts[s_low + 1])
            if st == en:
                continue
            seg = counts[st:en]
            m = int(seg.min())
            s = s_h + s_low
            local_min[s] = m
            pos = int(np.argmax(seg == m))
            local_wit[s] = (h << L) | int(order[st + pos])
        return local_min, local_wit

    def merge(result):
        if result is None:
            return
        local_min, local_wit = result
        for s in range(1, cap + 1):
            if local_wit[s] is None:
                continue
            if local_min[s] < minb[s] or (
                local_min[s] == minb[s] and local_wit[s] < witness[s]
            ):
                minb[s] = local_min[s]
                witness[s] = local_wit[s]

    workers = worker_count()
    blocks = range(1 << H)
    if workers > 1 and H > 0:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # merge in block order: parallel result == sequential result
            for result in pool.map(scan_block, blocks, chunksize=8):
                merge(result)
    else:
        for h in blocks:
            merge(scan_block(h))
    return minb, witness


def _min_boundary_by_size_scalar(item_masks, cap: int, punctured: bool):
    """Gray-code reference path: one item toggled per step, boundary counts
    maintained incrementally. Exact same outputs as the vectorized path."""
    n = len(item_masks)
    bits = [tuple(j for j in range(m.bit_length()) if (m >> j) & 1)
            for m in item_masks]
    width = max((m.bit_length() for m in item_masks), default=1)
    if punctured:
        width = max(width, n)
    cnt = [0] * width
    covered = 0
    size = 0
    INF = 1 << 30
    minb = [INF] * (cap + 1)
    witness = [None] * (cap + 1)
    gray = 0
    for i in range(1, 1 << n):
        bit = (i & -i).bit_length() - 1
        gray ^= 1 << bit
        if (gray >> bit) & 1:
            size += 1
            for j in bits[bit]:
                if cnt[j] == 0:
                    covered += 1
                cnt[j] += 1
        else:
            size -= 1
            for j in bits[bit]:
                cnt[j] -= 1
                if cnt[j] == 0:
                    covered -= 1
        if not 1 <= size <= cap:
            continue
        if punctured:
            c = sum(1 for j in range(width)
                    if cnt[j] > 0 and not (gray >> j) & 1)
        else:
            c = covered
        if c < minb[size] or (c == minb[size] and gray < witness[size]):
            minb[size] = c
            witness[size] = gray
    return minb, witness


def _pick_minimum(minb, witness, cap: int):
    best_ratio = None
    for s in range(1, cap + 1):
        if witness[s] is None:
            continue
        r = Fraction(minb[s], s)
        if best_ratio is None or r < best_ratio:
            best_ratio = r
    if best_ratio is None:
        raise EmptyRange("no admissible subsets")
    best_mask, best_size = None, None
    for s in range(1, cap + 1):
        if witness[s] is not None and Fraction(minb[s], s) == best_ratio:
            if best_mask is None or witness[s] < best_mask:
                best_mask, best_size = witness[s], s
    return best_ratio, best_mask, best_size


def exact_expansion(b: BipartiteGraph, alpha,
                    max_inputs: int = MAX_EXACT_INPUTS):
    """Exact min |boundary(T)| / |T| over nonempty input subsets T with
    |T| <= floor(alpha * n_in), plus a minimizing witness (ties: smallest
    bitmask). Enumeates all 2^n_in subsets; n_in above max_inputs raises
    TooLarge."""
    n = b.n_in
    if n > max_inputs:
        raise TooLarge(f"n_in={n} exceeds cap {max_inputs}")
    cap = _size_cap(alpha, n)
    masks = [sum(1 << o for o in nb) for nb in b.nbrs]
    minb, witness = _min_boundary_by_size(masks, cap, punctured=False)
    ratio, mask, size = _pick_minimum(minb, witness, cap)
    # independent recount of the winning subset
    actual = len(bip_boundary(b, [i for i in range(n) if (mask >> i) & 1]))
    if actual != minb[size]:
        raise InternalMismatch(
            f"witness recount {actual} != enumerated {minb[size]}")
    return ratio, SubsetWitness(mask, size, minb[size], ratio)


def exact_expansion_multi(b: BipartiteGraph, alphas,
                          max_inputs: int = MAX_EXACT_INPUTS) -> dict:
    """exact_expansion for several alphas from ONE enumeration pass.

    Returns {alpha: (ratio, witness)}; each entry is identical to what
    exact_expansion(b, alpha) returns.
    """
    n = b.n_in
    if n > max_inputs:
        raise TooLarge(f"n_in={n} exceeds cap {max_inputs}")
    caps = {alpha: _size_cap(alpha, n) for alpha in alphas}
    big_cap = max(caps.values())
    masks = [sum(1 << o for o in nb) for nb in b.nbrs]
    minb, witness = _min_boundary_by_size(masks, big_cap, punctured=False)
    out = {}
    for alpha, cap in caps.items():
        ratio, mask, size = _pick_minimum(minb, witness, cap)
        out[alpha] = (ratio, SubsetWitness(mask, size, minb[size], ratio))
    return out


def exact_expansion_reference(b: BipartiteGraph, alpha,
                              max_inputs: int = 16):
    """Scalar Gray-code route to the same answer; for cross-checks."""
    n = b.n_in
    if n > max_inputs:
        raise TooLarge(f"n_in={n} exceeds reference cap {max_inputs}")
    cap = _size_cap(alpha, n)
    masks = [sum(1 << o for o in nb) for nb in b.nbrs]
    minb, witness = _min_boundary_by_size_scalar(masks, cap, punctured=False)
    ratio, mask, size = _pick_minimum(minb, witness, cap)
    return ratio, SubsetWitness(mask, size, minb[size], ratio)


def exact_delta(b: BipartiteGraph, epsilon,
                max_inputs: int = MAX_EXACT_INPUTS) -> Fraction:
    """Exact worst-case input-side expansion factor at size cap epsilon*n_in.
    Input subsets of a bipartite graph have boundary disjoint from themselves,
    so this is exact_expansion at alpha = epsilon."""
    ratio, _ = exact_expansion(b, epsilon, max_inputs)
    return ratio


def exact_vertex_expansion(g: Graph, alpha, punctured: bool = False,
                           max_vertices: int = MAX_SUBSET_VERTICES):
    """Exact min |boundary(S)|/|S| over nonempty S subsets of V(g) with
    |S| <= floor(alpha*n). boundary = union of neighborhoods (may meet S);
    punctured=True removes S itself first."""
    n = g.n
    if n > max_vertices:
        raise TooLarge(f"n={n} exceeds cap {max_vertices}")
    cap = _size_cap(alpha, n)
    masks = [sum(1 << v for v in g.adj[u]) for u in range(n)]
    minb, witness = _min_boundary_by_size(masks, cap, punctured=punctured)
    ratio, mask, size = _pick_minimum(minb, witness, cap)
    return ratio, SubsetWitness(mask, size, minb[size], ratio)


def sampled_expansion(b: BipartiteGraph, alpha, samples: int = 10_000,
                      seed: int = 0):
    """NON-EXHAUSTIVE upper estimate of the expansion ratio from seeded random
    subsets; exists for instances beyond the exact cap (n_in <= 40). The result
    is an upper bound on the true minimum, never a certificate."""
    from .graphs import SplitMix64

    n = b.n_in
    if n > MAX_SAMPLED_INPUTS:
        raise TooLarge(f"n_in={n} exceeds sampled cap {MAX_SAMPLED_INPUTS}")
    cap = _size_cap(alpha, n)
    rng = SplitMix64(seed)
    best = None
    best_wit = None
    for _ in range(samples):
        size = 1 + rng.below(cap)
        pool = list(range(n))
        for i in range(size):
            j = i + rng.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        subset = pool[:size]
        bsize = len(bip_boundary(b, subset))
        r = Fraction(bsize, size)
        mask = sum(1 << i for i in subset)
        if best is None or r < best or (r == best and mask < best_wit.subset):
            best = r
            best_wit = SubsetWitness(mask, size, bsize, r)
    return {"ratio_upper_estimate": best, "witness": best_wit,
            "samples": samples, "seed": seed, "exhaustive": False}


# -- exhaustive inequality verification ----------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    checked: int
    violations: tuple
    tight_witnesses: tuple
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "checked": self.checked,
            "violations": [dict(v) for v in self.violations],
            "tight_witnesses": [dict(w) for w in self.tight_witnesses],
            "stats": {k: (str(v) if isinstance(v, Fraction) else v)
                      for k, v in self.stats.items()},
        }


def _spectral_inputs(g: Graph, exact_spectrum, tol):
    """(lambda_1, lambda_min, mu, cushion): exact Fractions with zero cushion
    when supplied, else solver floats with a comparison cushion."""
    if exact_spectrum is not None:
        l1, lmin, mu_val = exact_spectrum
        return l1, lmin, mu_val, Fraction(0)
    s = graph_spectrum(g, tol)
    cushion = max(tol, 1e-8) * g.n * max(1.0, s.lambda_top)
    return s.lambda_1, s.lambda_min, s.mu, cushion


def verify_alon_chung(g: Graph, exact_spectrum=None, tol: float = 1e-10,
                      instance: str = "") -> VerificationReport:
    """Check, for EVERY nonempty S ⊆ V of a d-regular graph, the two-sided
    edge-count bound |e(S) - d γ² n / 2| <= μ γ(1-γ) n / 2 (γ = |S|/n) plus the
    one-sided refinements replacing μ by λ₁ above and λ_min below.

    exact_spectrum=(lambda_1, lambda_min, mu) as Fractions makes every
    comparison exact. Violations raise CounterexampleFound (the report rides
    on the exception); the returned report carries per-size tight witnesses.
    """
    n = g.n
    if n > MAX_SUBSET_VERTICES:
        raise TooLarge(f"n={n} exceeds cap {MAX_SUBSET_VERTICES}")
    d = g.assert_regular()
    l1, lmin, mu_val, cushion = _spectral_inputs(g, exact_spectrum, tol)

    # Gray-code walk maintaining e(S); per-size extremes determine all checks
    # because every bound depends on S only through |S|.
    INF = 1 << 60
    emin = [INF] * (n + 1)
    emax = [-INF] * (n + 1)
    emin_wit = [None] * (n + 1)
    emax_wit = [None] * (n + 1)
    inside = [False] * n
    e = 0
    size = 0
    gray = 0
    for i in range(1, 1 << n):
        bit = (i & -i).bit_length() - 1
        gray ^= 1 << bit
        touching = sum(1 for u in g.adj[bit] if inside[u])
        if (gray >> bit) & 1:
            inside[bit] = True
            e += touching
            size += 1
        else:
            inside[bit] = False
            e -= touching
            size -= 1
        if size == 0:
            continue
        if e < emin[size] or (e == emin[size] and gray < emin_wit[size]):
            emin[size] = e
            emin_wit[size] = gray
        if e > emax[size] or (e == emax[size] and gray < emax_wit[size]):
            emax[size] = e
            emax_wit[size] = gray

    half = Fraction(1, 2)
    violations = []
    tight = []
    min_slack = None
    max_slack = None

    def note_slack(s):
        nonlocal min_slack, max_slack
        if min_slack is None or s < min_slack:
            min_slack = s
        if max_slack is None or s > max_slack:
            max_slack = s

    for s in range(1, n + 1):
        gamma = Fraction(s, n)
        center = half * d * gamma * gamma * n
        cross = gamma * (1 - gamma) * n
        radius = half * mu_val * cross
        upper_ref = center + half * l1 * cross
        lower_ref = center + half * lmin * cross
        for side, eval_, wit in (("min", emin[s], emin_wit[s]),
                                 ("max", emax[s], emax_wit[s])):
            checks = [
                ("two_sided", radius - abs(eval_ - center)),
                ("refined_upper", upper_ref - eval_),
                ("refined_lower", eval_ - lower_ref),
            ]
            for name, slack in checks:
                note_slack(slack)
                if slack < -cushion:
                    violations.append({
                        "check": name, "side": side, "size": s,
                        "subset": wit, "e": eval_, "slack": float(slack),
                    })
                elif slack <= cushion:
                    tight.append({
                        "check": name, "side": side, "size": s,
                        "subset": wit, "e": eval_,
                    })

    report = VerificationReport(
        instance=instance or f"graph(n={n}, d={d})",
        checked=(1 << n) - 1,
        violations=tuple(violations),
        tight_witnesses=tuple(tight),
        stats={"min_slack": min_slack, "max_slack": max_slack,
               "exact": exact_spectrum is not None},
    )
    if violations:
        raise CounterexampleFound(
            f"{len(violations)} edge-count bound violations on {report.instance}",
            report)
    return report


def verify_nbhd_and_boundary(g: Graph, exact_spectrum=None, tol: float = 1e-10,
                             instance: str = "") -> VerificationReport:
    """Check, for EVERY nonempty S ⊆ V of a d-regular graph, with
    D = α(d² − μ²) + μ² at α = |S|/n:
      (a) Σ_v |S ∩ N(v)|² <= D·|S|
      (b) |N(S)| >= d²|S| / D
      (c) n − |N(S)| <= μ²(n − |S|) / D
    Violations raise CounterexampleFound; tight witnesses are reported.
    """
    n = g.n
    if n > MAX_SUBSET_VERTICES:
        raise TooLarge(f"n={n} exceeds cap {MAX_SUBSET_VERTICES}")
    d = g.assert_regular()
    _, _, mu_val, cushion = _spectral_inputs(g, exact_spectrum, tol)
    mu_sq = mu_val * mu_val

    INF = 1 << 60
    sum_max = [-INF] * (n + 1)
    sum_max_wit = [None] * (n + 1)
    bnd_min = [INF] * (n + 1)
    bnd_min_wit = [None] * (n + 1)
    cnt = [0] * n  # |S ∩ N(v)| per vertex v
    covered = 0
    sumsq = 0
    size = 0
    gray = 0
    for i in range(1, 1 << n):
        bit = (i & -i).bit_length() - 1
        gray ^= 1 << bit
        if (gray >> bit) & 1:
            size += 1
            for v in g.adj[bit]:
                sumsq += 2 * cnt[v] + 1
                if cnt[v] == 0:
                    covered += 1
                cnt[v] += 1
        else:
            size -= 1
            for v in g.adj[bit]:
                cnt[v] -= 1
                sumsq -= 2 * cnt[v] + 1
                if cnt[v] == 0:
                    covered -= 1
        if size == 0:
            continue
        if sumsq > sum_max[size] or (sumsq == sum_max[size]
                                     and gray < sum_max_wit[size]):
            sum_max[size] = sumsq
            sum_max_wit[size] = gray
        if covered < bnd_min[size] or (covered == bnd_min[size]
                                       and gray < bnd_min_wit[size]):
            bnd_min[size] = covered
            bnd_min_wit[size] = gray

    violations = []
    tight = []
    for s in range(1, n + 1):
        alpha = Fraction(s, n)
        coeff = alpha * (d * d - mu_sq) + mu_sq
        checks = [
            ("nbhd_sum", coeff * s - sum_max[s], sum_max_wit[s],
             sum_max[s]),
            ("boundary_lb", bnd_min[s] - d * d * s / coeff, bnd_min_wit[s],
             bnd_min[s]),
            ("missed_ub", mu_sq * (n - s) / coeff - (n - bnd_min[s]),
             bnd_min_wit[s], bnd_min[s]),
        ]
        for name, slack, wit, value in checks:
            if slack < -cushion:
                violations.append({
                    "check": name, "size": s, "subset": wit,
                    "value": value, "slack": float(slack),
                })
            elif slack <= cushion:
                tight.append({
                    "check": name, "size": s, "subset": wit, "value": value,
                })

    report = VerificationReport(
        instance=instance or f"graph(n={n}, d={d})",
        checked=(1 << n) - 1,
        violations=tuple(violations),
        tight_witnesses=tuple(tight),
        stats={"exact": exact_spectrum is not None},
    )
    if violations:
        raise CounterexampleFound(
            f"{len(violations)} neighborhood bound violations on "
            f"{report.instance}", report)
    return report


# -- code distances -------------------------------------------------------------


def min_distance_bruteforce(code, max_words: int = MAX_WORDS) -> int:
    """Minimum Hamming weight over nonzero codewords (= distance, linearity).
    Enumerates all q^k messages; q^k beyond max_words raises TooLarge."""
    from .codes import LinearCode  # local import to avoid a cycle

    assert isinstance(code, LinearCode)
    if code.k == 0:
        raise InvalidInput("zero-dimensional code has no distance")
    words = code.field.q ** code.k
    if words > max_words:
        raise TooLarge(f"q^k = {words} exceeds cap {max_words}")
    f = code.field
    if f.q == 2:
        rows = [sum(1 << j for j, x in enumerate(row) if x) for row in code.gen]
        word = 0
        best = None
        gray = 0
        for i in range(1, words):
            bit = (i & -i).bit_length() - 1
            gray ^= 1 << bit
            word ^= rows[bit]
            w = word.bit_count()
            if best is None or w < best:
                best = w
        return best
    best = None
    zero = [0] * code.n
    k = code.k

    def rec(i, acc):
        nonlocal best
        if i == k:
            w = sum(1 for x in acc if x)
            if w and (best is None or w < best):
                best = w
            return
        row = code.gen[i]
        for c in range(f.q):
            if c == 0:
                rec(i + 1, acc)
            else:
                rec(i + 1, [f.add(a, f.mul(c, r)) for a, r in zip(acc, row)])

    rec(0, zero)
    return best
