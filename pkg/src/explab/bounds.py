"""Closed-form expansion and distance bounds for (c, d)-regular structures.

Every function here is pure arithmetic on its parameters. Arithmetic preserves
exactness: feed Fractions in and, whenever the square roots involved are
rational, Fractions come out, so tightness claims can be tested as exact
equalities rather than within-epsilon.

Parameter conventions: d is the output-side (or graph) degree, mu the largest
nontrivial eigenvalue magnitude, alpha the subset-size cap as a fraction of the
input side, epsilon a subset-size scale with d*epsilon > mu required by the
distance-style bounds, gamma = |S|/n an exact subset fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import (
    DegenerateParams,
    HypothesisViolated,
    InternalMismatch,
    InvalidInput,
)


def parse_number(s):
    """Parse 'p/q', integer, or decimal strings into Fraction/int/float."""
    if isinstance(s, (int, Fraction)):
        return s
    if isinstance(s, float):
        return s
    text = str(s).strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        try:
            return int(text)
        except ValueError:
            return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse number {s!r}") from exc


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _sqrt(x):
    """Square root that stays exact for perfect-square rationals."""
    if isinstance(x, (int, Fraction)):
        fr = Fraction(x)
        if fr < 0:
            raise DegenerateParams(f"sqrt of negative value {x}")
        rn, rd = isqrt(fr.numerator), isqrt(fr.denominator)
        if rn * rn == fr.numerator and rd * rd == fr.denominator:
            out = Fraction(rn, rd)
            return int(out) if out.denominator == 1 and isinstance(x, int) else out
        return math.sqrt(float(fr))
    return math.sqrt(x)


def number_to_json(x):
    """floats pass through; Fractions/ints become exact 'p/q' or int strings."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(
            x.numerator)
    return x


def _check_alpha(alpha):
    if not 0 < alpha <= 1:
        raise InvalidInput(f"alpha={alpha} must satisfy 0 < alpha <= 1")


def _check_spectral(d, mu):
    if d <= 0:
        raise InvalidInput(f"d={d} must be positive")
    if mu < 0:
        raise InvalidInput(f"mu={mu} must be nonnegative")


# -- expansion lower bounds ----------------------------------------------------


def tanner_bound(c, d, mu, alpha):
    """Input-side expansion lower bound c^2 / (alpha*c*d + mu^2*(1 - alpha)) for a
    (c, d)-regular bipartite graph whose adjacency has nontrivial bound mu."""
    _check_alpha(alpha)
    if c <= 0 or d <= 0:
        raise InvalidInput("degrees must be positive")
    denom = alpha * c * d + mu * mu * (1 - alpha)
    if denom <= 0:
        raise DegenerateParams(f"denominator {denom} <= 0")
    return c * c / Fraction(denom) if _is_exact(c, d, mu, alpha) else c * c / denom


def edge_vertex_tanner_bound(d, mu, alpha):
    """Tanner's bound specialized to the edge-vertex graph of a d-regular graph
    with eigenvalue bound mu: 4 / (alpha*(d - mu) + (d + mu))."""
    _check_spectral(d, mu)
    _check_alpha(alpha)
    denom = alpha * (d - mu) + (d + mu)
    if denom <= 0:
        raise DegenerateParams(f"denominator {denom} <= 0")
    return 4 / Fraction(denom) if _is_exact(d, mu, alpha) else 4 / denom


def improved_bound_gamma(d, mu, alpha):
    """(bound, gamma): edge-subset expansion bound 4/(mu + sqrt(mu^2 +
    4*alpha*d*(d - mu))) with gamma the positive root of
    (d - mu)*g^2 + mu*g - alpha*d = 0; the bound equals 2*gamma/(alpha*d).

    Exact inputs with a perfect-square discriminant take two independent
    exact routes that must agree. Float inputs use the rationalized root
    gamma = 2*alpha*d/(mu + sqrt(disc)) — the quadratic-formula form loses
    every digit to cancellation as mu approaches d — and gamma is validated
    by substitution into its defining quadratic.
    """
    _check_spectral(d, mu)
    _check_alpha(alpha)
    if mu > d:
        raise DegenerateParams(f"mu={mu} exceeds d={d}")
    disc = mu * mu + 4 * alpha * d * (d - mu)
    root = _sqrt(disc)
    value = 4 / (mu + root)
    if _is_exact(value):
        if mu == d:
            gamma = Fraction(alpha) * d / mu
        else:
            gamma = (root - mu) / (2 * (d - mu))
        via_gamma = 2 * gamma / (alpha * d)
        if via_gamma != value:
            raise InternalMismatch(
                f"bound routes disagree: {value} vs {via_gamma}")
    else:
        gamma = 2 * alpha * d / (mu + root)
        residual = (d - mu) * gamma * gamma + mu * gamma - alpha * d
        if abs(float(residual)) > 1e-9 * max(1.0, abs(float(alpha * d))):
            raise InternalMismatch(
                f"gamma={gamma} fails its quadratic: residual {residual}")
    return value, gamma


def improved_bound(d, mu, alpha):
    return improved_bound_gamma(d, mu, alpha)[0]


def alpha0_expansion(d, mu, epsilon):
    """(alpha_0, bound): at alpha_0 = epsilon*(d*epsilon - mu)/(d - mu) the
    edge-subset expansion bound evaluates to exactly 2/(d*epsilon).

    Requires d*epsilon > mu (and hence mu < d for epsilon <= 1).
    """
    _check_spectral(d, mu)
    if not 0 < epsilon <= 1:
        raise InvalidInput(f"epsilon={epsilon} must satisfy 0 < epsilon <= 1")
    if d * epsilon <= mu:
        raise HypothesisViolated(f"d*epsilon = {d * epsilon} <= mu = {mu}")
    alpha0 = epsilon * (d * epsilon - mu) / (d - mu)
    if _is_exact(d, mu, epsilon):
        alpha0 = Fraction(epsilon * (d * epsilon - mu), d - mu)
    bound = 2 / Fraction(d * epsilon) if _is_exact(d, epsilon) else 2 / (d * epsilon)
    return alpha0, bound


# -- induced edge counts --------------------------------------------------------


@dataclass(frozen=True)
class EdgeCountBounds:
    """Two-sided bounds on the edge count inside a gamma*n-vertex subset."""

    center: object            # (1/2) * d * gamma^2 * n
    radius: object            # (1/2) * mu * gamma * (1-gamma) * n
    lower: object
    upper: object
    refined_lower: object = None  # center + (1/2) * lambda_min * gamma*(1-gamma)*n
    refined_upper: object = None  # center + (1/2) * lambda_1  * gamma*(1-gamma)*n


def alon_chung_bounds(d, n, gamma, mu, lambda_1=None, lambda_min=None):
    """Bounds on e(S) for |S| = gamma*n in a d-regular n-vertex graph:
    |e(S) - d*gamma^2*n/2| <= mu*gamma*(1-gamma)*n/2, plus the one-sided
    refinements using lambda_1 (upper) and lambda_min (lower) when given."""
    _check_spectral(d, mu)
    if not 0 <= gamma <= 1:
        raise InvalidInput(f"gamma={gamma} must lie in [0, 1]")
    if n <= 0:
        raise InvalidInput(f"n={n} must be positive")
    half = Fraction(1, 2) if _is_exact(d, n, gamma, mu) else 0.5
    center = half * d * gamma * gamma * n
    cross = gamma * (1 - gamma) * n
    radius = half * mu * cross
    refined_upper = None if lambda_1 is None else center + half * lambda_1 * cross
    refined_lower = None if lambda_min is None else center + half * lambda_min * cross
    return EdgeCountBounds(
        center=center,
        radius=radius,
        lower=center - radius,
        upper=center + radius,
        refined_lower=refined_lower,
        refined_upper=refined_upper,
    )


def edge_count_threshold(d, n, gamma, mu):
    """Upper edge-count threshold (d*n/2) * (gamma^2 + (mu/d)*gamma*(1-gamma));
    nondecreasing in gamma on [0, 1] whenever mu <= d."""
    b = alon_chung_bounds(d, n, gamma, mu)
    return b.upper


# -- code-style distance bounds --------------------------------------------------


@dataclass(frozen=True)
class DistanceRateResult:
    relative_distance: object
    rate_lb: object
    original_relative_distance: object
    improvement_factor: object


def ss_distance_rate(d, mu, epsilon, rate):
    """Bipartite-code guarantees: relative distance epsilon*(d*epsilon - mu)/(d - mu)
    and designed rate 2*rate - 1, alongside the older ((d*epsilon - mu)/(d - mu))^2
    and the exact improvement factor 1 + mu*(1 - epsilon)/(d*epsilon - mu)."""
    _check_spectral(d, mu)
    if not 0 < epsilon <= 1:
        raise InvalidInput(f"epsilon={epsilon} must satisfy 0 < epsilon <= 1")
    if d * epsilon <= mu:
        raise HypothesisViolated(f"d*epsilon = {d * epsilon} <= mu = {mu}")
    core = (d * epsilon - mu) / (d - mu)
    if _is_exact(d, mu, epsilon):
        core = Fraction(d * epsilon - mu, d - mu)
    ours = epsilon * core
    original = core * core
    factor = 1 + mu * (1 - epsilon) / (d * epsilon - mu)
    if _is_exact(d, mu, epsilon):
        factor = 1 + Fraction(mu * (1 - epsilon), d * epsilon - mu)
    rhs = original * factor
    if _is_exact(ours, rhs):
        if ours != rhs:
            raise InternalMismatch(f"{ours} != {rhs} (factor identity)")
    elif abs(float(ours) - float(rhs)) > 1e-9 * max(1.0, abs(float(ours))):
        raise InternalMismatch(f"{ours} != {rhs} (factor identity)")
    return DistanceRateResult(
        relative_distance=ours,
        rate_lb=2 * rate - 1,
        original_relative_distance=original,
        improvement_factor=factor,
    )


# -- neighborhood second-moment bounds -------------------------------------------


def nbhd_sum_coefficient(d, mu, alpha):
    """Coefficient D(alpha) = alpha*(d^2 - mu^2) + mu^2 bounding
    sum_v |S ∩ N(v)|^2 <= D(alpha) * |S| for |S| <= alpha * n."""
    _check_spectral(d, mu)
    _check_alpha(alpha)
    if mu > d:
        raise DegenerateParams(f"mu={mu} exceeds d={d}")
    return alpha * (d * d - mu * mu) + mu * mu


@dataclass(frozen=True)
class BoundaryBounds:
    coefficient: object       # D(alpha)
    boundary_lb: object       # |N(S)| >= d^2 |S| / D
    missed_ub: object         # n - |N(S)| <= mu^2 (n - |S|) / D


def boundary_bounds(d, mu, alpha, s_size, n):
    """Neighborhood-size bounds for |S| = s_size <= alpha*n in a d-regular
    n-vertex graph."""
    if not 0 < s_size <= n:
        raise InvalidInput(f"s_size={s_size} outside 1..{n}")
    if s_size > alpha * n:
        raise InvalidInput(f"s_size={s_size} exceeds alpha*n = {alpha * n}")
    coeff = nbhd_sum_coefficient(d, mu, alpha)
    if _is_exact(coeff, s_size, n, mu):
        coeff = Fraction(coeff)
    return BoundaryBounds(coeff, d * d * s_size / coeff,
                          mu * mu * (n - s_size) / coeff)


@dataclass(frozen=True)
class CodeDistanceBounds:
    main: object              # d^2 * delta0 * n / (delta0*(d^2 - mu^2) + mu^2)
    ramanujan_form: object    # Delta*delta0*n / (delta0*Delta + 4*(1-delta0)), mu^2 -> 4*Delta
    alon_original: object     # (delta0*Delta^2 - mu^2*(1-delta0)) / (delta0*Delta^2) * n


def code_distance_bounds(d, mu, delta0, n):
    """Distance guarantees for the neighborhood-lift of an inner code with
    relative distance delta0 over a d-regular n-vertex graph.

    main >= alon_original always (their difference is mu^4*(1-delta0)^2*n /
    (delta0*d^2*D) >= 0); evaluated and asserted.
    """
    _check_spectral(d, mu)
    if not 0 < delta0 <= 1:
        raise InvalidInput(f"delta0={delta0} must satisfy 0 < delta0 <= 1")
    if n <= 0:
        raise InvalidInput(f"n={n} must be positive")
    if mu > d:
        raise DegenerateParams(f"mu={mu} exceeds d={d}")
    exact = _is_exact(d, mu, delta0, n)
    dd = d * d
    denom = delta0 * (dd - mu * mu) + mu * mu
    main = Fraction(dd * delta0 * n, denom) if exact else dd * delta0 * n / denom
    ram_denom = delta0 * d + 4 * (1 - delta0)
    ram = Fraction(d * delta0 * n, ram_denom) if exact else d * delta0 * n / ram_denom
    alon = (delta0 * dd - mu * mu * (1 - delta0)) * n / (
        Fraction(delta0 * dd) if exact else delta0 * dd)
    if exact:
        if main < alon:
            raise InternalMismatch(f"main {main} < alon {alon}")
    elif float(main) < float(alon) - 1e-9 * max(1.0, abs(float(alon))):
        raise InternalMismatch(f"main {main} < alon {alon}")
    return CodeDistanceBounds(main=main, ramanujan_form=ram, alon_original=alon)


# -- the quadratic-field family with improvement factor -> 3 ---------------------


@dataclass(frozen=True)
class FamilyPoint:
    m: int
    q: int
    d: int
    mu: int
    epsilon: Fraction
    relative_distance: Fraction
    original_relative_distance: Fraction
    improvement_factor: Fraction


def family_point(m: int) -> FamilyPoint:
    """Parameter family q = 2^(2m), d = q + 1, mu = 2^(m+1),
    epsilon = 3*2^m/(2^m + 1)^2. Its distance-improvement factor decreases to 3
    as m grows."""
    if m < 1:
        raise InvalidInput(f"m={m} must be >= 1")
    q = 2 ** (2 * m)
    d = q + 1
    mu_val = 2 ** (m + 1)
    eps = Fraction(3 * 2**m, (2**m + 1) ** 2)
    res = ss_distance_rate(d, mu_val, eps, rate=Fraction(1, 2))
    return FamilyPoint(
        m=m,
        q=q,
        d=d,
        mu=mu_val,
        epsilon=eps,
        relative_distance=res.relative_distance,
        original_relative_distance=res.original_relative_distance,
        improvement_factor=res.improvement_factor,
    )


def family_sweep(m_lo: int, m_hi: int) -> list:
    """One row dict per m; rows where the d*epsilon > mu hypothesis fails are
    flagged rather than fatal (m = 1 is such a row)."""
    if m_hi < m_lo:
        raise InvalidInput(f"empty range {m_lo}..{m_hi}")
    rows = []
    for m in range(m_lo, m_hi + 1):
        q = 2 ** (2 * m)
        base = {
            "m": m,
            "q": q,
            "d": q + 1,
            "mu": 2 ** (m + 1),
            "epsilon": Fraction(3 * 2**m, (2**m + 1) ** 2),
        }
        try:
            pt = family_point(m)
            base.update(
                hypothesis_ok=True,
                relative_distance=pt.relative_distance,
                original_relative_distance=pt.original_relative_distance,
                improvement_factor=pt.improvement_factor,
            )
        except HypothesisViolated as exc:
            base.update(
                hypothesis_ok=False,
                note=str(exc),
                relative_distance=None,
                original_relative_distance=None,
                improvement_factor=None,
            )
        rows.append(base)
    return rows


# -- one-stop report --------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionParams:
    d: object
    mu: object
    c: object = 2
    alpha: object = None
    epsilon: object = None
    gamma: object = None
    n: object = None
    delta0: object = None
    rate: object = None

    def to_json(self) -> dict:
        out = {}
        for name in ("d", "mu", "c", "alpha", "epsilon", "gamma", "n", "delta0",
                     "rate"):
            v = getattr(self, name)
            if v is not None:
                out[name] = number_to_json(v)
        return out


@dataclass(frozen=True)
class BoundReport:
    params: ExpansionParams
    bounds: dict
    flags: dict
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "bounds": {k: number_to_json(v) for k, v in self.bounds.items()},
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


def bound_report(params: ExpansionParams) -> BoundReport:
    """Evaluate every bound the given parameters support; degenerate or
    hypothesis-violating combinations are flagged, not raised."""
    bounds: dict = {}
    notes = []
    d, mu_val = params.d, params.mu
    _check_spectral(d, mu_val)
    degenerate = bool(mu_val >= d)
    if params.alpha is not None and params.alpha >= 1:
        degenerate = True
    hypothesis_ok = True

    if params.alpha is not None:
        _check_alpha(params.alpha)
        try:
            bounds["tanner"] = tanner_bound(params.c, d, mu_val, params.alpha)
        except DegenerateParams as exc:
            notes.append(f"tanner: {exc}")
        try:
            bounds["edge_vertex_tanner"] = edge_vertex_tanner_bound(
                d, mu_val, params.alpha)
            value, gamma = improved_bound_gamma(d, mu_val, params.alpha)
            bounds["improved"] = value
            bounds["improved_gamma"] = gamma
            bounds["margin"] = value - bounds["edge_vertex_tanner"]
        except DegenerateParams as exc:
            notes.append(f"improved: {exc}")
        try:
            bounds["nbhd_sum_coefficient"] = nbhd_sum_coefficient(
                d, mu_val, params.alpha)
        except DegenerateParams as exc:
            notes.append(f"nbhd: {exc}")

    if params.epsilon is not None:
        try:
            alpha0, bound = alpha0_expansion(d, mu_val, params.epsilon)
            bounds["alpha0"] = alpha0
            bounds["expansion_at_alpha0"] = bound
        except HypothesisViolated as exc:
            hypothesis_ok = False
            notes.append(f"alpha0: {exc}")
        if params.rate is not None:
            try:
                res = ss_distance_rate(d, mu_val, params.epsilon, params.rate)
                bounds["relative_distance"] = res.relative_distance
                bounds["rate_lb"] = res.rate_lb
                bounds["original_relative_distance"] = (
                    res.original_relative_distance)
                bounds["improvement_factor"] = res.improvement_factor
            except HypothesisViolated as exc:
                hypothesis_ok = False
                notes.append(f"distance: {exc}")

    if params.gamma is not None and params.n is not None:
        ec = alon_chung_bounds(d, params.n, params.gamma, mu_val)
        bounds["edge_count_center"] = ec.center
        bounds["edge_count_radius"] = ec.radius
        bounds["edge_count_upper"] = ec.upper
        bounds["edge_count_lower"] = ec.lower

    if params.delta0 is not None and params.n is not None:
        try:
            cd = code_distance_bounds(d, mu_val, params.delta0, params.n)
            bounds["code_distance"] = cd.main
            bounds["code_distance_ramanujan_form"] = cd.ramanujan_form
            bounds["code_distance_alon"] = cd.alon_original
        except DegenerateParams as exc:
            notes.append(f"code distance: {exc}")

    return BoundReport(
        params=params,
        bounds=bounds,
        flags={"degenerate": degenerate, "hypothesis_ok": hypothesis_ok},
        notes=tuple(notes),
    )
