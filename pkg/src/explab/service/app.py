"""HTTP service exposing the library: graph generation, spectra, bound
reports, exhaustive verification, and code construction.

Every endpoint is stateless; identical requests produce identical responses.
Domain errors map to status codes the CLI translates into its exit codes:
400 bad input, 409 hypothesis violated, 500 internal/inequality failures
(the latter should never happen — they would falsify proved statements).
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bounds import (
    ExpansionParams,
    bound_report,
    code_distance_bounds,
    family_sweep,
    improved_bound,
    number_to_json,
    parse_number,
    ss_distance_rate,
)
from ..codes import (
    expander_map_distance,
    inner_code_from_spec,
    sipser_spielman_code,
)
from ..errors import (
    CounterexampleFound,
    EmptyRange,
    ExplabError,
    GivesUp,
    HypothesisViolated,
    InvalidInput,
    NoConvergence,
    TooLarge,
)
from ..graphs import (
    Graph,
    corpus_small,
    edge_vertex_graph,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_paley,
    gen_petersen,
    gen_random_regular,
    graph_from_edges,
    is_connected,
)
from ..oracle import (
    exact_expansion_multi,
    min_distance_bruteforce,
    verify_alon_chung,
    verify_nbhd_and_boundary,
)
from ..spectral import edge_vertex_spectrum_check, graph_spectrum
from . import schemas

_BAD_INPUT = (InvalidInput, EmptyRange, TooLarge, GivesUp, NoConvergence)


def _graph_from_model(model: schemas.GraphModel) -> Graph:
    return graph_from_edges(model.n, model.edges)


def _spectrum_payload(g: Graph, tol: float):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = graph_spectrum(g, tol)
    regular = g.is_regular
    d = g.degrees[0] if regular else None
    degenerate = bool(regular and spec.mu >= d - 1e-9)
    return spec, regular, d, degenerate


def _mu_for_bounds(spec, d: int) -> float:
    # every adjacency eigenvalue of a d-regular graph lies in [-d, d]; a
    # computed mu a few ulps above d is solver noise, not data
    return min(spec.mu, float(d))


def create_app() -> FastAPI:
    app = FastAPI(title="explab", version=__version__)

    @app.exception_handler(ExplabError)
    async def _domain_error(request: Request, exc: ExplabError):
        if isinstance(exc, _BAD_INPUT):
            status = 400
        elif isinstance(exc, HypothesisViolated):
            status = 409
        else:  # CheckFailed, InternalMismatch, CounterexampleFound: math broke
            status = 500
        body = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, CounterexampleFound) and exc.report is not None:
            body["report"] = exc.report.to_json()
        return JSONResponse(status_code=status, content=body)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/graphs/generate", response_model=schemas.GenerateResponse)
    def generate(req: schemas.GenerateRequest):
        if req.kind == "complete":
            _require(req.n is not None, "complete needs n")
            g = gen_complete(req.n)
        elif req.kind == "cycle":
            _require(req.n is not None, "cycle needs n")
            g = gen_cycle(req.n)
        elif req.kind == "circulant":
            _require(req.n is not None and req.offsets,
                     "circulant needs n and offsets")
            g = gen_circulant(req.n, req.offsets)
        elif req.kind == "paley":
            _require(req.q is not None, "paley needs q")
            g = gen_paley(req.q)
        elif req.kind == "petersen":
            g = gen_petersen()
        else:
            _require(req.n is not None and req.d is not None,
                     "random needs n and d")
            g = gen_random_regular(req.n, req.d, req.seed)
        ev = None
        if req.edge_vertex:
            ev = schemas.BipartiteGraphModel(**edge_vertex_graph(g).to_json())
        return schemas.GenerateResponse(
            graph=schemas.GraphModel(**g.to_json()), edge_vertex=ev)

    @app.post("/spectrum", response_model=schemas.SpectrumResponse)
    def spectrum(req: schemas.SpectrumRequest):
        g = _graph_from_model(req.graph)
        spec, regular, d, degenerate = _spectrum_payload(g, req.tol)
        ev_report = None
        if req.edge_vertex_check:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                ev_report = edge_vertex_spectrum_check(g, req.tol).to_json()
        return schemas.SpectrumResponse(
            spectrum=schemas.SpectrumModel(**spec.to_json()),
            connected=is_connected(g),
            regular=regular,
            d=d,
            degenerate=degenerate,
            edge_vertex_report=ev_report,
        )

    @app.post("/bounds/report", response_model=schemas.BoundReportModel)
    def bounds(req: schemas.BoundsRequest):
        if req.graph is not None:
            g = _graph_from_model(req.graph)
            d = g.assert_regular()
            spec, _, _, _ = _spectrum_payload(g, req.tol)
            mu_val = _mu_for_bounds(spec, d)
            n = g.n
        else:
            _require(req.d is not None and req.mu is not None,
                     "either graph or both d and mu are required")
            d = parse_number(req.d)
            mu_val = parse_number(req.mu)
            n = None
        params = ExpansionParams(
            d=d,
            mu=mu_val,
            c=parse_number(req.c),
            alpha=_opt(req.alpha),
            epsilon=_opt(req.epsilon),
            gamma=_opt(req.gamma),
            n=_opt(req.n) if req.n is not None else n,
            delta0=_opt(req.delta0),
            rate=_opt(req.rate),
        )
        return schemas.BoundReportModel(**bound_report(params).to_json())

    @app.post("/bounds/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest):
        rows = family_sweep(req.m_lo, req.m_hi)
        out_rows = []
        for row in rows:
            out = {}
            for key, val in row.items():
                if isinstance(val, Fraction):
                    out[key] = number_to_json(val)
                    out[key + "_float"] = float(val)
                else:
                    out[key] = val
            out_rows.append(out)
        return schemas.SweepResponse(
            rows=out_rows,
            hypothesis_ok=all(r["hypothesis_ok"] for r in rows),
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        if req.corpus:
            instances = corpus_small(include_random=req.include_random)
        else:
            _require(req.graph is not None, "provide a graph or corpus")
            instances = [("input", _graph_from_model(req.graph))]
        single = len(instances) == 1
        alphas = [parse_number(a) for a in req.alphas]
        results = []
        violations = 0
        for name, g in instances:
            d = g.assert_regular()
            spec, _, _, degenerate = _spectrum_payload(g, req.tol)
            entry = {"name": name, "n": g.n, "d": d, "mu": spec.mu,
                     "degenerate": degenerate, "checks": {}}
            if "alon_chung" in req.checks:
                try:
                    rep = verify_alon_chung(g, tol=req.tol, instance=name)
                    entry["checks"]["alon_chung"] = rep.to_json()
                except CounterexampleFound as exc:
                    entry["checks"]["alon_chung"] = exc.report.to_json()
                    violations += len(exc.report.violations)
            if "nbhd" in req.checks:
                try:
                    rep = verify_nbhd_and_boundary(g, tol=req.tol,
                                                   instance=name)
                    entry["checks"]["nbhd"] = rep.to_json()
                except CounterexampleFound as exc:
                    entry["checks"]["nbhd"] = exc.report.to_json()
                    violations += len(exc.report.violations)
            if "expansion" in req.checks:
                h = edge_vertex_graph(g)
                # alphas whose size range is empty on this instance are
                # reported as skipped, not errors — tiny graphs in a corpus
                # sweep would otherwise poison the whole run
                live = [a for a in alphas if math.floor(a * h.n_in) >= 1]
                try:
                    per_alpha = exact_expansion_multi(
                        h, live, max_inputs=req.max_inputs) if live else {}
                    block = {}
                    for alpha in alphas:
                        if alpha not in per_alpha:
                            block[str(alpha)] = {
                                "skipped": "empty size range"}
                            continue
                        ratio, wit = per_alpha[alpha]
                        bnd = improved_bound(d, _mu_for_bounds(spec, d),
                                             float(alpha))
                        ok = float(ratio) >= bnd - 1e-9 * max(1.0, bnd)
                        if not ok:
                            violations += 1
                        block[str(alpha)] = {
                            "ratio": number_to_json(ratio),
                            "ratio_float": float(ratio),
                            "bound": bnd,
                            "ok": ok,
                            "witness": wit.to_json(),
                        }
                    entry["checks"]["expansion"] = block
                except TooLarge:
                    if single:
                        raise
                    entry["checks"]["expansion"] = {
                        "skipped": f"edge-vertex n_in={h.n_in} exceeds "
                                   f"max_inputs={req.max_inputs}"}
            results.append(entry)
        return schemas.VerifyResponse(
            results=results, violations=violations, ok=violations == 0)

    @app.post("/codes/build", response_model=schemas.CodeResponse)
    def build_code(req: schemas.CodeRequest):
        g = _graph_from_model(req.graph)
        d = g.assert_regular()
        inner = inner_code_from_spec(req.inner)
        spec, _, _, _ = _spectrum_payload(g, req.tol)
        mu_val = _mu_for_bounds(spec, d)
        inner_info = {
            "spec": req.inner,
            "n": inner.n,
            "k": inner.k,
            "distance": inner.known_distance,
            "field": inner.field.to_json(),
        }
        if req.kind == "ss":
            h = edge_vertex_graph(g)
            code = sipser_spielman_code(h, inner, shuffle_seed=req.shuffle_seed)
            distance = (None if code.k == 0
                        else min_distance_bruteforce(code, req.max_words))
            dist_block = {"actual": distance, "n": code.n, "k": code.k,
                          "rate": number_to_json(code.rate)}
            ok = True
            if inner.known_distance is not None:
                eps = Fraction(inner.known_distance, inner.n)
                rate_lb = 2 * inner.rate - 1
                dist_block["designed_rate_lb"] = number_to_json(rate_lb)
                try:
                    res = ss_distance_rate(d, mu_val, float(eps), inner.rate)
                    bound_words = res.relative_distance * code.n
                    dist_block["relative_distance_bound"] = res.relative_distance
                    dist_block["distance_bound"] = bound_words
                    if distance is not None:
                        ok = distance >= bound_words - 1e-9 * max(1.0, bound_words)
                        dist_block["tight"] = bool(
                            abs(distance - bound_words) <= 1e-9 * code.n)
                except HypothesisViolated as exc:
                    dist_block["bound_note"] = str(exc)
            return schemas.CodeResponse(kind="ss", inner=inner_info,
                                        code=code.to_json(),
                                        distance=dist_block, ok=ok)
        # kind == "exp": symbol-level distance of the neighborhood lift
        distance = expander_map_distance(g, inner, max_words=req.max_words)
        dist_block = {"actual": distance, "n": g.n, "k": inner.k,
                      "alphabet": f"GF({inner.field.q})^{d}"}
        ok = True
        if inner.known_distance is not None:
            delta0 = Fraction(inner.known_distance, inner.n)
            cdb = code_distance_bounds(d, mu_val, float(delta0), g.n)
            dist_block["bound"] = cdb.main
            dist_block["bound_alon"] = cdb.alon_original
            mu_sq_ok = mu_val * mu_val <= 4 * d
            dist_block["ramanujan_form_applicable"] = bool(mu_sq_ok)
            if mu_sq_ok:
                dist_block["bound_ramanujan_form"] = cdb.ramanujan_form
            ok = distance >= cdb.main - 1e-9 * max(1.0, cdb.main)
            dist_block["tight"] = bool(
                abs(distance - cdb.main) <= 1e-9 * max(1.0, cdb.main))
        return schemas.CodeResponse(kind="exp", inner=inner_info, code=None,
                                    distance=dist_block, ok=ok)

    return app


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidInput(message)


def _opt(value):
    return None if value is None else parse_number(value)


app = create_app()


def main():  # uvicorn entry for module execution
    import uvicorn

    uvicorn.run("explab.service.app:app", host="127.0.0.1", port=8000)


if __name__ == "__main__":
    main()
