"""Command-line front end.

Each command builds one HTTP request and sends it to the service — an
in-process instance by default, or a remote one via --url — then renders the
response. Single reports are JSON; sweeps default to CSV. Every output embeds
{tool_version, seed, tol, input_digest} so re-running a command reproduces the
output byte for byte.

Exit codes: 0 ok; 2 bad input; 3 hypothesis violated (reports still printed,
offending rows flagged); 4 inequality violation (an exhaustive check found a
counterexample — should never happen) or internal mismatch.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys

from . import __version__

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_VIOLATION = 4

_SWEEP_COLUMNS = [
    "m", "q", "d", "mu",
    "epsilon", "epsilon_float",
    "relative_distance", "relative_distance_float",
    "original_relative_distance", "original_relative_distance_float",
    "improvement_factor", "improvement_factor_float",
    "hypothesis_ok", "note",
]


class ServiceClient:
    """POSTs to a remote base URL when given one, else to the app in-process."""

    def __init__(self, url: str = None):
        if url:
            import httpx

            self._client = httpx.Client(base_url=url, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                # some starlette builds warn at import time; keep it off the
                # user's stderr — it is not about their input
                warnings.filterwarnings(
                    "ignore", category=UserWarning,
                    module=r"fastapi\.testclient")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app, raise_server_exceptions=False)

    def post(self, path: str, payload: dict):
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"error": "InternalError", "message": resp.text}
        return resp.status_code, body


def _digest(path: str, payload: dict) -> str:
    blob = json.dumps({"path": path, "payload": payload}, sort_keys=True,
                      separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _meta(path: str, payload: dict, seed: int, tol: float) -> dict:
    return {
        "tool_version": __version__,
        "seed": seed,
        "tol": tol,
        "input_digest": _digest(path, payload),
    }


def _emit_json(doc: dict, out: str = None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows: list, meta: dict, out: str = None):
    buf = io.StringIO()
    for key in ("tool_version", "seed", "tol", "input_digest"):
        buf.write(f"# {key}={meta[key]}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else row.get(c)
                         for c in _SWEEP_COLUMNS])
    text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(status: int, body: dict) -> int:
    sys.stderr.write(json.dumps(body, indent=2, sort_keys=True) + "\n")
    if status in (400, 404, 422):
        return EXIT_BAD_INPUT
    if status == 409:
        return EXIT_HYPOTHESIS
    return EXIT_VIOLATION


def _load_graph(path: str) -> dict:
    with open(path) as fh:
        obj = json.load(fh)
    if "n" not in obj or "edges" not in obj:
        raise ValueError(f"{path} is not a graph file (need n and edges)")
    return {"n": obj["n"], "edges": obj["edges"]}


def _ev_path(out: str) -> str:
    return out[: -len(".json")] + ".ev.json" if out.endswith(".json") \
        else out + ".ev.json"


# -- subcommands -----------------------------------------------------------------


def cmd_graph(args) -> int:
    if args.complete is not None:
        payload = {"kind": "complete", "n": args.complete}
    elif args.cycle is not None:
        payload = {"kind": "cycle", "n": args.cycle}
    elif args.circulant is not None:
        n_str, offsets = args.circulant
        payload = {"kind": "circulant", "n": int(n_str),
                   "offsets": [int(s) for s in offsets.split(",")]}
    elif args.paley is not None:
        payload = {"kind": "paley", "q": args.paley}
    elif args.petersen:
        payload = {"kind": "petersen"}
    elif args.random is not None:
        n, d = args.random
        payload = {"kind": "random", "n": int(n), "d": int(d),
                   "seed": args.seed}
    else:
        sys.stderr.write("choose a generator\n")
        return EXIT_BAD_INPUT
    payload["edge_vertex"] = args.edge_vertex
    status, body = ServiceClient(args.url).post("/graphs/generate", payload)
    if status != 200:
        return _fail(status, body)
    meta = _meta("/graphs/generate", payload, args.seed, args.tol)
    graph_doc = dict(body["graph"], meta=meta)
    if args.out:
        _emit_json(graph_doc, args.out)
        if args.edge_vertex and body.get("edge_vertex"):
            _emit_json(dict(body["edge_vertex"], meta=meta),
                       _ev_path(args.out))
    else:
        doc = {"graph": graph_doc}
        if body.get("edge_vertex"):
            doc["edge_vertex"] = body["edge_vertex"]
        _emit_json(doc)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    payload = {"graph": _load_graph(args.graph), "tol": args.tol,
               "edge_vertex_check": args.edge_vertex_check}
    status, body = ServiceClient(args.url).post("/spectrum", payload)
    if status != 200:
        return _fail(status, body)
    body["meta"] = _meta("/spectrum", payload, args.seed, args.tol)
    _emit_json(body, args.out)
    return EXIT_OK


def _parse_sweep(spec: str):
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return int(lo), int(hi)
    m = int(spec)
    return m, m


def cmd_bounds(args) -> int:
    client = ServiceClient(args.url)
    if args.sweep_m:
        lo, hi = _parse_sweep(args.sweep_m)
        payload = {"m_lo": lo, "m_hi": hi}
        status, body = client.post("/bounds/sweep", payload)
        if status != 200:
            return _fail(status, body)
        meta = _meta("/bounds/sweep", payload, args.seed, args.tol)
        if (args.format or "csv") == "csv":
            _emit_csv(body["rows"], meta, args.out)
        else:
            _emit_json(dict(body, meta=meta), args.out)
        return EXIT_OK if body["hypothesis_ok"] else EXIT_HYPOTHESIS
    payload = {"tol": args.tol}
    if args.graph:
        payload["graph"] = _load_graph(args.graph)
    for name in ("d", "mu", "c", "alpha", "epsilon", "gamma", "n", "delta0",
                 "rate"):
        value = getattr(args, name)
        if value is not None:
            payload[name] = value
    status, body = client.post("/bounds/report", payload)
    if status != 200:
        return _fail(status, body)
    body["meta"] = _meta("/bounds/report", payload, args.seed, args.tol)
    _emit_json(body, args.out)
    return EXIT_OK if body["flags"].get("hypothesis_ok", True) \
        else EXIT_HYPOTHESIS


def cmd_verify(args) -> int:
    payload = {"tol": args.tol, "max_inputs": args.max_inputs,
               "include_random": not args.no_random}
    if args.corpus:
        payload["corpus"] = args.corpus
    elif args.graph:
        payload["graph"] = _load_graph(args.graph)
    else:
        sys.stderr.write("provide --graph or --corpus\n")
        return EXIT_BAD_INPUT
    if args.checks:
        payload["checks"] = args.checks.split(",")
    if args.alphas:
        payload["alphas"] = args.alphas.split(",")
    status, body = ServiceClient(args.url).post("/verify", payload)
    if status != 200:
        return _fail(status, body)
    body["meta"] = _meta("/verify", payload, args.seed, args.tol)
    _emit_json(body, args.out)
    return EXIT_OK if body["ok"] else EXIT_VIOLATION


def cmd_code(args) -> int:
    payload = {"kind": args.kind, "graph": _load_graph(args.graph),
               "inner": args.inner, "tol": args.tol,
               "max_words": args.max_words}
    if args.shuffle_seed is not None:
        payload["shuffle_seed"] = args.shuffle_seed
    status, body = ServiceClient(args.url).post("/codes/build", payload)
    if status != 200:
        return _fail(status, body)
    body["meta"] = _meta("/codes/build", payload,
                         args.shuffle_seed or 0, args.tol)
    _emit_json(body, args.out)
    return EXIT_OK if body["ok"] else EXIT_VIOLATION


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _add_common(p, seed: bool = True):
    p.add_argument("--url", help="remote service base URL (default: in-process)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("-o", "--out", help="output file (default: stdout)")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="explab",
        description="expansion bounds, exhaustive verification, graph codes")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="generate a graph (and its edge-vertex graph)")
    gen = p.add_mutually_exclusive_group(required=False)
    gen.add_argument("--complete", type=int, metavar="N")
    gen.add_argument("--cycle", type=int, metavar="N")
    gen.add_argument("--circulant", nargs=2, metavar=("N", "OFFSETS"))
    gen.add_argument("--paley", type=int, metavar="Q")
    gen.add_argument("--petersen", action="store_true")
    gen.add_argument("--random", nargs=2, metavar=("N", "D"))
    p.add_argument("--edge-vertex", action="store_true",
                   help="also emit the edge-vertex bipartite graph")
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("spectrum", help="adjacency spectrum and mu")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge-vertex-check", action="store_true",
                   help="include the edge-vertex spectrum identity report")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", help="closed-form bound report or family sweep")
    p.add_argument("--graph")
    for name in ("d", "mu", "c", "alpha", "epsilon", "gamma", "n", "delta0",
                 "rate"):
        p.add_argument(f"--{name}")
    p.add_argument("--sweep-m", metavar="M or LO..HI",
                   help="sweep the 2^(2m) family instead of a single report")
    p.add_argument("--format", choices=["json", "csv"])
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="exhaustive oracle checks")
    p.add_argument("--graph")
    p.add_argument("--corpus", choices=["small"])
    p.add_argument("--all", action="store_true",
                   help="run every check (the default)")
    p.add_argument("--checks", help="comma list: alon_chung,nbhd,expansion")
    p.add_argument("--alphas", help="comma list of size caps, e.g. 1/4,1/3,1/2")
    p.add_argument("--max-inputs", type=int, default=28)
    p.add_argument("--no-random", action="store_true",
                   help="corpus mode: skip the random-regular instances")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("code", help="build a graph code and brute-force its distance")
    p.add_argument("kind", choices=["ss", "exp"])
    p.add_argument("--graph", required=True)
    p.add_argument("--inner", required=True,
                   help="rep<d> | parity<n> | hamming74 | full<n> | rs<n>,<k>"
                        " with optional @gf<q>")
    p.add_argument("--shuffle-seed", type=int)
    p.add_argument("--max-words", type=int, default=1 << 24)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
