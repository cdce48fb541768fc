"""Request/response models for the HTTP layer.

Ratio-valued inputs (alpha, epsilon, delta0, rate, gamma, mu) accept exact
fraction strings like "1/3" as well as numbers; they are parsed with
bounds.parse_number so exactness survives the wire.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

NumberIn = Union[int, float, str]


class GraphModel(BaseModel):
    n: int
    edges: list[list[int]]


class BipartiteGraphModel(BaseModel):
    n_in: int
    n_out: int
    nbrs: list[list[int]]


class GenerateRequest(BaseModel):
    kind: Literal["complete", "cycle", "circulant", "paley", "petersen",
                  "random"]
    n: Optional[int] = None
    d: Optional[int] = None
    q: Optional[int] = None
    offsets: Optional[list[int]] = None
    seed: int = 0
    edge_vertex: bool = False


class GenerateResponse(BaseModel):
    graph: GraphModel
    edge_vertex: Optional[BipartiteGraphModel] = None


class SpectrumRequest(BaseModel):
    graph: GraphModel
    tol: float = 1e-10
    edge_vertex_check: bool = False


class SpectrumModel(BaseModel):
    eigenvalues: list[float]
    mu: float
    tol: float


class SpectrumResponse(BaseModel):
    spectrum: SpectrumModel
    connected: bool
    regular: bool
    d: Optional[int] = None
    degenerate: bool = False
    edge_vertex_report: Optional[dict] = None


class BoundsRequest(BaseModel):
    graph: Optional[GraphModel] = None
    d: Optional[NumberIn] = None
    mu: Optional[NumberIn] = None
    c: NumberIn = 2
    alpha: Optional[NumberIn] = None
    epsilon: Optional[NumberIn] = None
    gamma: Optional[NumberIn] = None
    n: Optional[NumberIn] = None
    delta0: Optional[NumberIn] = None
    rate: Optional[NumberIn] = None
    tol: float = 1e-10


class BoundReportModel(BaseModel):
    params: dict
    bounds: dict
    flags: dict
    notes: list[str]


class SweepRequest(BaseModel):
    m_lo: int = Field(ge=1)
    m_hi: int = Field(ge=1)


class SweepResponse(BaseModel):
    rows: list[dict]
    hypothesis_ok: bool


class VerifyRequest(BaseModel):
    graph: Optional[GraphModel] = None
    corpus: Optional[Literal["small"]] = None
    checks: list[Literal["alon_chung", "nbhd", "expansion"]] = [
        "alon_chung", "nbhd", "expansion"]
    alphas: list[NumberIn] = ["1/4", "1/3", "1/2"]
    tol: float = 1e-10
    max_inputs: int = 28
    include_random: bool = True


class VerifyResponse(BaseModel):
    results: list[dict]
    violations: int
    ok: bool


class CodeRequest(BaseModel):
    kind: Literal["ss", "exp"]
    graph: GraphModel
    inner: str
    shuffle_seed: Optional[int] = None
    tol: float = 1e-10
    max_words: int = 1 << 24


class CodeResponse(BaseModel):
    kind: str
    inner: dict
    code: Optional[dict] = None
    distance: dict
    ok: bool


class HealthResponse(BaseModel):
    status: str
    version: str
