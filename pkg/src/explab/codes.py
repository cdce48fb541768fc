"""Linear codes over GF(q) and the two graph-based constructions:

* the bipartite-constraint code: variables on the input side of a (c, d)-regular
  bipartite graph, one inner-code membership constraint per output vertex;
* the neighborhood lift: each vertex of a d-regular graph emits the restriction
  of a codeword to its neighborhood as one symbol of a degree-d extension
  alphabet.

Matrices are tuples of tuples of field elements (plain ints); all linear
algebra is exact field arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadParameters,
    InternalMismatch,
    InvalidInput,
    LengthMismatch,
    TooLarge,
)
from .fields import ExtSymbol, FieldSpec, field_make
from .graphs import BipartiteGraph, Graph, SplitMix64, boundary


class EmptySubcodeWarning(UserWarning):
    """A subcode computation produced the zero code (k = 0)."""


# -- exact linear algebra over GF(q) -------------------------------------------


def rref(field: FieldSpec, rows, ncols: int):
    """(reduced rows, pivot columns). Rows not matching ncols raise."""
    m = []
    for r in rows:
        if len(r) != ncols:
            raise LengthMismatch(f"row length {len(r)} != {ncols}")
        m.append([field.check(x) for x in r])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                coef = m[i][c]
                m[i] = [field.sub(x, field.mul(coef, y))
                        for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(field: FieldSpec, rows, ncols: int) -> int:
    return len(rref(field, rows, ncols)[0])


def nullspace(field: FieldSpec, rows, ncols: int):
    """Basis (list of length-ncols tuples) of {x : rows · x = 0}."""
    reduced, pivots = rref(field, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for r_i, p_c in enumerate(pivots):
            v[p_c] = field.neg(reduced[r_i][free])
        basis.append(tuple(v))
    return basis


def mat_vec(field: FieldSpec, rows, vec):
    out = []
    for row in rows:
        acc = 0
        for a, x in zip(row, vec):
            if a and x:
                acc = field.add(acc, field.mul(a, x))
        out.append(acc)
    return tuple(out)


# -- linear codes ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearCode:
    field: FieldSpec
    n: int
    k: int
    gen: tuple   # k x n
    pchk: tuple  # (n-k) x n
    known_distance: int = None
    distance_provenance: str = None  # "computed" | "asserted"

    def __post_init__(self):
        if not (0 <= self.k <= self.n) or self.n < 1:
            raise BadParameters(f"bad dimensions [{self.n}, {self.k}]")
        if len(self.gen) != self.k or len(self.pchk) != self.n - self.k:
            raise BadParameters("matrix row counts do not match [n, k]")
        if rank(self.field, self.gen, self.n) != self.k:
            raise BadParameters("generator rows are dependent")
        if rank(self.field, self.pchk, self.n) != self.n - self.k:
            raise BadParameters("parity-check rows are dependent")
        for g_row in self.gen:
            syndrome = mat_vec(self.field, self.pchk, g_row)
            if any(syndrome):
                raise BadParameters("gen . pchk^T != 0")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def is_empty(self) -> bool:
        return self.k == 0

    def encode(self, msg) -> tuple:
        msg = tuple(msg)
        if len(msg) != self.k:
            raise LengthMismatch(f"message length {len(msg)} != k={self.k}")
        word = [0] * self.n
        f = self.field
        for coef, row in zip(msg, self.gen):
            if coef:
                word = [f.add(w, f.mul(coef, x)) for w, x in zip(word, row)]
        return tuple(word)

    def codewords(self, max_words: int = 1 << 20):
        """Yield every codeword (the zero word first)."""
        total = self.field.q ** self.k
        if total > max_words:
            raise TooLarge(f"q^k = {total} exceeds cap {max_words}")
        q = self.field.q
        for idx in range(total):
            msg, t = [], idx
            for _ in range(self.k):
                msg.append(t % q)
                t //= q
            yield self.encode(msg)

    def contains(self, word) -> bool:
        if len(word) != self.n:
            raise LengthMismatch(f"word length {len(word)} != n={self.n}")
        return not any(mat_vec(self.field, self.pchk, word))

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "k": self.k,
            "gen": [list(r) for r in self.gen],
            "pchk": [list(r) for r in self.pchk],
            "known_distance": self.known_distance,
            "distance_provenance": self.distance_provenance,
        }


def _identity(n: int) -> list:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def code_from_generator(field: FieldSpec, gen, known_distance=None,
                        provenance=None) -> LinearCode:
    gen_rows, _ = rref(field, gen, len(gen[0]))
    n = len(gen[0])
    pchk = nullspace(field, gen_rows, n)
    return LinearCode(field, n, len(gen_rows), tuple(gen_rows), tuple(pchk),
                      known_distance, provenance)


def code_from_parity_check(field: FieldSpec, pchk, n: int,
                           allow_empty: bool = False) -> LinearCode:
    reduced, _ = rref(field, pchk, n)
    gen = nullspace(field, reduced, n)
    k = len(gen)
    if k == 0:
        if not allow_empty:
            raise BadParameters("parity checks admit only the zero word")
        warnings.warn("subcode is zero-dimensional", EmptySubcodeWarning)
        reduced = tuple(_identity(n))
    return LinearCode(field, n, k, tuple(gen), tuple(reduced))


# -- the inner-code zoo ------------------------------------------------------------


def _with_computed_distance(code: LinearCode) -> LinearCode:
    from .oracle import min_distance_bruteforce

    dist = min_distance_bruteforce(code)
    return LinearCode(code.field, code.n, code.k, code.gen, code.pchk,
                      known_distance=dist, distance_provenance="computed")


def code_repetition(d: int, field: FieldSpec = None) -> LinearCode:
    """[d, 1, d]: all-equal words."""
    if d < 1:
        raise BadParameters(f"d={d} must be >= 1")
    field = field or field_make(2)
    gen = [tuple([1] * d)]
    return _with_computed_distance(code_from_generator(field, gen))


def code_parity(n: int, field: FieldSpec = None) -> LinearCode:
    """[n, n-1, 2]: words whose coordinates sum to zero."""
    if n < 2:
        raise BadParameters(f"n={n} must be >= 2")
    field = field or field_make(2)
    neg1 = field.neg(1)
    gen = [tuple((1 if j == i else (neg1 if j == n - 1 else 0))
                 for j in range(n)) for i in range(n - 1)]
    return _with_computed_distance(code_from_generator(field, gen))


def code_hamming74() -> LinearCode:
    """[7, 4, 3] over GF(2), systematic form."""
    gen = [
        (1, 0, 0, 0, 1, 1, 0),
        (0, 1, 0, 0, 1, 0, 1),
        (0, 0, 1, 0, 0, 1, 1),
        (0, 0, 0, 1, 1, 1, 1),
    ]
    return _with_computed_distance(code_from_generator(field_make(2), gen))


def code_full(n: int, field: FieldSpec = None) -> LinearCode:
    """[n, n, 1]: the whole space. Its parity-check matrix is empty."""
    if n < 1:
        raise BadParameters(f"n={n} must be >= 1")
    field = field or field_make(2)
    return LinearCode(field, n, n, tuple(_identity(n)), (),
                      known_distance=1, distance_provenance="computed")


def code_rs(n: int, k: int, field: FieldSpec) -> LinearCode:
    """Polynomial-evaluation code of length n on the first n field elements;
    n = q + 1 appends the leading-coefficient ("point at infinity") column.
    Distance is n - k + 1; computed by enumeration when cheap, else asserted.
    """
    q = field.q
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > q + 1:
        raise BadParameters(f"n={n} exceeds q+1={q + 1}")
    extended = n == q + 1
    points = list(range(q if extended else n))
    gen = []
    for i in range(k):
        row = [field.pow(x, i) if x or i == 0 else 0 for x in points]
        if extended:
            row.append(1 if i == k - 1 else 0)
        gen.append(tuple(row))
    code = code_from_generator(field, gen)
    designed = n - k + 1
    if q**k <= 1 << 12:
        from .oracle import min_distance_bruteforce

        actual = min_distance_bruteforce(code)
        if actual != designed:
            raise InternalMismatch(
                f"evaluation code distance {actual} != designed {designed}")
        return LinearCode(field, n, k, code.gen, code.pchk, actual, "computed")
    return LinearCode(field, n, k, code.gen, code.pchk, designed, "asserted")


def subfield_subcode(code: LinearCode) -> LinearCode:
    """Restriction {c in code : every coordinate lies in the prime subfield},
    as a code over GF(p). Solved as a linear system over GF(p): each GF(q)
    parity row splits into k coordinate rows. A zero-dimensional result is
    allowed and flagged with a warning."""
    f = code.field
    if f.k == 1:
        return code
    sub = field_make(f.p)
    prime_rows = []
    for row in code.pchk:
        coord_rows = [[0] * code.n for _ in range(f.k)]
        for j, h in enumerate(row):
            for t, digit in enumerate(f.coords(h)):
                coord_rows[t][j] = digit
        prime_rows.extend(tuple(r) for r in coord_rows)
    return code_from_parity_check(sub, prime_rows, code.n, allow_empty=True)


def _spec_int(text: str, spec: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise BadParameters(f"bad number {text!r} in inner code spec {spec!r}") \
            from None


def inner_code_from_spec(spec: str) -> LinearCode:
    """Factory from compact strings: rep<d>, parity<n>, hamming74, full<n>,
    rs<n>,<k>; an optional @gf<q> suffix picks the field (default GF(2))."""
    from .fields import field_from_order

    base, _, suffix = spec.strip().partition("@")
    fld = None
    if suffix:
        if not suffix.startswith("gf"):
            raise BadParameters(f"bad field suffix {suffix!r}")
        fld = field_from_order(_spec_int(suffix[2:], spec))
    if base == "hamming74":
        if fld is not None and fld.q != 2:
            raise BadParameters("hamming74 is binary")
        return code_hamming74()
    if base.startswith("rep"):
        return code_repetition(_spec_int(base[3:], spec), fld)
    if base.startswith("parity"):
        return code_parity(_spec_int(base[6:], spec), fld)
    if base.startswith("full"):
        return code_full(_spec_int(base[4:], spec), fld)
    if base.startswith("rs"):
        try:
            n_str, k_str = base[2:].split(",")
        except ValueError:
            raise BadParameters(f"rs spec needs rs<n>,<k>, got {base!r}")
        if fld is None:
            raise BadParameters("rs codes need an explicit @gf<q> field")
        return code_rs(_spec_int(n_str, spec), _spec_int(k_str, spec), fld)
    raise BadParameters(f"unknown inner code spec {spec!r}")


# -- bipartite-constraint code ------------------------------------------------------


def sipser_spielman_code(b: BipartiteGraph, inner: LinearCode,
                         shuffle_seed: int = None) -> LinearCode:
    """Code on the input side of b: a word is valid iff its restriction to every
    output vertex's neighbor list (ascending order; optionally shuffled per
    output by a seeded generator) is a codeword of `inner`.

    Built by stamping inner's parity rows onto each constraint; dimension comes
    from the exact rank, which can beat the designed rate c*r - (c-1) (asserted
    as a lower bound here).
    """
    if inner.n != b.d_out:
        raise LengthMismatch(
            f"inner code length {inner.n} != output degree {b.d_out}")
    constraints = b.output_neighbor_lists()
    if shuffle_seed is not None:
        rng = SplitMix64(shuffle_seed)
        for lst in constraints:
            rng.shuffle(lst)
    n_vars = b.n_in
    rows = []
    for members in constraints:
        for h in inner.pchk:
            row = [0] * n_vars
            for j, var in enumerate(members):
                row[var] = h[j]
            rows.append(tuple(row))
    if not rows:  # inner is the full space: no constraints at all
        return code_full(n_vars, inner.field)
    code = code_from_parity_check(inner.field, rows, n_vars, allow_empty=True)
    designed = b.c * inner.rate - (b.c - 1)
    if Fraction(code.k, n_vars) < designed:
        raise InternalMismatch(
            f"rate {Fraction(code.k, n_vars)} below designed {designed}")
    return code


# -- neighborhood lift ----------------------------------------------------------------


@dataclass(frozen=True)
class ExpanderMapCodeword:
    outer: tuple   # n ExtSymbols
    source: tuple  # the underlying length-n word

    def weight(self) -> int:
        return sum(1 for sym in self.outer if not sym.is_zero)

    def coordinate_weight(self) -> int:
        """Nonzero count of the flattened GF(q) coordinate stream."""
        return sum(sum(1 for c in sym.coords if c) for sym in self.outer)


class ExpanderMap:
    """Vertex-neighborhood lift: position i of the image holds the source word
    restricted to vertex i's neighbor list (ascending; optionally shuffled).
    The image of a length-n code over GF(q) is a GF(q)-linear code over the
    alphabet GF(q)^d."""

    def __init__(self, g: Graph, code: LinearCode, shuffle_seed: int = None):
        if code.n != g.n:
            raise LengthMismatch(f"code length {code.n} != graph order {g.n}")
        self.d = g.assert_regular()
        self.graph = g
        self.code = code
        lists = [list(g.adj[v]) for v in range(g.n)]
        if shuffle_seed is not None:
            rng = SplitMix64(shuffle_seed)
            for lst in lists:
                rng.shuffle(lst)
        self.neighbor_lists = tuple(tuple(lst) for lst in lists)

    def apply(self, word) -> ExpanderMapCodeword:
        word = tuple(word)
        if len(word) != self.graph.n:
            raise LengthMismatch(
                f"word length {len(word)} != graph order {self.graph.n}")
        f = self.code.field
        outer = tuple(
            ExtSymbol(f, tuple(word[u] for u in lst))
            for lst in self.neighbor_lists
        )
        return ExpanderMapCodeword(outer, word)

    def image_codewords(self, max_words: int = 1 << 20):
        for word in self.code.codewords(max_words):
            yield self.apply(word)


def expander_map(g: Graph, code: LinearCode,
                 shuffle_seed: int = None) -> ExpanderMap:
    return ExpanderMap(g, code, shuffle_seed)


def expander_map_distance(g: Graph, code: LinearCode,
                          max_words: int = 1 << 24) -> int:
    """Exact minimum symbol weight of the lifted code, computed two ways per
    codeword — direct nonzero-symbol count, and |boundary(support)| in the
    graph — which must agree (the lift's weight identity)."""
    emap = ExpanderMap(g, code)
    if code.k == 0:
        raise InvalidInput("zero-dimensional code has no distance")
    total = code.field.q ** code.k
    if total > max_words:
        raise TooLarge(f"q^k = {total} exceeds cap {max_words}")
    best = None
    for word in code.codewords(max_words):
        support = [v for v, x in enumerate(word) if x]
        if not support:
            continue
        via_map = emap.apply(word).weight()
        via_boundary = len(boundary(g, support))
        if via_map != via_boundary:
            raise InternalMismatch(
                f"symbol weight {via_map} != boundary size {via_boundary} "
                f"for word {word}")
        if best is None or via_map < best:
            best = via_map
    return best
