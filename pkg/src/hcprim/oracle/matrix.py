"""Small classical matrix groups over finite fields, by exhaustive enumeration.

Vectors of ``F^n`` are encoded as integers ``sum v_i Q^i`` (``Q = |F|``) and a
matrix is the tuple of the codes of its columns.  Form-preserving groups are
enumerated column by column: column ``i`` must satisfy
``B(g e_j, g e_i) = lam B(e_j, e_i)`` for ``j <= i`` (and ``Q(g e_i) = lam Q(e_i)``
for quadratic forms), which pins down exactly the similitudes of multiplier
``lam``.  Candidate sets are bitmasks, so the search is fast at desk scale.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, Sequence

from hcprim.centralizers import (
    ClassDataError,
    ClassFactor,
    SemisimpleClassData,
    _sorted_factors,
    matrix_group_order,
)
from hcprim.gf import Field, Poly, factor_raw, field_of_order, quadratic_extension
from hcprim.oracle.dixon import OracleError
from hcprim.polyops import star_alpha_raw

MAX_ORACLE_ORDER = 5_000_000

Matrix = tuple  # tuple of column codes

KINDS = (
    "GL", "SL", "GU", "SU", "Sp", "CSp",
    "SO+", "SO-", "O+", "O-", "CSO+", "CSO-", "CO+", "CO-",
    "SO", "O",
)


def kind_order(kind: str, n: int, q: int) -> int:
    """Closed-form order of the enumerated group."""
    if kind in ("O+", "O-"):
        return 2 * matrix_group_order("SO" + kind[-1], n, q)
    if kind in ("CO+", "CO-"):
        return 2 * (q - 1) * matrix_group_order("SO" + kind[-1], n, q)
    if kind == "O":
        return 2 * matrix_group_order("SO", n, q)
    return matrix_group_order(kind, n, q)


# ---------------------------------------------------------------------------
# vector space tables


class VectorSpace:
    """``F^n`` with addition and scalar tables on vector codes."""

    def __init__(self, F: Field, n: int):
        self.F = F
        self.n = n
        Q = F.order
        self.Q = Q
        self.N = Q**n
        self.coords: list[tuple[int, ...]] = [
            tuple((v // Q**i) % Q for i in range(n)) for v in range(self.N)
        ]
        self.add = [[self.encode([F.add(a, b) for a, b in zip(u, w)]) for w in self.coords] for u in self.coords]
        self.smul = [[self.encode([F.mul(c, a) for a in u]) for u in self.coords] for c in range(Q)]
        self.basis = [Q**i for i in range(n)]

    def encode(self, v: Sequence[int]) -> int:
        out = 0
        for i in reversed(range(self.n)):
            out = out * self.Q + v[i]
        return out

    def apply(self, g: Matrix, v: int) -> int:
        acc = 0
        add, smul = self.add, self.smul
        for a, c in zip(self.coords[v], g):
            if a:
                acc = add[acc][smul[a][c]]
        return acc

    def mul(self, g: Matrix, h: Matrix) -> Matrix:
        """Matrix product ``g h`` (apply ``h`` first)."""
        return tuple(self.apply(g, c) for c in h)

    def neg(self, g: Matrix) -> Matrix:
        m1 = self.F.neg(1)
        return tuple(self.smul[m1][c] for c in g)

    def identity(self) -> Matrix:
        return tuple(self.basis)

    def rows(self, g: Matrix) -> list[list[int]]:
        cols = [self.coords[c] for c in g]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def from_rows(self, rows: Sequence[Sequence[int]]) -> Matrix:
        return tuple(self.encode([rows[i][j] for i in range(self.n)]) for j in range(self.n))

    def span(self, vecs: Sequence[int]) -> list[int]:
        out = {0}
        for v in vecs:
            out = {self.add[s][self.smul[a][v]] for s in out for a in range(self.Q)}
        return sorted(out)


# ---------------------------------------------------------------------------
# linear algebra over F


def det(F: Field, rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    out = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = F.neg(out)
        out = F.mul(out, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c]:
                f = F.mul(a[r][c], inv)
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    return out


def nullspace(F: Field, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``{x : A x = 0}``."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(a[i][fc])
        out.append(x)
    return out


def mat_poly(F: Field, rows: Sequence[Sequence[int]], f: Poly) -> list[list[int]]:
    """``f(A)`` by Horner's rule."""
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for c in reversed(f):
        out = [[sum_f(F, (F.mul(out[i][k], rows[k][j]) for k in range(n))) for j in range(n)] for i in range(n)]
        for i in range(n):
            out[i][i] = F.add(out[i][i], c)
    return out


def sum_f(F: Field, xs) -> int:
    acc = 0
    for x in xs:
        acc = F.add(acc, x)
    return acc


def minimal_polynomial(F: Field, rows: Sequence[Sequence[int]]) -> Poly:
    """Minimal polynomial from the first linear dependency among ``A^0, A^1, ...``."""
    n = len(rows)
    powers = []
    cur = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while True:
        powers.append([x for r in cur for x in r])
        k = len(powers)
        # solve sum c_i P_i = 0 with c_{k-1} = 1
        cols = list(zip(*powers))  # rows of the (n^2 x k) system
        ns = nullspace(F, [list(r) for r in cols])
        if ns:
            v = ns[0]
            lead = v[-1]
            if lead:
                inv = F.inv(lead)
                return tuple(F.mul(inv, x) for x in v)
        cur = [[sum_f(F, (F.mul(cur[i][t], rows[t][j]) for t in range(n))) for j in range(n)] for i in range(n)]
        if k > n + 1:
            raise OracleError("minimal polynomial search did not terminate")


# ---------------------------------------------------------------------------
# forms


@dataclass
class FormData:
    """The defining form of a classical group on ``F^n``.

    ``bil(v, w)`` is the bilinear (or sesquilinear) form and ``diag(v)`` the
    value that must scale on each column: ``Q(v)`` for quadratic forms,
    ``h(v, v)`` for hermitian forms, ``B(v, v)`` for alternating forms.
    """

    kind: str  # none / symplectic / quadratic / hermitian
    bil: Callable[[Sequence[int], Sequence[int]], int] | None = None
    diag: Callable[[Sequence[int]], int] | None = None
    quad: Callable[[Sequence[int]], int] | None = None


def anisotropic_constant(F: Field) -> int:
    """Smallest ``c`` with ``X^2 + X + c`` irreducible over ``F``."""
    for c in range(F.order):
        if not any(F.add(F.add(F.mul(x, x), x), c) == 0 for x in range(F.order)):
            return c
    raise AssertionError("no anisotropic plane")


def quadratic_form(F: Field, n: int, sign: str) -> Callable[[Sequence[int]], int]:
    """``Q = sum x_i x_{i+h}`` on the hyperbolic part; a minus-type plane
    ``x^2 + xy + c y^2`` or a square term ``x^2`` for odd ``n`` on the last
    coordinates."""
    if n % 2:
        h = (n - 1) // 2

        def Q(v: Sequence[int]) -> int:
            acc = F.mul(v[n - 1], v[n - 1])
            for i in range(h):
                acc = F.add(acc, F.mul(v[i], v[i + h]))
            return acc

        return Q
    h = n // 2 if sign == "+" else n // 2 - 1
    c = anisotropic_constant(F)

    def Q(v: Sequence[int]) -> int:
        acc = 0
        for i in range(h):
            acc = F.add(acc, F.mul(v[i], v[i + h]))
        if sign == "-":
            x, y = v[n - 2], v[n - 1]
            acc = F.add(acc, F.add(F.add(F.mul(x, x), F.mul(x, y)), F.mul(c, F.mul(y, y))))
        return acc

    return Q


def make_form(kind: str, F: Field, n: int, q: int) -> FormData:
    if kind in ("GL", "SL"):
        return FormData("none")
    if kind in ("GU", "SU"):
        # h(v, w) = sum v_i w_{n-1-i}^q
        def h(v: Sequence[int], w: Sequence[int]) -> int:
            return sum_f(F, (F.mul(v[i], F.pow(w[n - 1 - i], q)) for i in range(n)))

        return FormData("hermitian", h, lambda v: h(v, v))
    if kind in ("Sp", "CSp"):
        if n % 2:
            raise OracleError("symplectic groups need even dimension")
        m = n // 2

        def b(v: Sequence[int], w: Sequence[int]) -> int:
            acc = 0
            for i in range(m):
                acc = F.add(acc, F.sub(F.mul(v[i], w[i + m]), F.mul(v[i + m], w[i])))
            return acc

        return FormData("symplectic", b, lambda v: b(v, v))
    sign = kind[-1] if kind[-1] in "+-" else ""
    if sign and n % 2:
        raise OracleError(f"{kind} needs even dimension")
    if not sign and n % 2 == 0:
        raise OracleError(f"{kind} needs odd dimension")
    Q = quadratic_form(F, n, sign or "+")

    def polar(v: Sequence[int], w: Sequence[int]) -> int:
        s = [F.add(a, b) for a, b in zip(v, w)]
        return F.sub(F.sub(Q(s), Q(v)), Q(w))

    return FormData("quadratic", polar, Q, Q)


# ---------------------------------------------------------------------------
# groups


@dataclass
class MatrixGroup:
    kind: str
    n: int
    q: int
    F: Field
    V: VectorSpace
    form: FormData
    elements: list[Matrix]
    multipliers: list[int]
    dets: list[int]
    index: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: Matrix) -> bool:
        return g in self.index

    def mul(self, g: Matrix, h: Matrix) -> Matrix:
        return self.V.mul(g, h)

    def element_order(self, g: Matrix) -> int:
        e = self.V.identity()
        h = g
        k = 1
        while h != e:
            h = self.V.mul(h, g)
            k += 1
        return k

    def is_semisimple(self, g: Matrix) -> bool:
        return self.element_order(g) % self.F.p != 0

    def multiplier(self, g: Matrix) -> int:
        return self.multipliers[self.index[g]]

    def det(self, g: Matrix) -> int:
        return self.dets[self.index[g]]


def _masks(V: VectorSpace, fn: Callable[[int], int]) -> list[int]:
    out = [0] * V.F.order
    for w in range(V.N):
        out[fn(w)] |= 1 << w
    return out


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _enumerate_similitudes(V: VectorSpace, form: FormData, lam: int) -> Iterator[Matrix]:
    F = V.F
    n = V.n
    coords = V.coords
    e = V.basis
    bil = form.bil
    diag = form.diag
    assert bil is not None and diag is not None
    target_b = [[F.mul(lam, bil(coords[e[j]], coords[e[i]])) for i in range(n)] for j in range(n)]
    target_d = [F.mul(lam, diag(coords[e[i]])) for i in range(n)]
    diag_masks = _masks(V, lambda w: diag(coords[w]))
    cache: dict[int, list[int]] = {}

    def row_masks(u: int) -> list[int]:
        r = cache.get(u)
        if r is None:
            cu = coords[u]
            r = _masks(V, lambda w: bil(cu, coords[w]))
            cache[u] = r
        return r

    cols: list[int] = []

    def rec(i: int, cand_base: int) -> Iterator[Matrix]:
        if i == n:
            yield tuple(cols)
            return
        m = diag_masks[target_d[i]] & ~1  # nonzero column
        for j in range(i):
            m &= row_masks(cols[j])[target_b[j][i]]
            if not m:
                return
        for w in _bits(m):
            cols.append(w)
            yield from rec(i + 1, 0)
            cols.pop()

    yield from rec(0, 0)


def _enumerate_gl(V: VectorSpace) -> Iterator[Matrix]:
    n = V.n
    cols: list[int] = []

    def rec(i: int, span: set[int]) -> Iterator[Matrix]:
        if i == n:
            yield tuple(cols)
            return
        for w in range(V.N):
            if w in span:
                continue
            cols.append(w)
            new = {V.add[s][V.smul[a][w]] for s in span for a in range(V.Q)}
            yield from rec(i + 1, new)
            cols.pop()

    yield from rec(0, {0})


def build_matrix_group(kind: str, n: int, q: int, bound: int = MAX_ORACLE_ORDER) -> MatrixGroup:
    """Enumerate all elements of the finite classical group ``kind`` on ``F^n``.

    For the unitary kinds the matrices have entries in ``F_{q^2}``.
    """
    if kind not in KINDS:
        raise OracleError(f"unknown group kind {kind!r}")
    want = kind_order(kind, n, q)
    if want > bound:
        raise OracleError(f"|{kind}_{n}({q})| = {want} exceeds the oracle bound {bound}")
    Fq = field_of_order(q)
    F = quadratic_extension(Fq) if kind in ("GU", "SU") else Fq
    if kind in ("SO+", "SO-", "CSO+", "CSO-", "SO") and q % 2 == 0:
        raise OracleError("special orthogonal groups are only enumerated for q odd")
    V = VectorSpace(F, n)
    form = make_form(kind, F, n, q)
    conformal = kind in ("CSp", "CSO+", "CSO-", "CO+", "CO-")
    lams = list(range(1, q)) if conformal else [1]
    if Fq.order != q:
        raise AssertionError
    elements: list[Matrix] = []
    mults: list[int] = []
    dets: list[int] = []
    special = kind in ("SL", "SU", "SO+", "SO-", "CSO+", "CSO-", "SO")
    m_half = n // 2
    for lam in lams:
        gen = _enumerate_gl(V) if form.kind == "none" else _enumerate_similitudes(V, form, lam)
        for g in gen:
            d = det(F, V.rows(g))
            if special:
                want_det = F.pow(lam, m_half) if kind.startswith("CSO") else 1
                if d != want_det:
                    continue
            elements.append(g)
            mults.append(lam)
            dets.append(d)
            if len(elements) > bound:
                raise OracleError("enumeration exceeded the bound")
    if len(elements) != want:
        raise OracleError(f"enumerated {len(elements)} elements of {kind}_{n}({q}), expected {want}")
    G = MatrixGroup(kind, n, q, F, V, form, elements, mults, dets)
    G.index = {g: i for i, g in enumerate(elements)}
    return G


@lru_cache(maxsize=None)
def cached_group(kind: str, n: int, q: int) -> MatrixGroup:
    return build_matrix_group(kind, n, q)


def check_closure(G: MatrixGroup, samples: int = 200) -> bool:
    """Products of listed elements stay in the list (on a deterministic sample)."""
    els = G.elements
    step = max(1, len(els) // samples)
    picks = els[::step][:samples]
    for a in picks[:20]:
        for b in picks:
            if G.mul(a, b) not in G.index:
                return False
    return True


# ---------------------------------------------------------------------------
# centralizers and negation


def brute_centralizer(G: MatrixGroup, s: Matrix) -> list[Matrix]:
    if s not in G.index:
        raise OracleError("element is not in the group")
    mul = G.V.mul
    return [g for g in G.elements if mul(g, s) == mul(s, g)]


@dataclass(frozen=True)
class NegationWitnesses:
    """Witnesses ``h`` with ``h s h^-1 = -s`` in a conformal group.

    ``found`` says whether any witness lies in the special subgroup;
    ``placements`` lists the placements (``0`` inside, ``1`` outside the
    special subgroup) of multiplier-1 witnesses.
    """

    found: bool
    placements: frozenset[int]
    witness: Matrix | None
    witness_multiplier: int | None


def brute_negation_conjugacy(G: MatrixGroup, s: Matrix, special_kind: str | None = None) -> NegationWitnesses:
    """Exhaustive search for conjugators of ``s`` to ``-s`` in ``G``.

    ``G`` may be a full conformal group ``CO``; elements with
    ``det = multiplier^(n/2)`` form the special subgroup.
    """
    F = G.F
    if F.p == 2:
        raise OracleError("s and -s coincide in characteristic 2")
    V = G.V
    ms = V.neg(s)
    half = G.n // 2
    found = False
    placements: set[int] = set()
    witness = None
    wm = None
    for g, lam, d in zip(G.elements, G.multipliers, G.dets):
        if V.mul(g, s) != V.mul(ms, g):
            continue
        inside = d == F.pow(lam, half)
        if inside and not found:
            found = True
            witness, wm = g, lam
        if lam == 1:
            placements.add(0 if inside else 1)
    return NegationWitnesses(found, frozenset(placements), witness, wm)


# ---------------------------------------------------------------------------
# from matrices to class data


FAMILY_OF_KIND = {
    "GL": "GL", "SL": "GL", "GU": "GU", "SU": "GU",
    "Sp": "CSp", "CSp": "CSp",
    "SO+": "CSO+", "O+": "CSO+", "CSO+": "CSO+", "CO+": "CSO+",
    "SO-": "CSO-", "O-": "CSO-", "CSO-": "CSO-", "CO-": "CSO-",
    "SO": "SO", "O": "SO",
}


def eigen_decomposition(G: MatrixGroup, s: Matrix) -> list[tuple[Poly, int, list[list[int]]]]:
    """``(mu, k_mu, basis of ker mu(s))`` for each irreducible factor of the
    minimal polynomial of the semisimple element ``s``."""
    F = G.F
    rows = G.V.rows(s)
    mp = minimal_polynomial(F, rows)
    out = []
    total = 0
    for mu, e in factor_raw(F, mp):
        if e != 1:
            raise OracleError("element is not semisimple")
        ker = nullspace(F, mat_poly(F, rows, mu))
        d = len(mu) - 1
        if len(ker) % d:
            raise OracleError("kernel dimension is not a multiple of the degree")
        out.append((mu, len(ker) // d, ker))
        total += len(ker)
    if total != G.n:
        raise OracleError("eigenspaces do not span")
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def quadratic_type(F: Field, Q: Callable[[Sequence[int]], int], basis: Sequence[Sequence[int]]) -> str | None:
    """Type of ``Q`` restricted to the span of ``basis`` by counting zeros.

    A nondegenerate space of dimension ``2r`` has
    ``q^(2r-1) + eps (q^r - q^(r-1))`` zeros of ``Q``.  Returns None in odd
    dimension.
    """
    dim = len(basis)
    if dim % 2:
        return None
    q = F.order
    n = len(basis[0]) if basis else 0
    zeros = 0
    for idx in range(q**dim):
        cs = [(idx // q**i) % q for i in range(dim)]
        v = [0] * n
        for c, b in zip(cs, basis):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        if Q(v) == 0:
            zeros += 1
    r = dim // 2
    base = q ** (2 * r - 1)
    diff = q**r - q ** (r - 1) if r else 0
    if r == 0:
        return "+"
    if zeros == base + diff:
        return "+"
    if zeros == base - diff:
        return "-"
    raise OracleError("restricted quadratic form is degenerate")


def element_class_data(G: MatrixGroup, s: Matrix) -> SemisimpleClassData:
    """Class data of a semisimple matrix, with block signs measured directly."""
    family = FAMILY_OF_KIND[G.kind]
    F = G.F
    lam = G.multiplier(s)
    decomp = eigen_decomposition(G, s)
    signs: dict[Poly, str | None] = {}
    if G.form.kind == "quadratic":
        assert G.form.quad is not None
        by_poly = {mu: ker for mu, _, ker in decomp}
        for mu, _, ker in decomp:
            partner = star_alpha_raw(F, mu, lam)
            if partner != mu:
                if partner not in by_poly:
                    raise OracleError("eigenspace has no dual partner")
                # forced plus type; measured on the pair, recorded on both
                signs[mu] = quadratic_type(F, G.form.quad, ker + by_poly[partner])
            elif family == "SO" and mu == (F.neg(1), 1):
                signs[mu] = None
            else:
                signs[mu] = quadratic_type(F, G.form.quad, ker)
    factors = [ClassFactor(mu, k, signs.get(mu)) for mu, k, _ in decomp]
    return SemisimpleClassData(family, G.q, _sorted_factors(factors), lam)


def class_key(data: SemisimpleClassData) -> str:
    fs = [[list(f.poly), f.mult, f.block_sign] for f in data.factors]
    return json.dumps([data.family, data.q, data.alpha, fs])


def semisimple_elements(G: MatrixGroup) -> list[Matrix]:
    return [g for g in G.elements if G.is_semisimple(g)]


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class ClassRecord:
    data: SemisimpleClassData
    count: int  # number of group elements with this data
    representative: Matrix
    centralizer_order: int


def semisimple_classes(G: MatrixGroup) -> list[ClassRecord]:
    """Group the semisimple elements of ``G`` by class data and measure one
    centralizer per group."""
    groups: dict[str, list] = {}
    for g in G.elements:
        if not G.is_semisimple(g):
            continue
        data = element_class_data(G, g)
        key = class_key(data)
        rec = groups.get(key)
        if rec is None:
            groups[key] = [data, 1, g]
        else:
            rec[1] += 1
    out = []
    for key in sorted(groups):
        data, count, rep = groups[key]
        out.append(ClassRecord(data, count, rep, len(brute_centralizer(G, rep))))
    return out


def default_cache_dir() -> Path:
    env = os.environ.get("HCPRIM_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "hcprim"


def cached_report(name: str, build: Callable[[], dict], cache_dir: Path | None = None, refresh: bool = False) -> dict:
    """JSON report cached on disk under ``name``."""
    d = cache_dir if cache_dir is not None else default_cache_dir()
    path = d / f"{name}.json"
    if not refresh and path.exists():
        try:
            return json.loads(path.read_text())
        except (OSError, ValueError):
            pass
    rep = build()
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(rep, sort_keys=True))
        tmp.replace(path)
    except OSError:
        pass
    return rep


__all__ = [
    "ClassDataError",
    "MatrixGroup",
    "NegationWitnesses",
    "brute_centralizer",
    "brute_negation_conjugacy",
    "build_matrix_group",
    "element_class_data",
    "semisimple_classes",
]
