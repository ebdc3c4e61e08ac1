"""Permutation groups by closure and character tables by the Burnside-Dixon method.

Eigenvalues are computed modulo a prime ``p`` with ``p = 1 mod exponent`` and
``p > 2 sqrt(|G|)``; values are then lifted exactly to ``Z[zeta_e]`` from the
multiplicities of the eigenvalues of each element.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Callable, Sequence

from hcprim.gf import is_prime, prime_field, roots_raw
from hcprim.oracle.cyclo import Cyclo

Perm = tuple  # tuple[int, ...]

MAX_DIXON_ORDER = 25000


class OracleError(ValueError):
    pass


def pmul(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b`` (right action)."""
    return tuple(b[x] for x in a)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def porder(a: Perm) -> int:
    seen = [False] * len(a)
    o = 1
    for i in range(len(a)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                L += 1
            o = o * L // gcd(o, L)
    return o


def closure(gens: Sequence[Perm], degree: int, bound: int = MAX_DIXON_ORDER) -> list[Perm]:
    ident = tuple(range(degree))
    seen = {ident}
    out = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = pmul(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
                queue.append(h)
                if len(out) > bound:
                    raise OracleError(f"group order exceeds {bound}")
    return out


@dataclass
class PermGroup:
    gens: list[Perm]
    degree: int
    elements: list[Perm] = field(default_factory=list)
    bound: int = MAX_DIXON_ORDER

    def __post_init__(self) -> None:
        if not self.elements:
            self.elements = closure(self.gens, self.degree, self.bound)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._classes: list[list[int]] | None = None
        self._class_of: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def classes(self) -> list[list[int]]:
        """Conjugacy classes as lists of element indices; identity class first."""
        if self._classes is None:
            class_of = [-1] * self.order
            classes: list[list[int]] = []
            for i, g in enumerate(self.elements):
                if class_of[i] >= 0:
                    continue
                cid = len(classes)
                orbit = [i]
                class_of[i] = cid
                queue = deque([g])
                while queue:
                    x = queue.popleft()
                    for s in self.gens:
                        y = pmul(pmul(pinv(s), x), s)
                        j = self._index[y]
                        if class_of[j] < 0:
                            class_of[j] = cid
                            orbit.append(j)
                            queue.append(y)
                classes.append(sorted(orbit))
            self._classes, self._class_of = classes, class_of
        return self._classes

    def class_of(self, g: Perm) -> int:
        self.classes()
        return self._class_of[self._index[g]]  # type: ignore[index]

    def exponent(self) -> int:
        e = 1
        for c in self.classes():
            o = porder(self.elements[c[0]])
            e = e * o // gcd(e, o)
        return e


# ---------------------------------------------------------------------------
# linear algebra mod p


def _nullspace(M: list[list[int]], p: int) -> list[list[int]]:
    """Basis (as row vectors) of ``{v : M v = 0}``."""
    rows = [r[:] for r in M]
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def _charpoly(A: list[list[int]], p: int) -> tuple[int, ...]:
    """Characteristic polynomial mod p by the Faddeev-LeVerrier-free Hessenberg route."""
    n = len(A)
    # Berkowitz-style via repeated determinant is overkill; use interpolation
    # det(xI - A) at n+1 points, then Lagrange.
    xs = list(range(n + 1))
    ys = [_det([[((x if i == j else 0) - A[i][j]) % p for j in range(n)] for i in range(n)], p) for x in xs]
    coeffs = [0] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = [((num[k - 1] if k else 0) - xj * (num[k] if k < len(num) else 0)) % p for k in range(len(num) + 1)]
                den = den * (xi - xj) % p
        f = yi * pow(den, p - 2, p) % p
        for k in range(len(num)):
            coeffs[k] = (coeffs[k] + f * num[k]) % p
    return tuple(coeffs)


def _det(M: list[list[int]], p: int) -> int:
    M = [r[:] for r in M]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], p - 2, p)
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv % p
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[c])]
    return det % p


def choose_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while not (is_prime(p) and p > 2 * isqrt(order) + 2):
        p += exponent
    return p


# ---------------------------------------------------------------------------
# the table


@dataclass
class CharacterTable:
    group: PermGroup
    class_sizes: list[int]
    class_reps: list[Perm]
    orders: list[int]
    exponent: int
    values: list[list[Cyclo]]  # values[chi][class]
    labels: list[object] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [row[0].as_int() for row in self.values]

    def is_rational(self) -> bool:
        return all(v.is_rational() for row in self.values for v in row)

    def int_values(self) -> list[list[int]]:
        return [[v.as_int() for v in row] for row in self.values]

    def inner(self, f: Sequence[Cyclo | int], g: Sequence[Cyclo | int]) -> Cyclo:
        """``|G| * <f, g>`` exactly."""
        e = self.exponent
        tot = Cyclo(e, [0])
        for s, a, b in zip(self.class_sizes, f, g):
            a = a if isinstance(a, Cyclo) else Cyclo(e, [a])
            b = b if isinstance(b, Cyclo) else Cyclo(e, [b])
            tot = tot + a * b.conj() * s
        return tot

    def decompose(self, f: Sequence[Cyclo | int]) -> list[int]:
        out = []
        G = self.group.order
        for row in self.values:
            ip = self.inner(f, row).as_int()
            if ip % G:
                raise OracleError("class function is not a virtual character")
            out.append(ip // G)
        return out

    def orthogonality_ok(self) -> bool:
        G = self.group.order
        n = len(self.values)
        for i in range(n):
            for j in range(n):
                if self.inner(self.values[i], self.values[j]) != (G if i == j else 0):
                    return False
        # column orthogonality
        e = self.exponent
        for a in range(n):
            for b in range(n):
                s = Cyclo(e, [0])
                for row in self.values:
                    s = s + row[a] * row[b].conj()
                want = G // self.class_sizes[a] if a == b else 0
                if s != want:
                    return False
        return sum(d * d for d in self.degrees) == G


def dixon_character_table(G: PermGroup) -> CharacterTable:
    if G.order > MAX_DIXON_ORDER:
        raise OracleError(f"|G| = {G.order} exceeds {MAX_DIXON_ORDER}")
    classes = G.classes()
    r = len(classes)
    sizes = [len(c) for c in classes]
    reps = [G.elements[c[0]] for c in classes]
    class_of = G._class_of
    inv_class = [G.class_of(pinv(g)) for g in reps]
    e = G.exponent()
    p = choose_prime(G.order, e)
    # c[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
    coeff = [[[0] * r for _ in range(r)] for _ in range(r)]
    index = G._index
    for k, z in enumerate(reps):
        for xi, x in enumerate(G.elements):
            y = pmul(pinv(x), z)
            coeff[class_of[xi]][class_of[index[y]]][k] += 1
    # common eigenvectors of M_i, (M_i)_{jk} = c_{ijk}
    spaces = [[[1 if a == b else 0 for b in range(r)] for a in range(r)]]  # row-vector bases
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        M = [[coeff[i][j][k] % p for k in range(r)] for j in range(r)]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            new_spaces.extend(_split(M, basis, p))
        spaces = new_spaces
    if not all(len(s) == 1 for s in spaces) or len(spaces) != r:
        raise OracleError("class matrices failed to split the character space")
    Fp = prime_field(p)
    zeta_p = pow(Fp.generator(), (p - 1) // e, p)
    values: list[list[Cyclo]] = []
    for (v,) in spaces:
        inv0 = pow(v[0], p - 2, p)
        w = [x * inv0 % p for x in v]  # omega with omega(1) = 1
        s = sum(w[i] * w[inv_class[i]] * pow(sizes[i], p - 2, p) for i in range(r)) % p
        deg2 = G.order * pow(s, p - 2, p) % p
        deg = next(d for d in range(1, isqrt(G.order) + 1) if d * d % p == deg2)
        modvals = [w[i] * deg * pow(sizes[i], p - 2, p) % p for i in range(r)]
        values.append(_lift_row(G, reps, modvals, deg, e, p, zeta_p))
    values.sort(key=lambda row: (row[0].as_int(), [repr(v) for v in row]))
    orders = [porder(g) for g in reps]
    return CharacterTable(G, sizes, reps, orders, e, values)


def _split(M: list[list[int]], basis: list[list[int]], p: int) -> list[list[list[int]]]:
    """Split span(basis) (row vectors, right eigenvectors of M) into eigenspaces."""
    d = len(basis)
    # coordinates: M v_a = sum_b A[b][a] v_b; solve via pivot columns of basis
    Bt = [list(col) for col in zip(*basis)]  # r x d
    images = [[sum(M[j][k] * v[k] for k in range(len(v))) % p for j in range(len(v))] for v in basis]
    A = [[0] * d for _ in range(d)]
    # solve Bt * a = image for each image
    aug_rows = [Bt[j] + [img[j] for img in images] for j in range(len(Bt))]
    red = _rref(aug_rows, p, d)
    for a in range(d):
        for b in range(d):
            A[b][a] = red[b][d + a]
    cp = _charpoly(A, p)
    Fp = prime_field(p)
    roots = roots_raw(Fp, cp)
    out = []
    for lam in roots:
        N = _nullspace([[(A[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)], p)
        sub = [[sum(c[b] * basis[b][k] for b in range(d)) % p for k in range(len(basis[0]))] for c in N]
        out.append(sub)
    if sum(len(s) for s in out) != d:
        raise OracleError("eigenvalues not in F_p")
    return out


def _rref(rows: list[list[int]], p: int, ncoef: int) -> list[list[int]]:
    rows = [r[:] for r in rows]
    r = 0
    for c in range(ncoef):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            raise OracleError("degenerate basis")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows[:ncoef]


def _lift_row(G: PermGroup, reps: list[Perm], modvals: list[int], deg: int, e: int, p: int, zeta: int) -> list[Cyclo]:
    """Recover exact values from eigenvalue multiplicities of each element."""
    out = []
    for g in reps:
        o = porder(g)
        # chi(g^l) mod p for l = 0..o-1
        powers = []
        h = tuple(range(len(g)))
        for _ in range(o):
            powers.append(modvals[G.class_of(h)])
            h = pmul(h, g)
        z = pow(zeta, e // o, p)  # primitive o-th root mod p
        inv_o = pow(o, p - 2, p)
        coeffs = [0] * e
        for j in range(o):
            m = sum(powers[l] * pow(z, (-j * l) % o, p) for l in range(o)) * inv_o % p
            if m > deg:
                raise OracleError("eigenvalue multiplicity out of range")
            coeffs[j * (e // o)] += m
        out.append(Cyclo(e, coeffs))
    return out


def brute_induce(
    table_G: CharacterTable, H: PermGroup, rho: Callable[[Perm], Cyclo | int] | Sequence
) -> list[int]:
    """Decompose ``Ind_H^G(rho)``; ``rho`` is a function on elements or a value
    list on the classes of ``H`` (in ``H.classes()`` order)."""
    G = table_G.group
    e = table_G.exponent
    acc: list[Cyclo] = [Cyclo(e, [0]) for _ in table_G.class_sizes]
    for cls in H.classes():
        h = H.elements[cls[0]]
        if h not in G:
            raise OracleError("H is not a subgroup of G")
        val = rho(h) if callable(rho) else rho[H.classes().index(cls)]
        val = val if isinstance(val, Cyclo) else Cyclo(e, [int(val)])
        k = G.class_of(h)
        acc[k] = acc[k] + val * len(cls)
    # Ind(g_k) = |G| / (|H| |C_k|) * sum_{h in H cap C_k} rho(h)
    vals = []
    for k, s in enumerate(table_G.class_sizes):
        num = acc[k] * G.order
        den = H.order * s
        if any(c % den for c in num.c):
            raise OracleError("induced value not integral")
        vals.append(Cyclo(e, [c // den for c in num.c]))
    return table_G.decompose(vals)
