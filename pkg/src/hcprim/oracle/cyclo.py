"""Exact arithmetic in cyclotomic integer rings ``Z[zeta_e]``."""
from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` (lowest degree first)."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(f: list[int], g: list[int]) -> list[int]:
    f = f[:]
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            q[i - dg] = c  # g is monic
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    assert not any(f[:dg]), "non-exact division"
    return q


class Cyclo:
    """An element of ``Z[zeta_e]`` in the power basis of degree ``phi(e)``."""

    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs: list[int] | tuple[int, ...]):
        self.e = e
        self.c = _reduce(e, list(coeffs))

    @classmethod
    def from_int(cls, e: int, n: int) -> Cyclo:
        return cls(e, [n])

    @classmethod
    def root(cls, e: int, j: int) -> Cyclo:
        c = [0] * e
        c[j % e] = 1
        return cls(e, c)

    def __add__(self, o: Cyclo | int) -> Cyclo:
        o = self._co(o)
        n = max(len(self.c), len(o.c))
        return Cyclo(self.e, [(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo(self.e, [-x for x in self.c])

    def __sub__(self, o: Cyclo | int) -> Cyclo:
        return self + (-self._co(o))

    def __mul__(self, o: Cyclo | int) -> Cyclo:
        o = self._co(o)
        out = [0] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Cyclo(self.e, out)

    __rmul__ = __mul__

    def conj(self) -> Cyclo:
        out = [0] * self.e
        for i, a in enumerate(self.c):
            out[(-i) % self.e] += a
        return Cyclo(self.e, out)

    def _co(self, o: Cyclo | int) -> Cyclo:
        if isinstance(o, int):
            return Cyclo(self.e, [o])
        if o.e != self.e:
            raise ValueError("mixed cyclotomic orders")
        return o

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def as_int(self) -> int:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.c[0] if self.c else 0

    def __eq__(self, o: object) -> bool:
        if isinstance(o, int):
            return self.c == _reduce(self.e, [o])
        return isinstance(o, Cyclo) and o.e == self.e and o.c == self.c

    def __hash__(self) -> int:
        return hash((self.e, tuple(self.c)))

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.as_int())
        return f"Cyclo({self.e}, {self.c})"


def _reduce(e: int, f: list[int]) -> list[int]:
    # reduce mod x^e - 1 then mod Phi_e
    g = [0] * min(len(f), e) if f else []
    for i, a in enumerate(f):
        if a:
            if len(g) < e:
                g += [0] * (e - len(g))
            g[i % e] += a
    phi = cyclotomic_poly(e)
    dp = len(phi) - 1
    for i in range(len(g) - 1, dp - 1, -1):
        c = g[i]
        if c:
            for j in range(dp + 1):
                g[i - dp + j] -= c * phi[j]
    g = g[:dp] if len(g) > dp else g
    while g and g[-1] == 0:
        g.pop()
    return g


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
