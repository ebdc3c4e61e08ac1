"""Exact arithmetic in finite fields and polynomial rings over them.

Field elements are plain integers.  An element of a degree ``r`` extension of
a base field ``B`` of order ``b`` is the integer ``c_0 + c_1 b + ... +
c_{r-1} b^{r-1}`` where ``c_i`` are elements of ``B`` and the element itself
is ``c_0 + c_1 t + ... + c_{r-1} t^{r-1}`` modulo the defining polynomial of
``t``.  Because the base field uses the same convention recursively, every
element is ultimately a vector of base-``p`` digits.

Polynomials are tuples of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_FIELD_ORDER = 1 << 20

Poly = tuple  # tuple[int, ...], lowest degree first


class FieldError(ValueError):
    """Raised for invalid field constructions or operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """A finite field, either prime or a simple extension of another field.

    Instances are the ``FieldDescriptor`` objects of the public API.  They are
    immutable apart from lazily built lookup tables.
    """

    def __init__(self, p: int, base: Field | None = None, modulus: Poly | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.modulus: Poly = (0, 1)
            self.degree = 1  # degree over the immediate base
            self.order = p
            self.k = 1
        else:
            if modulus is None or modulus[-1] != 1 or len(modulus) < 2:
                raise FieldError("modulus must be monic of degree >= 1")
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
            self.k = base.k * self.degree
        if self.order > MAX_FIELD_ORDER:
            raise FieldError(f"field order {self.order} exceeds bound {MAX_FIELD_ORDER}")
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None

    # ----- identity -------------------------------------------------------
    def _key(self) -> tuple:
        return (self.p, self.base._key() if self.base else None, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}; over {self.base!r} mod {list(self.modulus)})"

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.order)

    def contains(self, sub: Field) -> bool:
        """True if ``sub`` is this field or one of its tower bases."""
        f: Field | None = self
        while f is not None:
            if f == sub:
                return True
            f = f.base
        return False

    # ----- tables ---------------------------------------------------------
    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B, r, bq = self.base, self.degree, self.base.order
        ca = [(a // bq**i) % bq for i in range(r)]
        cb = [(b // bq**i) % bq for i in range(r)]
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        for i in range(2 * r - 2, r - 1, -1):
            c = prod[i]
            if c:
                for j in range(r):
                    if self.modulus[j]:
                        prod[i - r + j] = B.sub(prod[i - r + j], B.mul(c, self.modulus[j]))
        return sum(prod[i] * bq**i for i in range(r))

    def _build_tables(self) -> None:
        n = self.order - 1
        if self.base is None and self.p == 2:
            self._exp, self._log, self._zech = [1], [0, 0], [-1]
            return
        primes = prime_factors(n)
        gen = None
        for g in range(1, self.order):
            if g == 1 and n > 1:
                continue
            if all(self._slow_pow(g, n // r) != 1 for r in primes):
                gen = g
                break
        assert gen is not None
        exp = [0] * n
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        zech = [0] * n
        for i in range(n):
            y = self._add_one(exp[i])
            zech[i] = -1 if y == 0 else log[y]
        self._exp, self._log, self._zech = exp, log, zech

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _add_one(self, a: int) -> int:
        if self.base is None:
            return (a + 1) % self.p
        bq = self.base.order
        c0 = a % bq
        return a - c0 + self.base._add_one(c0)

    def _tables(self) -> tuple[list[int], list[int], list[int]]:
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log, self._zech  # type: ignore[return-value]

    # ----- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        if self.p == 2:
            return a ^ b
        exp, log, zech = self._tables()
        n = self.order - 1
        la = log[a]
        z = zech[(log[b] - la) % n]
        if z < 0:
            return 0
        return exp[(la + z) % n]

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if a == 0 or self.p == 2:
            return a
        exp, log, _ = self._tables()
        n = self.order - 1
        return exp[(log[a] + n // 2) % n]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.base is None:
            return a * b % self.p
        exp, log, _ = self._tables()
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        exp, log, _ = self._tables()
        return exp[(-log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        if self.base is None:
            return pow(a, e % (self.p - 1), self.p)
        exp, log, _ = self._tables()
        n = self.order - 1
        return exp[(log[a] * e) % n]

    def log(self, a: int) -> int:
        """Discrete logarithm with respect to the table generator."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self.base is None:
            if self._log is None:
                self._build_prime_log()
            return self._log[a]  # type: ignore[index]
        return self._tables()[1][a]

    def _build_prime_log(self) -> None:
        n = self.p - 1
        primes = prime_factors(n)
        gen = next(g for g in range(1, self.p) if n == 1 or (g != 1 and all(pow(g, n // r, self.p) != 1 for r in primes)))
        log = [0] * self.p
        exp = [0] * n
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = x * gen % self.p
        self._log, self._exp = log, exp

    def generator(self) -> int:
        """A primitive element."""
        if self.base is None:
            if self._log is None:
                self._build_prime_log()
            return self._exp[1] if self.order > 2 else 1  # type: ignore[index]
        exp = self._tables()[0]
        return exp[1] if len(exp) > 1 else 1

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.order - 1
        o = n
        for r in prime_factors(n):
            while o % r == 0 and self.pow(a, o // r) == 1:
                o //= r
        return o

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Some square root of ``a`` in this field, or ``None``."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.order // 2)
        if not self.is_square(a):
            return None
        lg = self.log(a)
        exp = self._exp if self.base is not None else self._exp
        return exp[lg // 2]  # type: ignore[index]

    def frobenius(self, a: int, power: int = 1) -> int:
        """``a`` raised to ``p**power``."""
        return self.pow(a, self.p ** power)

    def embed(self, sub: Field, a: int) -> int:
        """Image of an element of a tower base ``sub``; values coincide."""
        if not self.contains(sub):
            raise FieldError(f"{sub!r} is not a subfield in the tower of {self!r}")
        return a

    def digits(self, a: int) -> tuple[int, ...]:
        """Coordinates over the immediate base field."""
        if self.base is None:
            return (a,)
        bq = self.base.order
        return tuple((a // bq**i) % bq for i in range(self.degree))

    def from_digits(self, cs: Sequence[int]) -> int:
        if self.base is None:
            return cs[0] % self.p
        bq = self.base.order
        return sum(c * bq**i for i, c in enumerate(cs))

    def element(self, value: int | Sequence[int]) -> FieldElement:
        if not isinstance(value, int):
            value = self.from_digits(value)
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element of {self!r}")
        return FieldElement(self, value)


@dataclass(frozen=True)
class FieldElement:
    """An element together with its field; thin wrapper over the int encoding."""

    field: Field = dc_field(compare=True)
    value: int = 0

    def __add__(self, o: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.add(self.value, _val(o)))

    def __sub__(self, o: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.sub(self.value, _val(o)))

    def __mul__(self, o: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.mul(self.value, _val(o)))

    def __truediv__(self, o: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.field.div(self.value, _val(o)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> FieldElement:
        return element_pow(self, e)

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


def _val(x: FieldElement | int) -> int:
    return x.value if isinstance(x, FieldElement) else x


def element_pow(x: FieldElement, e: int) -> FieldElement:
    """``x**e`` by square-and-multiply; negative ``e`` needs ``x != 0``."""
    F = x.field
    a = x.value
    if e < 0:
        if a == 0:
            raise ZeroDivisionError("zero to a negative power")
        a, e = F.inv(a), -e
    r = 1
    while e:
        if e & 1:
            r = F.mul(r, a)
        a = F.mul(a, a)
        e >>= 1
    return FieldElement(F, r)


# ---------------------------------------------------------------------------
# field construction


@lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return Field(p)


@lru_cache(maxsize=None)
def extension(base: Field, r: int) -> Field:
    """Degree ``r`` extension of ``base`` by the smallest monic irreducible.

    Candidates ``(c_0, ..., c_{r-1})`` are compared lexicographically with
    ``c_0`` most significant.
    """
    if r < 1:
        raise FieldError("extension degree must be >= 1")
    if base.order ** r > MAX_FIELD_ORDER:
        raise FieldError(f"field order {base.order ** r} exceeds bound {MAX_FIELD_ORDER}")
    if r == 1:
        return base
    b = base.order
    for idx in range(b ** r):
        cs = [(idx // b ** (r - 1 - i)) % b for i in range(r)]
        if cs[0] == 0:
            continue
        f = tuple(cs) + (1,)
        if poly_is_irreducible_raw(base, f):
            return Field(base.p, base, f)
    raise AssertionError("no irreducible polynomial found")


def make_field(p: int, k: int) -> Field:
    """``F_{p^k}`` as a simple extension of the prime field."""
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    return extension(prime_field(p), k)


def quadratic_extension(F: Field) -> Field:
    """The tower step ``F_{q^2}`` over ``F_q``."""
    return extension(F, 2)


def field_of_order(q: int) -> Field:
    """``F_q`` for a prime power ``q``."""
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return make_field(p, k)


# ---------------------------------------------------------------------------
# raw polynomial arithmetic on tuples


def p_trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def p_deg(f: Poly) -> int:
    return len(f) - 1


def p_add(F: Field, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return p_trim(F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n))


def p_neg(F: Field, f: Poly) -> Poly:
    return tuple(F.neg(c) for c in f)


def p_sub(F: Field, f: Poly, g: Poly) -> Poly:
    return p_add(F, f, p_neg(F, g))


def p_scale(F: Field, f: Poly, c: int) -> Poly:
    return p_trim(F.mul(x, c) for x in f)


def p_mul(F: Field, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return p_trim(out)


def p_divmod(F: Field, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    if len(r) - 1 < dg:
        return (), p_trim(r)
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, inv)
        q[i - dg] = c
        for j in range(dg + 1):
            if g[j]:
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return p_trim(q), p_trim(r[:dg])


def p_mod(F: Field, f: Poly, g: Poly) -> Poly:
    return p_divmod(F, f, g)[1]


def p_monic(F: Field, f: Poly) -> Poly:
    if not f:
        return f
    return p_scale(F, f, F.inv(f[-1]))


def p_gcd(F: Field, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, p_mod(F, f, g)
    return p_monic(F, f)


def p_deriv(F: Field, f: Poly) -> Poly:
    return p_trim(F.mul(f[i], i % F.p) if i % F.p else 0 for i in range(1, len(f)))


def p_powmod(F: Field, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = p_mod(F, f, m)
    while e:
        if e & 1:
            result = p_mod(F, p_mul(F, result, base), m)
        base = p_mod(F, p_mul(F, base, base), m)
        e >>= 1
    return result


def p_eval(F: Field, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def p_from_roots(F: Field, roots: Iterable[int]) -> Poly:
    f: Poly = (1,)
    for r in roots:
        f = p_mul(F, f, (F.neg(r), 1))
    return f


def p_pow(F: Field, f: Poly, e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = p_mul(F, out, f)
    return out


# ---------------------------------------------------------------------------
# irreducibility and factorization


def poly_is_irreducible_raw(F: Field, f: Poly) -> bool:
    """Rabin's test over ``F`` for a polynomial of degree >= 1."""
    n = p_deg(f)
    if n < 1:
        raise FieldError("constant polynomial")
    if n == 1:
        return True
    f = p_monic(F, f)
    if f[0] == 0:
        return False
    q = F.order
    x: Poly = (0, 1)
    if p_powmod(F, x, q**n, f) != x:
        return False
    for r in prime_factors(n):
        h = p_sub(F, p_powmod(F, x, q ** (n // r), f), x)
        if p_deg(p_gcd(F, f, h)) > 0:
            return False
    return True


def _pth_root(F: Field, f: Poly) -> Poly:
    """``g`` with ``g(X)^p = f(X)`` when ``f`` is a polynomial in ``X^p``."""
    p = F.p
    e = F.order // p  # x -> x^{q/p} inverts the p-power map
    return tuple(F.pow(f[i], e) for i in range(0, len(f), p))


def squarefree_factorization(F: Field, f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition valid in positive characteristic."""
    f = p_monic(F, f)
    out: dict[Poly, int] = {}

    def rec(g: Poly, mult: int) -> None:
        if p_deg(g) < 1:
            return
        d = p_deriv(F, g)
        if not d:
            rec(_pth_root(F, g), mult * F.p)
            return
        c = p_gcd(F, g, d)
        w = p_divmod(F, g, c)[0]
        i = 1
        while p_deg(w) > 0:
            y = p_gcd(F, w, c)
            z = p_divmod(F, w, y)[0]
            if p_deg(z) > 0:
                out[z] = out.get(z, 0) + i * mult
            i += 1
            w = y
            c = p_divmod(F, c, y)[0]
        if p_deg(c) > 0:
            rec(_pth_root(F, c), mult * F.p)

    rec(f, 1)
    return sorted(out.items(), key=lambda t: (p_deg(t[0]), t[0]))


def distinct_degree_factorization(F: Field, f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic ``f``: pairs (product of all degree-d factors, d)."""
    out = []
    q = F.order
    x: Poly = (0, 1)
    h = x
    d = 0
    while p_deg(f) >= 2 * (d + 1):
        d += 1
        h = p_powmod(F, h, q, f)
        g = p_gcd(F, f, p_sub(F, h, x))
        if p_deg(g) > 0:
            out.append((g, d))
            f = p_divmod(F, f, g)[0]
            h = p_mod(F, h, f)
    if p_deg(f) > 0:
        out.append((f, p_deg(f)))
    return out


def equal_degree_factorization(F: Field, f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-``d`` factors."""
    n = p_deg(f)
    if n == d:
        return [f]
    q = F.order
    while True:
        a = p_trim(rng.randrange(q) for _ in range(n))
        if p_deg(a) < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + a^4 + ... over F_{q^d} viewed over F_2
            t = a
            acc = a
            for _ in range(F.k * d - 1):
                t = p_mod(F, p_mul(F, t, t), f)
                acc = p_add(F, acc, t)
            b = acc
        else:
            b = p_sub(F, p_powmod(F, a, (q**d - 1) // 2, f), (1,))
        g = p_gcd(F, f, b)
        if 0 < p_deg(g) < n:
            return equal_degree_factorization(F, g, d, rng) + equal_degree_factorization(
                F, p_divmod(F, f, g)[0], d, rng
            )


def factor_raw(F: Field, f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs)."""
    if not f:
        raise FieldError("cannot factor the zero polynomial")
    if p_deg(f) < 1:
        return []
    rng = random.Random(seed)
    out: dict[Poly, int] = {}
    for g, m in squarefree_factorization(F, f):
        for h, d in distinct_degree_factorization(F, g):
            for irr in equal_degree_factorization(F, h, d, rng):
                out[irr] = out.get(irr, 0) + m
    return sorted(out.items(), key=lambda t: (p_deg(t[0]), t[0]))


def roots_raw(F: Field, f: Poly) -> list[int]:
    """Distinct roots of ``f`` in ``F`` (coefficients already in ``F``)."""
    return sorted(F.neg(g[0]) for g, _ in factor_raw(F, f) if p_deg(g) == 1)


def monic_polys(F: Field, d: int) -> Iterator[Poly]:
    q = F.order
    for idx in range(q**d):
        yield tuple((idx // q**i) % q for i in range(d)) + (1,)


def irreducible_polys(F: Field, d: int) -> Iterator[Poly]:
    for f in monic_polys(F, d):
        if poly_is_irreducible_raw(F, f):
            yield f


# ---------------------------------------------------------------------------
# public polynomial wrapper


@dataclass(frozen=True)
class Polynomial:
    """A polynomial over a finite field, coefficients lowest degree first."""

    field: Field
    coeffs: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", p_trim(self.coeffs))

    @classmethod
    def x(cls, F: Field) -> Polynomial:
        return cls(F, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, o: Polynomial) -> Polynomial:
        return Polynomial(self.field, p_add(self.field, self.coeffs, o.coeffs))

    def __sub__(self, o: Polynomial) -> Polynomial:
        return Polynomial(self.field, p_sub(self.field, self.coeffs, o.coeffs))

    def __mul__(self, o: Polynomial) -> Polynomial:
        return Polynomial(self.field, p_mul(self.field, self.coeffs, o.coeffs))

    def __divmod__(self, o: Polynomial) -> tuple[Polynomial, Polynomial]:
        q, r = p_divmod(self.field, self.coeffs, o.coeffs)
        return Polynomial(self.field, q), Polynomial(self.field, r)

    def __call__(self, x: int) -> int:
        return p_eval(self.field, self.coeffs, x)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)} over {self.field!r})"


def poly_is_irreducible(mu: Polynomial) -> bool:
    if mu.degree < 1:
        raise FieldError("irreducibility of a constant is undefined")
    return poly_is_irreducible_raw(mu.field, mu.coeffs)


def poly_factor(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Factor a monic polynomial; deterministic (seeded) and sorted."""
    if not f.coeffs:
        raise FieldError("cannot factor the zero polynomial")
    if not f.is_monic:
        raise FieldError("poly_factor expects a monic polynomial")
    return [(Polynomial(f.field, g), m) for g, m in factor_raw(f.field, f.coeffs)]
