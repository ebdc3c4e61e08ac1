"""Labels of unipotent characters: partitions, bipartitions and type D labels.

Conventions
-----------
* A partition is a weakly decreasing tuple of positive ints; ``()`` is empty.
* A bipartition ``(l, r)`` is an ordered pair of partitions.  For the
  hyperoctahedral group, ``((n,), ())`` is the trivial character and
  ``((), (n,))`` is trivial on ``S_n`` and the sign on sign changes.
* A :class:`DLabel` is an unordered pair stored in canonical order plus a
  prime flag that is only ever set on degenerate pairs (``l == r``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

Partition = tuple  # tuple[int, ...]
Bipartition = tuple  # tuple[Partition, Partition]


class LabelError(ValueError):
    """Malformed label or incompatible action."""


# ---------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n == 0:
        return ((),)
    if max_part is None:
        max_part = n
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def bipartitions(n: int) -> tuple[Bipartition, ...]:
    return tuple((a, b) for k in range(n, -1, -1) for a in partitions(k) for b in partitions(n - k))


def is_partition(p: Sequence[int]) -> bool:
    return all(isinstance(x, int) and x > 0 for x in p) and all(
        p[i] >= p[i + 1] for i in range(len(p) - 1)
    )


def make_partition(p: Iterable[int]) -> Partition:
    t = tuple(sorted((int(x) for x in p if int(x) != 0), reverse=True))
    if any(x < 0 for x in t):
        raise LabelError(f"negative part in {t}")
    return t


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def n_value(p: Partition) -> int:
    """``sum (i-1) p_i``: the a-value of the corresponding S_n character."""
    return sum(i * x for i, x in enumerate(p))


def hooks(p: Partition) -> list[int]:
    c = conjugate(p)
    return [p[i] - j + c[j] - i - 1 for i in range(len(p)) for j in range(p[i])]


def dim_sym(p: Partition) -> int:
    """Degree of the S_n character labelled by ``p`` (hook length formula)."""
    from math import factorial, prod

    return factorial(sum(p)) // prod(hooks(p)) if p else 1


def dim_hyperoctahedral(bp: Bipartition) -> int:
    from math import comb

    a, b = bp
    return comb(sum(a) + sum(b), sum(a)) * dim_sym(a) * dim_sym(b)


def to_exponential(p: Partition) -> str:
    """Exponential notation, e.g. ``(2,1,1)`` -> ``"2 1^2"``; empty -> ``"-"``."""
    if not p:
        return "-"
    parts = []
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        parts.append(str(p[i]) if j - i == 1 else f"{p[i]}^{j - i}")
        i = j
    return " ".join(parts)


def from_exponential(s: str) -> Partition:
    s = s.strip()
    if s in ("-", ""):
        return ()
    out: list[int] = []
    for tok in s.split():
        if "^" in tok:
            base, exp = tok.split("^")
            out += [int(base)] * int(exp)
        else:
            out.append(int(tok))
    p = tuple(out)
    if not is_partition(p):
        raise LabelError(f"not a partition: {s!r}")
    return p


def bip_str(bp: Bipartition) -> str:
    return f"({to_exponential(bp[0])}, {to_exponential(bp[1])})"


# ---------------------------------------------------------------------------
# type D labels


@dataclass(frozen=True, order=True)
class DLabel:
    """Unordered pair ``{l, r}`` with a prime flag on degenerate pairs.

    ``prime=False`` is written ``+`` and ``prime=True`` is written ``-``.
    """

    left: Partition
    right: Partition
    prime: bool = False

    def __post_init__(self) -> None:
        l, r = self.left, self.right
        if r < l:
            l, r = r, l
        object.__setattr__(self, "left", tuple(l))
        object.__setattr__(self, "right", tuple(r))
        if self.prime and l != r:
            raise LabelError("prime flag is only meaningful on degenerate labels")

    @property
    def degenerate(self) -> bool:
        return self.left == self.right

    @property
    def rank(self) -> int:
        return sum(self.left) + sum(self.right)

    def toggled(self) -> DLabel:
        if not self.degenerate:
            return self
        return DLabel(self.left, self.right, not self.prime)

    def __str__(self) -> str:
        s = "{" + f"{to_exponential(self.left)}, {to_exponential(self.right)}" + "}"
        if self.degenerate:
            s += "-" if self.prime else "+"
        return s


@lru_cache(maxsize=None)
def d_labels(n: int) -> tuple[DLabel, ...]:
    out = []
    seen = set()
    for a, b in bipartitions(n):
        key = tuple(sorted((a, b)))
        if key in seen:
            continue
        seen.add(key)
        if a == b:
            out.append(DLabel(a, b, False))
            out.append(DLabel(a, b, True))
        else:
            out.append(DLabel(a, b))
    return tuple(sorted(out))


def symbol_of_pair(a: Partition, b: Partition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Equal-length symbol rows ``{a_{m+1-i} + i - 1}`` for a type D pair."""
    m = max(len(a), len(b), 1)
    ra = [0] * (m - len(a)) + list(reversed(a))
    rb = [0] * (m - len(b)) + list(reversed(b))
    return tuple(x + i for i, x in enumerate(ra)), tuple(x + i for i, x in enumerate(rb))


def a_value_d(label: DLabel | Bipartition) -> int:
    """Lusztig's a-function for the Weyl group of type D from the symbol."""
    if isinstance(label, DLabel):
        a, b = label.left, label.right
    else:
        a, b = label
    s, t = symbol_of_pair(a, b)
    m = len(s)
    entries = sorted(s + t)
    total = sum(min(x, y) for x, y in combinations(entries, 2))
    correction = sum((2 * i) * (2 * i - 1) // 2 for i in range(1, m))
    return total - correction


def a_value(entry: object, kind: str) -> int:
    if kind == "A":
        if not isinstance(entry, tuple) or not is_partition(entry):
            raise LabelError(f"not a partition: {entry!r}")
        return n_value(entry)
    if kind == "D":
        if isinstance(entry, DLabel) or (isinstance(entry, tuple) and len(entry) == 2):
            return a_value_d(entry)  # type: ignore[arg-type]
        raise LabelError(f"not a type D label: {entry!r}")
    raise LabelError(f"unsupported type {kind!r}")


# ---------------------------------------------------------------------------
# factors of centralizers and their label sets


FACTOR_KINDS = ("GL", "GU", "Sp", "SO+", "SO-", "SO")


@dataclass(frozen=True)
class ClassicalFactor:
    """One classical group factor ``kind_k(q^e)`` of a connected centralizer.

    ``k`` is the dimension of the natural module of the factor (as in
    ``Sp_k``, ``SO^+_k``, ``GU_k``).  ``origin`` records the polynomial orbit
    the factor comes from and ``pair`` groups factors swapped by a flip.
    """

    kind: str
    k: int
    e: int = 1
    origin: tuple = ()
    pair: int = -1

    def __post_init__(self) -> None:
        if self.kind not in FACTOR_KINDS:
            raise LabelError(f"unknown factor kind {self.kind!r}")
        if self.k < 0:
            raise LabelError("negative rank")

    @property
    def rank(self) -> int:
        if self.kind in ("GL", "GU"):
            return self.k
        if self.kind == "SO":
            return (self.k - 1) // 2
        return self.k // 2

    def order(self, q: int) -> int:
        from hcprim.centralizers import classical_order

        return classical_order(self.kind, self.k, q**self.e)

    def __str__(self) -> str:
        kind = {"SO+": "SO^+", "SO-": "SO^-"}.get(self.kind, self.kind)
        return f"{kind}_{self.k}(q^{self.e})" if self.e != 1 else f"{kind}_{self.k}(q)"


LabelEntry = Union[Partition, Bipartition, DLabel]


def enumerate_labels(factor: ClassicalFactor) -> list:
    """Principal-series unipotent labels of one factor."""
    kind, k = factor.kind, factor.k
    if kind in ("GL", "GU"):
        return list(partitions(k))
    if kind == "Sp":
        return list(bipartitions(k // 2))
    if kind == "SO":
        return list(bipartitions((k - 1) // 2))
    if kind == "SO+":
        return list(d_labels(k // 2))
    # SO^-_k: relative Weyl group of type B_{k/2 - 1}
    return list(bipartitions(max(k // 2 - 1, 0)))


def check_entry(factor: ClassicalFactor, entry: object) -> None:
    """Raise unless ``entry`` is a valid label of ``factor``."""
    if entry not in enumerate_labels(factor):
        raise LabelError(f"{entry!r} is not a label of {factor}")


# ---------------------------------------------------------------------------
# automorphism actions


FLAGS = ("id", "g", "f")


@dataclass(frozen=True)
class ActionDescriptor:
    """An automorphism of a centralizer shape acting on label tuples.

    Entry ``i`` of the label is sent, after applying ``flags[i]``, to
    position ``perm[i]``.
    """

    perm: tuple[int, ...]
    flags: tuple[str, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise LabelError("perm is not a permutation")
        if len(self.flags) != len(self.perm) or any(f not in FLAGS for f in self.flags):
            raise LabelError("bad per-factor flags")

    @classmethod
    def identity(cls, n: int, name: str = "1") -> ActionDescriptor:
        return cls(tuple(range(n)), ("id",) * n, name)

    def then(self, other: ActionDescriptor) -> ActionDescriptor:
        """Apply ``self`` first, then ``other``."""
        n = len(self.perm)
        perm = [0] * n
        flags = ["id"] * n
        for i in range(n):
            j = self.perm[i]
            perm[i] = other.perm[j]
            fs = {self.flags[i], other.flags[j]} - {"id"}
            g_count = (self.flags[i] == "g") + (other.flags[j] == "g")
            if g_count == 1:
                flags[i] = "g"
            elif "f" in fs:
                flags[i] = "f"
        name = f"{self.name}{other.name}" if self.name or other.name else ""
        return ActionDescriptor(tuple(perm), tuple(flags), name)

    def is_identity_on(self, factors: Sequence[ClassicalFactor]) -> bool:
        return all(self.perm[i] == i for i in range(len(self.perm)))


def _apply_flag(flag: str, factor: ClassicalFactor, entry: object) -> object:
    if flag == "g" and factor.kind == "SO+" and isinstance(entry, DLabel):
        return entry.toggled()
    return entry


def apply_auto(
    label: Sequence[object], action: ActionDescriptor, factors: Sequence[ClassicalFactor]
) -> tuple:
    """Image of a label tuple under ``action``."""
    n = len(label)
    if len(action.perm) != n or len(factors) != n:
        raise LabelError("action size does not match the label")
    out: list[object] = [None] * n
    for i in range(n):
        j = action.perm[i]
        a, b = factors[i], factors[j]
        if (a.kind, a.k, a.e) != (b.kind, b.k, b.e):
            raise LabelError(f"action maps {a} to the non-isomorphic factor {b}")
        out[j] = _apply_flag(action.flags[i], a, label[i])
    return tuple(out)


def flip(n: int, i: int, j: int) -> ActionDescriptor:
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return ActionDescriptor(tuple(perm), ("id",) * n, "flip")


def graph_on(n: int, idx: Iterable[int], name: str = "g") -> ActionDescriptor:
    idx = set(idx)
    return ActionDescriptor(tuple(range(n)), tuple("g" if i in idx else "id" for i in range(n)), name)


# ---------------------------------------------------------------------------
# serialization


def entry_to_json(entry: object) -> object:
    if isinstance(entry, DLabel):
        d: dict = {"pair": [list(entry.left), list(entry.right)]}
        if entry.prime:
            d["prime"] = True
        return d
    if isinstance(entry, tuple) and len(entry) == 2 and all(isinstance(x, tuple) for x in entry):
        return [list(entry[0]), list(entry[1])]
    return list(entry)  # type: ignore[arg-type]


def entry_from_json(factor: ClassicalFactor, obj: object) -> object:
    if factor.kind in ("GL", "GU"):
        return make_partition(obj)  # type: ignore[arg-type]
    if factor.kind == "SO+":
        if isinstance(obj, dict):
            l, r = obj["pair"]
            return DLabel(make_partition(l), make_partition(r), bool(obj.get("prime", False)))
        l, r = obj  # type: ignore[misc]
        return DLabel(make_partition(l), make_partition(r))
    if isinstance(obj, dict):
        obj = obj["pair"]
    l, r = obj  # type: ignore[misc]
    return (make_partition(l), make_partition(r))


def iter_label_tuples(factors: Sequence[ClassicalFactor]) -> Iterator[tuple]:
    from itertools import product

    yield from product(*(enumerate_labels(f) for f in factors))
