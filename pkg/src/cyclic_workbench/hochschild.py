"""Hochschild chain complex and Hochschild (co)homology dimensions.

C_n = A (x) Abar^(x)n in the normalized complex (Abar = A / Q.1), or
A^(x)(n+1) unnormalized.  Tensor basis elements are ordered
lexicographically in their factor indices.

    b(a0 (x) ... (x) an) = sum_{i<n} (-1)^i a0 (x) .. (x) a_i a_{i+1} (x) .. (x) an
                           + (-1)^n  an a0 (x) a1 (x) .. (x) a_{n-1}
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import Algebra, NotUnital, Vector
from .cache import DiffCache
from .linalg import CompositionNonzero, RationalMatrix, _norm, rank

SIZE_LIMIT = 10**6


class SizeLimit(ValueError):
    def __init__(self, degree: int, size: int, limit: int = SIZE_LIMIT):
        super().__init__(f"C_{degree} would have {size} basis elements (limit {limit}); pass force=True to override")
        self.degree = degree
        self.size = size


class TensorBasis:
    """Index arithmetic for A (x) Abar^(x)n.

    ``reps`` lists the basis indices of A used as representatives of the
    basis of Abar; ``reduce`` writes an element of A in that basis.
    """

    def __init__(self, a: Algebra, normalized: bool):
        self.algebra = a
        self.normalized = normalized
        d = a.dim
        if normalized:
            if a.unit is None:
                raise NotUnital("the normalized complex needs a unital algebra")
            # drop the last basis direction the unit touches
            self.dropped = max(a.unit)
            self.reps = [i for i in range(d) if i != self.dropped]
        else:
            self.dropped = None
            self.reps = list(range(d))
        self.pos = {r: p for p, r in enumerate(self.reps)}
        self.m = len(self.reps)
        self._reduced_basis: dict[int, dict[int, Fraction]] = {}
        for i in range(d):
            self._reduced_basis[i] = {p: _norm(v) for p, v in self._reduce_basis(i).items()}

    def _reduce_basis(self, i: int) -> dict[int, Fraction]:
        if i != self.dropped:
            return {self.pos[i]: Fraction(1)}
        u = self.algebra.unit
        c = u[i]
        return {self.pos[k]: -v / c for k, v in u.items() if k != i}

    def reduce(self, vec: Vector) -> dict[int, Fraction]:
        """Image of an element of A in Abar, keyed by representative position."""
        out: dict[int, Fraction] = {}
        for i, v in vec.items():
            for p, w in self._reduced_basis[i].items():
                s = out.get(p, 0) + v * w
                if s:
                    out[p] = s
                else:
                    out.pop(p, None)
        return out

    def size(self, n: int) -> int:
        return self.algebra.dim * self.m ** n

    def index(self, a0: int, tail: tuple[int, ...]) -> int:
        idx = a0
        m = self.m
        for p in tail:
            idx = idx * m + p
        return idx

    def chains(self, n: int):
        """All basis chains (a0, positions...) in index order."""
        return itertools.product(range(self.algebra.dim), *([range(self.m)] * n))

    def label(self, n: int, index: int) -> str:
        tail = []
        for _ in range(n):
            index, p = divmod(index, self.m)
            tail.append(self.algebra.labels[self.reps[p]])
        return " (x) ".join([self.algebra.labels[index]] + tail[::-1])


def _b_matrix(tb: TensorBasis, n: int) -> RationalMatrix:
    a = tb.algebra
    reps = tb.reps
    full = {}
    red = {}
    for i in range(a.dim):
        for p, r in enumerate(reps):
            full[(i, p)] = {k: _norm(v) for k, v in a.basis_product(i, r).items()}
            full[(-1 - p, i)] = {k: _norm(v) for k, v in a.basis_product(r, i).items()}
    for p, r in enumerate(reps):
        for q, s in enumerate(reps):
            red[(p, q)] = {k: _norm(v) for k, v in tb.reduce(a.basis_product(r, s)).items()}
    m = tb.m
    last_sign = -1 if n % 2 else 1
    data: dict[int, dict[int, Fraction]] = {}
    col = 0
    for chain in tb.chains(n):
        a0 = chain[0]
        tail = chain[1:]
        # i = 0: a0 * a1 lands in the unreduced slot
        rest = tail[1:]
        base = tb.index(0, rest)
        stride = m ** (n - 1)
        for k, v in full[(a0, tail[0])].items():
            _put(data, base + k * stride, col, v)
        for i in range(1, n):
            sign = -1 if i % 2 else 1
            prod = red[(tail[i - 1], tail[i])]
            if not prod:
                continue
            pre = tail[:i - 1]
            post = tail[i + 1:]
            for p, v in prod.items():
                _put(data, tb.index(a0, pre + (p,) + post), col, sign * v)
        init = tail[:-1]
        base = tb.index(0, init)
        for k, v in full[(-1 - tail[-1], a0)].items():
            _put(data, base + k * stride, col, last_sign * v)
        col += 1
    return RationalMatrix(tb.size(n - 1), tb.size(n), data)


def _put(data, r, c, v):
    row = data.get(r)
    if row is None:
        data[r] = {c: v}
        return
    s = row.get(c, 0) + v
    if s:
        row[c] = s
    else:
        del row[c]


@dataclass
class ChainComplex:
    """Graded dims plus differentials ``d_n: C_n -> C_{n-1}``."""

    max_degree: int
    dims: list[int]
    differentials: list[RationalMatrix]  # differentials[n-1] is d_n
    normalized: bool = True
    _ranks: dict = dc_field(default_factory=dict, repr=False)

    def d(self, n: int) -> RationalMatrix:
        """d_n, with zero maps outside 1..max_degree."""
        if 1 <= n <= self.max_degree:
            return self.differentials[n - 1]
        if n == 0:
            return RationalMatrix.zeros(0, self.dims[0])
        if n == self.max_degree + 1:
            return RationalMatrix.zeros(self.dims[self.max_degree], 0)
        raise IndexError(f"d_{n} not available in a complex built to degree {self.max_degree}")

    def rank(self, n: int) -> int:
        if n not in self._ranks:
            self._ranks[n] = rank(self.d(n))
        return self._ranks[n]

    def homology(self, n: int) -> int:
        """dim H_n; exact for n < max_degree."""
        return self.dims[n] - self.rank(n) - self.rank(n + 1)

    def cohomology(self, n: int) -> int:
        """dim H^n of the transposed complex, computed from transposed matrices."""
        key = ("T", n)
        if key not in self._ranks:
            self._ranks[key] = rank(self.d(n).transpose())
        key1 = ("T", n + 1)
        if key1 not in self._ranks:
            self._ranks[key1] = rank(self.d(n + 1).transpose())
        return self.dims[n] - self._ranks[key] - self._ranks[key1]


def differential(a: Algebra, n: int, normalized: bool = True, cache: DiffCache | None = None,
                 force: bool = False, _tb: TensorBasis | None = None) -> RationalMatrix:
    tb = _tb or TensorBasis(a, normalized)
    for k in (n - 1, n):
        if tb.size(k) > SIZE_LIMIT and not force:
            raise SizeLimit(k, tb.size(k))
    if cache is not None:
        hit = cache.get(a.digest(), "b", n, normalized)
        if hit is not None:
            return hit
    m = _b_matrix(tb, n)
    if cache is not None:
        cache.put(a.digest(), "b", n, normalized, m)
    return m


def hochschild_complex(a: Algebra, max_degree: int, normalized: bool = True, *, force: bool = False,
                       cache: DiffCache | None = None, verify: bool = True) -> ChainComplex:
    """Hochschild complex of a unital algebra up to ``max_degree``.

    With ``verify`` every composite d_n d_{n+1} is checked to vanish exactly.
    """
    if a.unit is None:
        raise NotUnital("Hochschild complex requires a unital algebra; unitalize first")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    tb = TensorBasis(a, normalized)
    for n in range(max_degree + 1):
        if tb.size(n) > SIZE_LIMIT and not force:
            raise SizeLimit(n, tb.size(n))
    dims = [tb.size(n) for n in range(max_degree + 1)]
    diffs = [differential(a, n, normalized, cache=cache, force=force, _tb=tb) for n in range(1, max_degree + 1)]
    if verify:
        for n in range(1, max_degree):
            if not (diffs[n - 1] @ diffs[n]).is_zero():
                raise CompositionNonzero(f"b_{n} b_{n + 1} != 0")
    return ChainComplex(max_degree, dims, diffs, normalized)


THEORIES = ("HH", "HH_co", "HC", "HC_co", "HP", "HP_co")


@dataclass
class HomologyReport:
    """Per-degree dimensions of one theory.

    ``flags[n]`` is True when degree n is reliable.  Complexes are always
    built one degree past the cutoff, so every reported degree is exact
    unless a computation says otherwise.
    """

    theory: str
    dims: list[int]
    cutoff: int
    flags: list[bool]
    normalized: bool = True
    certificate: object = None

    def __post_init__(self):
        if self.theory not in THEORIES:
            raise ValueError(f"unknown theory {self.theory}")
        if len(self.dims) != self.cutoff + 1 or len(self.flags) != self.cutoff + 1:
            raise ValueError("report needs one entry per degree 0..cutoff")

    @property
    def reliable_dims(self) -> list[int]:
        return [d for d, ok in zip(self.dims, self.flags) if ok]

    @property
    def periodic(self) -> tuple[int, int]:
        """(even, odd) dimensions; meaningful for HP reports."""
        return (self.dims[0], self.dims[1] if self.cutoff >= 1 else 0)

    def to_dict(self) -> dict:
        cert = self.certificate
        return {
            "theory": self.theory,
            "dims": list(self.dims),
            "cutoff": self.cutoff,
            "flags": ["reliable" if f else "unreliable" for f in self.flags],
            "normalized": self.normalized,
            "certificates": cert.to_dict() if cert is not None else None,
        }


def hh_dims(a: Algebra, cutoff: int, *, normalized: bool = True, force: bool = False,
            cache: DiffCache | None = None, complex: ChainComplex | None = None) -> HomologyReport:
    cx = complex or hochschild_complex(a, cutoff + 1, normalized, force=force, cache=cache)
    dims = [cx.homology(n) for n in range(cutoff + 1)]
    return HomologyReport("HH", dims, cutoff, [True] * (cutoff + 1), normalized)


def hh_cohomology_dims(a: Algebra, cutoff: int, *, normalized: bool = True, force: bool = False,
                       cache: DiffCache | None = None, complex: ChainComplex | None = None) -> HomologyReport:
    cx = complex or hochschild_complex(a, cutoff + 1, normalized, force=force, cache=cache)
    dims = [cx.cohomology(n) for n in range(cutoff + 1)]
    return HomologyReport("HH_co", dims, cutoff, [True] * (cutoff + 1), normalized)
