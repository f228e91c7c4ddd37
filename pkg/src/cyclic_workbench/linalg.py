"""Exact sparse linear algebra over the rationals.

Matrices are stored row-wise as ``{row: {col: value}}`` with only nonzero
entries present.  Ranks are computed by gcd-normalized integer elimination
with a least-fill pivot rule, falling back to dense fraction-free (Bareiss)
elimination once the active part of the matrix becomes dense.

``modular_rank`` is an independent reduction mod p used to cross-check the
exact ranks; ``mod_check`` turns that cross-check on for every call to
``rank`` made inside its ``with`` block.
"""
from __future__ import annotations

import contextlib
import contextvars
import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

import sympy

__all__ = [
    "BadPrime",
    "CompositionNonzero",
    "DimensionMismatch",
    "RankMismatch",
    "RationalMatrix",
    "homology_dim",
    "induced_map_rank",
    "kernel_basis",
    "mod_check",
    "modular_rank",
    "random_prime",
    "rank",
    "rank_log",
    "solve",
]


class DimensionMismatch(ValueError):
    pass


class CompositionNonzero(ValueError):
    pass


class BadPrime(ValueError):
    pass


class RankMismatch(ArithmeticError):
    """Exact and modular ranks disagree at every prime tried."""


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


def _norm(x):
    """Internal entry form: int when integral, else Fraction."""
    t = type(x)
    if t is int:
        return x
    if t is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class RationalMatrix:
    """Immutable sparse matrix with exact rational entries.

    Integral entries are held as ``int`` internally; accessors return
    ``Fraction``.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Mapping[int, Mapping[int, object]] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {(rows, cols)}")
        self.rows = rows
        self.cols = cols
        clean: dict[int, dict[int, Fraction]] = {}
        for r, row in (data or {}).items():
            if not 0 <= r < rows:
                raise IndexError(f"row {r} out of range for {rows} rows")
            kept = {}
            for c, v in row.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range for {cols} columns")
                if v:
                    kept[c] = _norm(v)
            if kept:
                clean[r] = kept
        self._data = clean
        self._hash = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: dict[int, dict]) -> "RationalMatrix":
        # caller guarantees bounds, normalized values and no zeros
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._trusted(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            data[i] = {j: v for j, v in enumerate(row)}
        return cls(nrows, ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        data: dict[int, dict[int, object]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                data.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), data)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RationalMatrix | None"]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "RationalMatrix":
        """Assemble a block matrix; ``None`` marks a zero block."""
        row_off = [0]
        for s in row_sizes:
            row_off.append(row_off[-1] + s)
        col_off = [0]
        for s in col_sizes:
            col_off.append(col_off[-1] + s)
        data: dict[int, dict[int, Fraction]] = {}
        for bi, brow in enumerate(blocks):
            for bj, blk in enumerate(brow):
                if blk is None:
                    continue
                if blk.shape != (row_sizes[bi], col_sizes[bj]):
                    raise DimensionMismatch(
                        f"block ({bi},{bj}) has shape {blk.shape}, expected {(row_sizes[bi], col_sizes[bj])}")
                r0, c0 = row_off[bi], col_off[bj]
                for r, row in blk._data.items():
                    target = data.setdefault(r0 + r, {})
                    for c, v in row.items():
                        target[c0 + c] = v
        return cls._trusted(row_off[-1], col_off[-1], data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return Fraction(self._data.get(r, {}).get(c, 0))

    def row(self, r: int) -> dict[int, Fraction]:
        return {c: Fraction(v) for c, v in self._data.get(r, {}).items()}

    def items(self) -> Iterator[tuple[int, int, Fraction]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, Fraction(row[c])

    def is_zero(self) -> bool:
        return not self._data

    def transpose(self) -> "RationalMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return RationalMatrix._trusted(self.cols, self.rows, data)

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        data: dict[int, dict[int, Fraction]] = {}
        for r, row in self._data.items():
            acc: dict[int, Fraction] = {}
            for k, v in row.items():
                orow = odata.get(k)
                if orow is None:
                    continue
                for c, w in orow.items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: _norm(x) for c, x in acc.items() if x}
            if acc:
                data[r] = acc
        return RationalMatrix._trusted(self.rows, other.cols, data)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                s = target.get(c, 0) + v
                if s:
                    target[c] = _norm(s)
                else:
                    target.pop(c, None)
            if not target:
                del data[r]
        return RationalMatrix._trusted(self.rows, self.cols, data)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, s) -> "RationalMatrix":
        s = _norm(s)
        if not s:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._trusted(
            self.rows, self.cols, {r: {c: _norm(v * s) for c, v in row.items()} for r, row in self._data.items()})

    def apply(self, vec: Mapping[int, object]) -> dict[int, Fraction]:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: dict[int, Fraction] = {}
        for r, row in self._data.items():
            s = 0
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = _frac(s)
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = Fraction(v)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(self.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------- elimination

def _integer_rows(m: RationalMatrix) -> list[dict[int, int]]:
    """Scale every row to a primitive integer row."""
    out = []
    for row in m._data.values():
        den = 1
        for v in row.values():
            if type(v) is not int:
                den = lcm(den, v.denominator)
        if den == 1:
            irow = dict(row)
        else:
            irow = {c: v * den if type(v) is int else v.numerator * (den // v.denominator) for c, v in row.items()}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            irow = {c: v // g for c, v in irow.items()}
        out.append(irow)
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


DENSE_THRESHOLD = 0.5
_DENSE_MIN_ENTRIES = 64


def _sparse_rank(rows: list[dict[int, int]]) -> int:
    """Rank of integer rows by least-fill sparse elimination."""
    active: dict[int, dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    colmap: dict[int, set[int]] = {}
    for i, r in active.items():
        for c in r:
            colmap.setdefault(c, set()).add(i)
    heap = [(len(r), i) for i, r in active.items()]
    heapq.heapify(heap)
    nnz = sum(len(r) for r in active.values())
    rank = 0
    while heap:
        length, i = heapq.heappop(heap)
        prow = active.get(i)
        if prow is None or len(prow) != length:
            continue
        nrows = len(active)
        ncols = len(colmap)
        cells = nrows * ncols
        if cells >= _DENSE_MIN_ENTRIES and nnz > DENSE_THRESHOLD * cells:
            order = sorted(colmap)
            pos = {c: k for k, c in enumerate(order)}
            dense = []
            for r in active.values():
                line = [0] * len(order)
                for c, v in r.items():
                    line[pos[c]] = v
                dense.append(line)
            return rank + _bareiss_rank(dense)
        # pivot column: fewest competing rows, unit entries preferred
        pc = min(prow, key=lambda c: (len(colmap[c]), abs(prow[c]) != 1, c))
        a = prow[pc]
        del active[i]
        nnz -= len(prow)
        for c in prow:
            s = colmap[c]
            s.discard(i)
            if not s:
                del colmap[c]
        rank += 1
        for j in list(colmap.get(pc, ())):
            row = active[j]
            b = row[pc]
            nnz -= len(row)
            if a == 1:
                fa, fb = 1, b
            elif a == -1:
                fa, fb = 1, -b
            else:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                if fa < 0:
                    fa, fb = -fa, -fb
            if fa != 1:
                for c in row:
                    row[c] *= fa
            for c, v in prow.items():
                nv = row.get(c, 0) - fb * v
                if nv:
                    if c not in row:
                        colmap.setdefault(c, set()).add(j)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        s = colmap[c]
                        s.discard(j)
                        if not s:
                            del colmap[c]
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for c in row:
                        row[c] //= g
                nnz += len(row)
                heapq.heappush(heap, (len(row), j))
            else:
                del active[j]
    return rank


# ------------------------------------------------------------ rank + auditing

@dataclass
class _ModCheck:
    primes: int
    rng: random.Random
    log: list | None


_MOD_CHECK: contextvars.ContextVar[_ModCheck | None] = contextvars.ContextVar("mod_check", default=None)


@contextlib.contextmanager
def mod_check(primes: int = 1, seed: int | None = None, log: list | None = None):
    """Cross-check every exact ``rank`` call in this block against ``primes``
    random primes above 10**6.

    Each check is appended to ``log`` (if given) as
    ``(shape, exact_rank, [(p, modular_rank), ...])``.
    """
    token = _MOD_CHECK.set(_ModCheck(primes, random.Random(seed), log))
    try:
        yield
    finally:
        _MOD_CHECK.reset(token)


@contextlib.contextmanager
def rank_log():
    """Collect ``(shape, rank)`` for every exact rank computed in the block."""
    entries: list = []
    outer = _MOD_CHECK.get()
    cfg = _ModCheck(outer.primes if outer else 0, outer.rng if outer else random.Random(), entries)
    token = _MOD_CHECK.set(cfg)
    try:
        yield entries
    finally:
        _MOD_CHECK.reset(token)
        if outer is not None and outer.log is not None:
            outer.log.extend(entries)


def random_prime(rng: random.Random, lo: int = 10**6, hi: int = 2**31) -> int:
    while True:
        p = sympy.nextprime(rng.randrange(lo, hi))
        if p < hi:
            return int(p)


MAX_PRIME_RETRIES = 5


def rank(m: RationalMatrix) -> int:
    """Rank over Q.  ``rank(m) == rank(m.T)``; empty matrices have rank 0."""
    if m.rows == 0 or m.cols == 0 or not m._data:
        r = 0
    else:
        rows = _integer_rows(m)
        # eliminate along the shorter side
        if len(rows) > m.cols:
            rows = _integer_rows(m.transpose())
        r = _sparse_rank(rows)
    cfg = _MOD_CHECK.get()
    if cfg is not None:
        checks = []
        for _ in range(cfg.primes):
            for _attempt in range(MAX_PRIME_RETRIES):
                p = random_prime(cfg.rng)
                try:
                    mr = modular_rank(m, p)
                except BadPrime:
                    continue
                if mr > r:
                    raise RankMismatch(f"rank mod {p} is {mr} > exact rank {r} for {m!r}")
                if mr == r:
                    checks.append((p, mr))
                    break
            else:
                raise RankMismatch(f"exact rank {r} of {m!r} not matched mod {MAX_PRIME_RETRIES} primes")
        if cfg.log is not None:
            cfg.log.append((m.shape, r, checks))
    return r


def modular_rank(m: RationalMatrix, p: int) -> int:
    """Rank of ``m`` reduced modulo the prime ``p``."""
    rows: list[dict[int, int]] = []
    for row in m._data.values():
        red = {}
        for c, v in row.items():
            if type(v) is int:
                x = v % p
            else:
                den = v.denominator
                if den % p == 0:
                    raise BadPrime(f"{p} divides denominator {den}")
                x = v.numerator * pow(den, -1, p) % p
            if x:
                red[c] = x
        if red:
            rows.append(red)
    # plain column-order elimination with pivot map; deliberately unlike _sparse_rank
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in prow.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


# --------------------------------------------------------- kernels and solves

def _rref(rows: list[dict[int, Fraction]]) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of sparse Fraction rows; returns (rows, pivot columns)."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        for c in sorted(pivot_rows):
            if c in row:
                f = row[c]
                for k, v in pivot_rows[c].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {k: v * inv for k, v in row.items()}
        for pc, prow in pivot_rows.items():
            if c in prow:
                f = prow[c]
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivot_rows[c] = row
    order = sorted(pivot_rows)
    return [pivot_rows[c] for c in order], order


def kernel_basis(m: RationalMatrix) -> list[dict[int, Fraction]]:
    """Basis of the right null space as sparse vectors ``{col: value}``.

    Each vector has its first nonzero coordinate equal to 1.
    """
    reduced, pivots = _rref([{c: _frac(v) for c, v in row.items()} for row in m._data.values()])
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for pc, row in zip(pivots, reduced):
            v = row.get(f)
            if v:
                vec[pc] = -v
        lead = vec[min(vec)]
        if lead != 1:
            vec = {k: v / lead for k, v in vec.items()}
        basis.append(vec)
    return basis


def solve(m: RationalMatrix, rhs: Mapping[int, object]) -> dict[int, Fraction] | None:
    """One solution of ``m x = rhs`` (free variables set to 0), or None."""
    aug = m.cols
    rows = []
    for r in range(m.rows):
        row = {c: _frac(v) for c, v in m._data.get(r, {}).items()}
        v = rhs.get(r)
        if v:
            row[aug] = _frac(v)
        if row:
            rows.append(row)
    reduced, pivots = _rref(rows)
    if aug in pivots:
        return None
    return {pc: row[aug] for pc, row in zip(pivots, reduced) if aug in row}


# -------------------------------------------------------------------- homology

def homology_dim(d_n: RationalMatrix, d_next: RationalMatrix, check: bool = True) -> int:
    """dim ker(d_n) - rank(d_next) for a complex ``C_{n+1} -> C_n -> C_{n-1}``."""
    if d_n.cols != d_next.rows:
        raise DimensionMismatch(f"d_n has {d_n.cols} columns but d_next has {d_next.rows} rows")
    if check and not (d_n @ d_next).is_zero():
        raise CompositionNonzero("d_n . d_next != 0")
    return d_n.cols - rank(d_n) - rank(d_next)


def induced_map_rank(d_src: RationalMatrix, f: RationalMatrix, d_tgt_next: RationalMatrix,
                     rank_src: int | None = None, rank_tgt: int | None = None) -> int:
    """Rank of the map induced on homology by a chain map component.

    ``d_src: X_n -> X_{n-1}``, ``f: X_n -> Y_n``, ``d_tgt_next: Y_{n+1} -> Y_n``.
    Uses rank [[d_src, 0], [f, d_tgt_next]] = rank d_src + dim(f(Z) + B).
    """
    if f.cols != d_src.cols or f.rows != d_tgt_next.rows:
        raise DimensionMismatch("chain map does not fit the differentials")
    stacked = RationalMatrix.block(
        [[d_src, None], [f, d_tgt_next]],
        [d_src.rows, f.rows], [d_src.cols, d_tgt_next.cols])
    rs = rank(d_src) if rank_src is None else rank_src
    rt = rank(d_tgt_next) if rank_tgt is None else rank_tgt
    return rank(stacked) - rs - rt


def vector_from_entries(entries: Iterable[tuple[int, object]]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, v in entries:
        s = out.get(k, 0) + _frac(v)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out
