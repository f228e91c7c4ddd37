"""Finite-dimensional associative algebras given by structure constants.

Elements are sparse vectors ``{basis index: Fraction}``.  The truncated
convolution algebras of S^1 and SU(2) are direct sums of matrix algebras,
one block per irreducible representation up to a cutoff.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .linalg import RationalMatrix, kernel_basis, rank

Vector = dict[int, Fraction]


class NotUnital(ValueError):
    pass


class DecompositionMismatch(ValueError):
    pass


def _clean(vec: Mapping[int, object]) -> Vector:
    return {k: Fraction(v) for k, v in vec.items() if v}


def add_into(acc: Vector, vec: Mapping[int, Fraction], scale: Fraction | int = 1) -> None:
    for k, v in vec.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class Algebra:
    """Associative algebra over Q with basis ``b_0 .. b_{dim-1}``.

    ``table[(i, j)]`` is the product ``b_i b_j`` as a sparse vector; missing
    pairs multiply to zero.  Associativity is not enforced here, see
    :func:`check_associative`.
    """

    __slots__ = ("dim", "labels", "table", "unit", "_digest")

    def __init__(self, dim: int, table: Mapping[tuple[int, int], Mapping[int, object]],
                 labels: Sequence[str] | None = None, unit: Mapping[int, object] | None = None):
        if dim < 1:
            raise ValueError("algebras must have dimension >= 1")
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {dim}")
        clean = {}
        for (i, j), vec in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"product index {(i, j)} out of range")
            v = _clean(vec)
            if any(not 0 <= k < dim for k in v):
                raise IndexError(f"coefficient index out of range in b{i}*b{j}")
            if v:
                clean[(i, j)] = v
        self.table: dict[tuple[int, int], Vector] = clean
        self.unit: Vector | None = None
        self._digest = None
        if unit is not None:
            u = _clean(unit)
            for i in range(dim):
                e = {i: Fraction(1)}
                if self.mul(u, e) != e or self.mul(e, u) != e:
                    raise NotUnital(f"given unit does not act as identity on {self.labels[i]}")
            self.unit = u

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def basis_product(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def mul(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        table = self.table
        for i, a in x.items():
            for j, b in y.items():
                prod = table.get((i, j))
                if prod:
                    add_into(out, prod, a * b)
        return out

    def basis_vector(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def left_mult_matrix(self, x: Mapping[int, Fraction]) -> RationalMatrix:
        cols = [self.mul(x, {j: Fraction(1)}) for j in range(self.dim)]
        return RationalMatrix.from_columns(self.dim, cols)

    def digest(self) -> str:
        """Content hash of the structure constants (labels excluded)."""
        if self._digest is None:
            payload = json.dumps(to_document(self, with_labels=False), sort_keys=True)
            self._digest = hashlib.sha256(payload.encode()).hexdigest()
        return self._digest

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table and self.unit == other.unit

    def __hash__(self):
        return hash(self.digest())

    def __repr__(self):
        return f"Algebra(dim={self.dim}, unital={self.is_unital})"


@dataclass(frozen=True)
class BlockDecomposition:
    """Matrix-block layout: block ``k`` is M_{n_k} with matrix unit e_ij at
    basis index ``offset_k + i*n_k + j``."""

    block_sizes: tuple[int, ...]
    block_offsets: tuple[int, ...]

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "BlockDecomposition":
        sizes = tuple(sizes)
        offsets, pos = [], 0
        for n in sizes:
            if n < 1:
                raise ValueError("block sizes must be positive")
            offsets.append(pos)
            pos += n * n
        return cls(sizes, tuple(offsets))

    @property
    def total_dim(self) -> int:
        return sum(n * n for n in self.block_sizes)

    def index(self, block: int, i: int, j: int) -> int:
        n = self.block_sizes[block]
        return self.block_offsets[block] + i * n + j

    def block_identity(self, block: int) -> Vector:
        n = self.block_sizes[block]
        return {self.index(block, i, i): Fraction(1) for i in range(n)}

    def minimal_idempotent(self, block: int) -> Vector:
        return {self.index(block, 0, 0): Fraction(1)}

    def check(self, a: Algebra) -> None:
        """Raise unless ``a`` is exactly the block algebra described here."""
        if a.dim != self.total_dim:
            raise DecompositionMismatch(f"blocks cover {self.total_dim} dimensions, algebra has {a.dim}")
        expected = block_algebra(self.block_sizes)[0]
        if a.table != expected.table:
            raise DecompositionMismatch("structure constants are not those of the block matrix algebra")


@dataclass(frozen=True)
class TraceFunctional:
    coefficients: tuple[Fraction, ...]

    def __call__(self, x: Mapping[int, Fraction]) -> Fraction:
        return sum((self.coefficients[k] * v for k, v in x.items()), Fraction(0))

    def is_trace(self, a: Algebra) -> bool:
        for i in range(a.dim):
            for j in range(i + 1, a.dim):
                if self(a.basis_product(i, j)) != self(a.basis_product(j, i)):
                    return False
        return True


class AssociativityResult(NamedTuple):
    ok: bool
    witness: tuple[int, int, int] | None


# ---------------------------------------------------------------- constructors

def matrix_algebra(n: int) -> Algebra:
    """M_n with matrix units e_ij at index i*n + j."""
    if n < 1:
        raise ValueError("matrix_algebra needs n >= 1")
    return block_algebra([n])[0]


def field() -> Algebra:
    return Algebra(1, {(0, 0): {0: 1}}, labels=["1"], unit={0: 1})


def dual_numbers() -> Algebra:
    """Q[x]/(x^2) with basis (1, x)."""
    return Algebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, labels=["1", "x"], unit={0: 1})


def nilpotent_line() -> Algebra:
    """The non-unital one-dimensional algebra with x^2 = 0."""
    return Algebra(1, {}, labels=["x"])


def block_algebra(sizes: Sequence[int], labels: Sequence[str] | None = None) -> tuple[Algebra, BlockDecomposition]:
    """Direct sum of matrix algebras M_{n_1} + ... + M_{n_k}."""
    blocks = BlockDecomposition.from_sizes(sizes)
    table: dict[tuple[int, int], Vector] = {}
    names = []
    unit: Vector = {}
    for b, n in enumerate(blocks.block_sizes):
        prefix = "" if len(blocks.block_sizes) == 1 else (labels[b] if labels else f"M{n}") + "_"
        for i in range(n):
            unit[blocks.index(b, i, i)] = Fraction(1)
            for j in range(n):
                names.append(f"{prefix}e{i + 1}{j + 1}" if n > 1 else (prefix[:-1] if prefix else "1"))
                for k in range(n):
                    table[(blocks.index(b, i, j), blocks.index(b, j, k))] = {blocks.index(b, i, k): Fraction(1)}
    return Algebra(blocks.total_dim, table, labels=names, unit=unit), blocks


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    off = a.dim
    table = dict(a.table)
    for (i, j), vec in b.table.items():
        table[(i + off, j + off)] = {k + off: v for k, v in vec.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = dict(a.unit)
        unit.update({k + off: v for k, v in b.unit.items()})
    la = [f"A.{s}" for s in a.labels]
    lb = [f"B.{s}" for s in b.labels]
    return Algebra(a.dim + b.dim, table, labels=la + lb, unit=unit)


def unitalization(a: Algebra) -> Algebra:
    """A+ = A with a new unit adjoined as the last basis element."""
    u = a.dim
    table = dict(a.table)
    one = {u: Fraction(1)}
    for i in range(a.dim + 1):
        table[(u, i)] = {i: Fraction(1)}
        table[(i, u)] = {i: Fraction(1)}
    return Algebra(a.dim + 1, table, labels=list(a.labels) + ["1+"], unit=one)


def truncated_convolution(group: str, cutoff: int) -> tuple[Algebra, BlockDecomposition]:
    """Irreducible-representation truncation of the convolution algebra.

    ``"S1"``: one 1x1 block per Fourier mode |n| <= cutoff.
    ``"SU2"``: blocks M_1, ..., M_cutoff (one per irrep of dimension n).
    """
    g = group.upper().replace("(", "").replace(")", "")
    if g == "S1":
        if cutoff < 0:
            raise ValueError("S1 truncation needs cutoff >= 0")
        modes = list(range(-cutoff, cutoff + 1))
        return block_algebra([1] * len(modes), labels=[f"chi{m}" for m in modes])
    if g == "SU2":
        if cutoff < 1:
            raise ValueError("SU2 truncation needs cutoff >= 1")
        return block_algebra(list(range(1, cutoff + 1)), labels=[f"V{n}" for n in range(1, cutoff + 1)])
    raise ValueError(f"unknown group {group!r}; expected 'S1' or 'SU2'")


# ------------------------------------------------------------------ queries

def check_associative(a: Algebra) -> AssociativityResult:
    d = a.dim
    for i in range(d):
        for j in range(d):
            ij = a.basis_product(i, j)
            for k in range(d):
                left = a.mul(ij, {k: Fraction(1)})
                right = a.mul({i: Fraction(1)}, a.basis_product(j, k))
                if left != right:
                    return AssociativityResult(False, (i, j, k))
    return AssociativityResult(True, None)


def _commutator_matrix(a: Algebra) -> RationalMatrix:
    cols = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            c = dict(a.basis_product(i, j))
            add_into(c, a.basis_product(j, i), -1)
            if c:
                cols.append(c)
    return RationalMatrix.from_columns(a.dim, cols)


def commutator_quotient_dim(a: Algebra) -> int:
    """dim A/[A, A]."""
    return a.dim - rank(_commutator_matrix(a))


def trace_space_basis(a: Algebra) -> list[TraceFunctional]:
    """Basis of the linear functionals vanishing on all commutators."""
    constraints = _commutator_matrix(a).transpose()
    out = []
    for vec in kernel_basis(constraints):
        out.append(TraceFunctional(tuple(vec.get(k, Fraction(0)) for k in range(a.dim))))
    return out


# ----------------------------------------------------------- file documents

def to_document(a: Algebra, with_labels: bool = True) -> dict:
    """Serializable form: entries are [i, j, k, numerator, denominator]."""
    entries = []
    for (i, j) in sorted(a.table):
        for k, v in sorted(a.table[(i, j)].items()):
            entries.append([i, j, k, v.numerator, v.denominator])
    doc: dict = {"dim": a.dim, "entries": entries}
    if with_labels:
        doc["labels"] = list(a.labels)
    if a.unit is not None:
        doc["unit"] = [[a.unit.get(k, Fraction(0)).numerator, a.unit.get(k, Fraction(0)).denominator]
                       for k in range(a.dim)]
    return doc


class AlgebraFormatError(ValueError):
    """Malformed algebra document; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _parse_scalar(x, where: str) -> Fraction:
    try:
        if isinstance(x, list):
            if len(x) != 2:
                raise ValueError("expected [numerator, denominator]")
            return Fraction(int(x[0]), int(x[1]))
        if isinstance(x, (int, str)):
            return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraFormatError(where, str(exc)) from None
    raise AlgebraFormatError(where, f"cannot read {x!r} as a rational")


def from_document(doc: Mapping, check_unit: bool = True) -> Algebra:
    """Inverse of :func:`to_document`.

    ``unit`` may be a list of rationals (``"1/2"``, ``3`` or ``[1, 2]``).
    With ``check_unit=False`` a unit that fails the identity test is
    dropped instead of rejected, so broken tables can still be inspected.
    """
    if not isinstance(doc, Mapping):
        raise AlgebraFormatError("<root>", "expected an object")
    if "dim" not in doc:
        raise AlgebraFormatError("dim", "missing")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise AlgebraFormatError("dim", f"must be a positive integer, got {dim!r}")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise AlgebraFormatError("labels", f"expected a list of {dim} strings")
    table: dict[tuple[int, int], Vector] = {}
    for n, e in enumerate(doc.get("entries", [])):
        where = f"entries[{n}]"
        if not isinstance(e, list) or len(e) != 5 or not all(isinstance(x, int) for x in e):
            raise AlgebraFormatError(where, "expected [i, j, k, numerator, denominator] of integers")
        i, j, k, num, den = e
        if den == 0:
            raise AlgebraFormatError(where, "zero denominator")
        if not all(0 <= x < dim for x in (i, j, k)):
            raise AlgebraFormatError(where, f"index out of range for dim {dim}")
        add_into(table.setdefault((i, j), {}), {k: Fraction(num, den)})
    unit = None
    if doc.get("unit") is not None:
        raw = doc["unit"]
        if not isinstance(raw, list) or len(raw) != dim:
            raise AlgebraFormatError("unit", f"expected {dim} coefficients")
        unit = {k: _parse_scalar(x, f"unit[{k}]") for k, x in enumerate(raw)}
    try:
        return Algebra(dim, table, labels=labels, unit=unit)
    except NotUnital:
        if check_unit:
            raise
        return Algebra(dim, table, labels=labels)


def inverse(a: Algebra, u: Mapping[int, Fraction]) -> Vector | None:
    """Two-sided inverse of ``u`` in a unital algebra, or None."""
    from .linalg import solve
    if a.unit is None:
        raise NotUnital("inverse needs a unital algebra")
    x = solve(a.left_mult_matrix(u), a.unit)
    if x is None or a.mul(x, u) != a.unit:
        return None
    return x
