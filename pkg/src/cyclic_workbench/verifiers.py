"""Finite checks of structural facts about block matrix algebras.

* additivity of HH and HC under direct sums;
* separability idempotents (bimodule sections of multiplication) and the
  vanishing of higher Hochschild homology they force;
* the length-2 resolution of the trivial bimodule built from two copies of
  A -> A+ -> Q;
* the block-trace projection onto conjugation invariants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, BlockDecomposition, add_into, commutator_quotient_dim
from .cyclic import hc_dims, mixed_complex
from .hochschild import hh_dims
from .linalg import RationalMatrix, kernel_basis, rank, solve


class NotSeparable(ValueError):
    pass


@dataclass
class DegreeComparison:
    degree: int
    total: int
    parts: tuple[int, int]

    @property
    def additive(self) -> bool:
        return self.total == sum(self.parts)


@dataclass
class AdditivityReport:
    cutoff: int
    hh: list[DegreeComparison]
    hc: list[DegreeComparison]

    @property
    def additive(self) -> bool:
        return all(c.additive for c in self.hh + self.hc)

    @property
    def hh_sum(self) -> list[int]:
        return [c.total for c in self.hh]

    @property
    def hc_sum(self) -> list[int]:
        return [c.total for c in self.hc]

    def to_dict(self) -> dict:
        return {"kind": "additivity", "cutoff": self.cutoff, "additive": self.additive,
                "hh": [[c.total, *c.parts] for c in self.hh], "hc": [[c.total, *c.parts] for c in self.hc]}


def verify_additivity(a: Algebra, b: Algebra, cutoff: int, **kw) -> AdditivityReport:
    """Compare HH and HC of a + b with the entrywise sums for a and b."""
    from .algebra import direct_sum
    s = direct_sum(a, b)
    out = {}
    for name, alg in (("a", a), ("b", b), ("s", s)):
        mc = mixed_complex(alg, cutoff + 1, **kw)
        out[name] = (hh_dims(alg, cutoff, complex=mc.hochschild()).dims, hc_dims(alg, cutoff, complex=mc).dims)
    hh = [DegreeComparison(n, out["s"][0][n], (out["a"][0][n], out["b"][0][n])) for n in range(cutoff + 1)]
    hc = [DegreeComparison(n, out["s"][1][n], (out["a"][1][n], out["b"][1][n])) for n in range(cutoff + 1)]
    return AdditivityReport(cutoff, hh, hc)


# ------------------------------------------------------------- separability

@dataclass(frozen=True)
class SeparabilityIdempotent:
    """Element of A (x) A; coordinate ``i*dim + j`` multiplies b_i (x) b_j."""

    dim: int
    coefficients: dict

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return [(k // self.dim, k % self.dim, v) for k, v in sorted(self.coefficients.items())]


def _tensor_left(a: Algebra, x: dict, k: int) -> dict:
    """(b_k (x) 1) x."""
    d = a.dim
    out: dict = {}
    for idx, v in x.items():
        i, j = divmod(idx, d)
        for p, w in a.basis_product(k, i).items():
            add_into(out, {p * d + j: w}, v)
    return out


def _tensor_right(a: Algebra, x: dict, k: int) -> dict:
    """x (1 (x) b_k)."""
    d = a.dim
    out: dict = {}
    for idx, v in x.items():
        i, j = divmod(idx, d)
        for p, w in a.basis_product(j, k).items():
            add_into(out, {i * d + p: w}, v)
    return out


def multiply_tensor(a: Algebra, x: dict) -> dict:
    """m(x) for x in A (x) A."""
    d = a.dim
    out: dict = {}
    for idx, v in x.items():
        i, j = divmod(idx, d)
        add_into(out, a.basis_product(i, j), v)
    return out


def is_separability_idempotent(a: Algebra, e: SeparabilityIdempotent) -> bool:
    x = e.coefficients
    if multiply_tensor(a, x) != a.unit:
        return False
    return all(_tensor_left(a, x, k) == _tensor_right(a, x, k) for k in range(a.dim))


def _separability_system(a: Algebra) -> tuple[RationalMatrix, dict]:
    d = a.dim
    columns = []
    for idx in range(d * d):
        unit_vec = {idx: Fraction(1)}
        col = {}
        add_into(col, multiply_tensor(a, unit_vec))
        for k in range(d):
            diff = _tensor_left(a, unit_vec, k)
            add_into(diff, _tensor_right(a, unit_vec, k), -1)
            add_into(col, {d + k * d * d + r: v for r, v in diff.items()})
        columns.append(col)
    m = RationalMatrix.from_columns(d + d ** 3, columns)
    return m, dict(a.unit)


def separability_idempotent(a: Algebra) -> SeparabilityIdempotent:
    """Solve m(e) = 1, (b_k (x) 1) e = e (1 (x) b_k) for all k.

    Among all solutions the one of least Euclidean norm in the tensor basis
    is returned; for a sum of matrix blocks that is
    sum_i (1/n_i) sum_{j,k} e^(i)_jk (x) e^(i)_kj.
    """
    if a.unit is None:
        raise NotSeparable("separability needs a unital algebra")
    m, rhs = _separability_system(a)
    x0 = solve(m, rhs)
    if x0 is None:
        raise NotSeparable("no element of A (x) A satisfies the separability equations")
    ker = kernel_basis(m)
    if ker:
        # project x0 onto the orthogonal complement of the kernel
        gram = RationalMatrix.from_dense([[_dot(u, v) for v in ker] for u in ker])
        y = solve(gram, {i: _dot(u, x0) for i, u in enumerate(ker)})
        x = dict(x0)
        for i, u in enumerate(ker):
            if y.get(i):
                add_into(x, u, -y[i])
        x0 = x
    e = SeparabilityIdempotent(a.dim, x0)
    assert is_separability_idempotent(a, e)
    return e


def _dot(u: dict, v: dict) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    return sum((w * v[k] for k, w in u.items() if k in v), Fraction(0))


@dataclass
class SeparableVanishingReport:
    separable: bool
    hh: list[int]
    holds: bool
    idempotent: SeparabilityIdempotent | None = None

    @property
    def status(self) -> str:
        if not self.separable:
            return "vacuous"
        return "verified" if self.holds else "violated"

    def to_dict(self) -> dict:
        return {"kind": "separable-vanishing", "separable": self.separable, "hh": self.hh, "status": self.status}


def verify_separable_vanishing(a: Algebra, cutoff: int, **kw) -> SeparableVanishingReport:
    """If a separability idempotent exists, HH_n must vanish for 1 <= n <= cutoff."""
    hh = hh_dims(a, cutoff, **kw).dims
    try:
        e = separability_idempotent(a)
    except NotSeparable:
        return SeparableVanishingReport(False, hh, True)
    return SeparableVanishingReport(True, hh, all(h == 0 for h in hh[1:]), e)


# ------------------------------------------------------------- resolution

@dataclass
class ResolutionReport:
    dims: list[int]           # [A+ (x) A+, A (x) A+ + A+ (x) A, A (x) A]
    homology: list[int]
    augmentation_ok: bool
    squares_zero: bool

    @property
    def exact(self) -> bool:
        return self.squares_zero and self.augmentation_ok and self.homology == [1, 0, 0]

    def to_dict(self) -> dict:
        return {"kind": "resolution", "dims": self.dims, "homology": self.homology, "exact": self.exact}


def resolution_differentials(a: Algebra) -> tuple[RationalMatrix, RationalMatrix, RationalMatrix]:
    """(augmentation, d1, d2) for Q <- A+(x)A+ <- A(x)A+ + A+(x)A <- A(x)A <- 0.

    A sits inside A+ = unitalization(a) as the first ``dim`` basis vectors;
    d2(x (x) y) = (x (x) y, -x (x) y), d1(x (x) v, u (x) y) = x (x) v + u (x) y.
    """
    d = a.dim
    p = d + 1                       # dim A+
    unit = d                        # index of the adjoined unit
    r0 = p * p
    r1a = d * p                     # A (x) A+
    r1 = 2 * r1a                    # A (x) A+  then  A+ (x) A
    r2 = d * d
    aug = RationalMatrix(1, r0, {0: {unit * p + unit: 1}})
    d1: dict = {}
    for x in range(d):
        for v in range(p):
            d1.setdefault(x * p + v, {})[x * p + v] = 1
    for u in range(p):
        for y in range(d):
            d1.setdefault(u * p + y, {})[r1a + u * d + y] = 1
    d2: dict = {}
    for x in range(d):
        for y in range(d):
            col = x * d + y
            d2.setdefault(x * p + y, {})[col] = 1
            d2.setdefault(r1a + x * d + y, {})[col] = -1
    return aug, RationalMatrix(r0, r1, d1), RationalMatrix(r1, r2, d2)


def resolution_of_unitalization(a: Algebra) -> ResolutionReport:
    """Build the length-2 complex for A+ and check that it resolves Q."""
    aug, d1, d2 = resolution_differentials(a)
    squares = (d1 @ d2).is_zero() and (aug @ d1).is_zero()
    r1, r2 = rank(d1), rank(d2)
    homology = [d1.rows - r1, d1.cols - r1 - r2, d2.cols - r2]
    aug_ok = rank(aug) == 1 and d1.rows - 1 == r1
    return ResolutionReport([d1.rows, d1.cols, d2.cols], homology, aug_ok, squares)


# ------------------------------------------------------- adjoint projection

def adjoint_projection(a: Algebra, blocks: BlockDecomposition) -> RationalMatrix:
    """P(e_jk) = delta_jk / n * (identity of the block), per block."""
    blocks.check(a)
    data: dict = {}
    for b, n in enumerate(blocks.block_sizes):
        ident = blocks.block_identity(b)
        for j in range(n):
            col = blocks.index(b, j, j)
            for r in ident:
                data.setdefault(r, {})[col] = Fraction(1, n)
    return RationalMatrix(a.dim, a.dim, data)


@dataclass
class ProjectionReport:
    idempotent: bool
    image_dim: int
    blocks: int
    kills_commutators: bool
    fixes_image: bool
    commutator_quotient_dim: int = field(default=0)

    @property
    def ok(self) -> bool:
        return (self.idempotent and self.kills_commutators and self.fixes_image
                and self.image_dim == self.blocks == self.commutator_quotient_dim)

    def to_dict(self) -> dict:
        return {"kind": "adjoint-projection", "ok": self.ok, "image_dim": self.image_dim, "blocks": self.blocks}


def check_adjoint_projection(a: Algebra, blocks: BlockDecomposition) -> ProjectionReport:
    P = adjoint_projection(a, blocks)
    idem = P @ P == P
    img = rank(P)
    kills = True
    for i in range(a.dim):
        for j in range(a.dim):
            c = dict(a.basis_product(i, j))
            add_into(c, a.basis_product(j, i), -1)
            if P.apply(c):
                kills = False
                break
        if not kills:
            break
    fixes = all(P.apply(blocks.block_identity(b)) == blocks.block_identity(b)
                for b in range(len(blocks.block_sizes)))
    return ProjectionReport(idem, img, len(blocks.block_sizes), kills, fixes, commutator_quotient_dim(a))


def morita_check(n: int, cutoff: int, **kw) -> tuple[list[int], list[int]]:
    """HH of M_n next to HH of the ground field."""
    from .algebra import field as ground_field, matrix_algebra
    return hh_dims(matrix_algebra(n), cutoff, **kw).dims, hh_dims(ground_field(), cutoff, **kw).dims
