"""Chern character of idempotents and its pairing with traces.

For an idempotent e the even cycle in the normalized (b, B) complex is

    ch_0 = e,    ch_2n = (-1)^n (2n)!/n! (e - 1/2) (x) ebar^(x)2n,

closed in the sense b ch_{2n+2} + B ch_{2n} = 0.  A trace pairs with the
cycle through ch_0 alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Algebra, BlockDecomposition, TraceFunctional, Vector, add_into
from .cyclic import MixedComplex, mixed_complex
from .hochschild import TensorBasis
from .linalg import RationalMatrix


class NotIdempotent(ValueError):
    pass


class NotATrace(ValueError):
    pass


@dataclass
class EvenCycle:
    algebra: Algebra
    idempotent: Vector
    components: list[dict[int, Fraction]]  # components[n] lives in C_{2n}

    @property
    def max_even_degree(self) -> int:
        return 2 * (len(self.components) - 1)

    def closedness_defects(self, mc: MixedComplex) -> list[dict[int, Fraction]]:
        """[b ch_0] followed by b ch_{2n+2} + B ch_{2n}; all empty iff closed."""
        out = [mc.b_map(0).apply(self.components[0])]
        for n in range(len(self.components) - 1):
            v = mc.b_map(2 * n + 2).apply(self.components[n + 1])
            add_into(v, mc.B_map(2 * n).apply(self.components[n]))
            out.append(v)
        return out

    def is_closed(self, mc: MixedComplex) -> bool:
        return not any(self.closedness_defects(mc))


def chern_coefficient(n: int) -> Fraction:
    return Fraction((-1) ** n * factorial(2 * n), factorial(n))


def chern_character(a: Algebra, e: Vector, max_even_degree: int, *, complex: MixedComplex | None = None,
                    verify: bool = True) -> EvenCycle:
    if a.unit is None:
        raise ValueError("Chern character needs a unital algebra")
    if max_even_degree < 0 or max_even_degree % 2:
        raise ValueError("max_even_degree must be even and >= 0")
    e = {k: Fraction(v) for k, v in e.items() if v}
    if a.mul(e, e) != e:
        raise NotIdempotent("e * e != e")
    tb = TensorBasis(a, True)
    ebar = tb.reduce(e)
    shifted = dict(e)
    add_into(shifted, a.unit, Fraction(-1, 2))
    comps = [dict(e)]
    for n in range(1, max_even_degree // 2 + 1):
        deg = 2 * n
        # (e - 1/2) (x) ebar^(x)deg expanded in the tensor basis
        tails: dict[tuple, Fraction] = {(): Fraction(1)}
        for _ in range(deg):
            nxt: dict[tuple, Fraction] = {}
            for t, v in tails.items():
                for p, w in ebar.items():
                    nxt[t + (p,)] = v * w
            tails = nxt
        c = chern_coefficient(n)
        vec: dict[int, Fraction] = {}
        for a0, v0 in shifted.items():
            for t, v in tails.items():
                add_into(vec, {tb.index(a0, t): c * v0 * v})
        comps.append(vec)
    cycle = EvenCycle(a, e, comps)
    if verify:
        mc = complex or mixed_complex(a, max_even_degree, verify=False)
        if not cycle.is_closed(mc):
            raise ArithmeticError("Chern character failed the closedness identities")
    return cycle


def pair(tau: TraceFunctional, c: EvenCycle) -> Fraction:
    """tau paired with the cycle: tau(ch_0)."""
    if len(tau.coefficients) != c.algebra.dim:
        raise NotATrace("functional has the wrong length for this algebra")
    if not tau.is_trace(c.algebra):
        raise NotATrace("functional is not a trace: tau(ab) != tau(ba) for some basis pair")
    return tau(c.components[0])


def normalized_block_trace(blocks: BlockDecomposition, block: int) -> TraceFunctional:
    """Matrix trace on one block, zero on the others."""
    coeffs = [Fraction(0)] * blocks.total_dim
    for i in range(blocks.block_sizes[block]):
        coeffs[blocks.index(block, i, i)] = Fraction(1)
    return TraceFunctional(tuple(coeffs))


def chern_matrix(a: Algebra, blocks: BlockDecomposition, max_even_degree: int = 0) -> RationalMatrix:
    """Pairings <tau_i, ch(e_j)> of normalized block traces with minimal idempotents."""
    blocks.check(a)
    k = len(blocks.block_sizes)
    mc = mixed_complex(a, max_even_degree, verify=False) if max_even_degree else None
    cycles = [chern_character(a, blocks.minimal_idempotent(j), max_even_degree, complex=mc) for j in range(k)]
    traces = [normalized_block_trace(blocks, i) for i in range(k)]
    return RationalMatrix.from_dense([[pair(t, c) for c in cycles] for t in traces])
