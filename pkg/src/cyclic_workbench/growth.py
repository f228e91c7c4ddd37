"""Growth classes of sequences on the irreducible representations.

Sequences come from the family

    a_n = p(n)/q(n) * r**n * (n!)**s        (n = 0, 1, 2, ...)

with finitely many indices overridden.  Membership in each class is decided
symbolically from (p, q, r, s):

    FinitelySupported      only finitely many nonzero terms
    DimWeightedSummable    sum |a_n| w(n) < oo, w = 1 or w(n) = n + 1
    PolynomialGrowth       |a_n| <= C (1 + n)**k for some k
    FinGenSubgroupEntries  all a_n in one finitely generated subgroup of Q
    Arbitrary              every sequence

Order: FS < DWS < PG < Arbitrary and FS < FinGen < Arbitrary; FinGen is
incomparable with DWS and PG.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Mapping

import sympy

_n = sympy.Symbol("n", integer=True, nonnegative=True)


class NonCanonical(ValueError):
    pass


class NotComparable(ValueError):
    pass


class SequenceSyntaxError(ValueError):
    pass


class GrowthClass(enum.Enum):
    FinitelySupported = "FinitelySupported"
    PolynomialGrowth = "PolynomialGrowth"
    DimWeightedSummable = "DimWeightedSummable"
    FinGenSubgroupEntries = "FinGenSubgroupEntries"
    Arbitrary = "Arbitrary"


FS = GrowthClass.FinitelySupported
PG = GrowthClass.PolynomialGrowth
DWS = GrowthClass.DimWeightedSummable
FG = GrowthClass.FinGenSubgroupEntries
ARB = GrowthClass.Arbitrary

# covering relations of the lattice
_COVERS = {FS: {DWS, FG}, DWS: {PG}, PG: {ARB}, FG: {ARB}, ARB: set()}


def below(lower: GrowthClass, upper: GrowthClass) -> bool:
    """lower is contained in upper (reflexive)."""
    if lower == upper:
        return True
    return any(below(c, upper) for c in _COVERS[lower])


def _poly(coeffs) -> sympy.Poly:
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])) or [0],
                      _n, domain="QQ")


def _coeffs(poly: sympy.Poly) -> tuple[Fraction, ...]:
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _eval(coeffs, x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class GrowthSequence:
    """``p``, ``q``: coefficient tuples, constant term first."""

    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...] = (Fraction(1),)
    r: Fraction = Fraction(1)
    s: int = 0
    overrides: tuple[tuple[int, Fraction], ...] = ()
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.r < 0:
            raise NonCanonical("r must be nonnegative")
        if not self.q or self.q[-1] != 1:
            raise NonCanonical("q must be monic")
        P, Q = _poly(self.p), _poly(self.q)
        if P.is_zero:
            if self.q != (Fraction(1),):
                raise NonCanonical("zero family must have q = 1")
        elif sympy.gcd(P, Q).degree() > 0:
            raise NonCanonical("p and q share a factor")
        if self.p == (Fraction(0),) and (self.r != 1 or self.s != 0):
            raise NonCanonical("zero family must have r = 1, s = 0")
        for root in sympy.roots(Q, filter="Z"):
            if root >= 0:
                raise NonCanonical(f"q vanishes at n = {root}")
        idx = [i for i, _ in self.overrides]
        if len(set(idx)) != len(idx) or any(i < 0 for i in idx) or idx != sorted(idx):
            raise NonCanonical("overrides must be sorted distinct nonnegative indices")

    # -- construction ------------------------------------------------------
    @classmethod
    def make(cls, p, q=(1,), r=1, s: int = 0, overrides: Mapping[int, object] | None = None,
             text: str = "") -> "GrowthSequence":
        """Canonicalize (cancel p/q, make q monic) and build."""
        P = _poly([Fraction(c) for c in p])
        Q = _poly([Fraction(c) for c in q])
        if Q.is_zero:
            raise NonCanonical("q is zero")
        r = Fraction(r)
        if P.is_zero or r == 0:
            fam_p, fam_q, fam_r, fam_s = (Fraction(0),), (Fraction(1),), Fraction(1), 0
            extra = {}
            if r == 0 and not P.is_zero:
                # 0**0 = 1 keeps the n = 0 term
                extra[0] = _eval(_coeffs(P), 0) / _eval(_coeffs(Q), 0)
        else:
            g = sympy.gcd(P, Q)
            P, Q = P.quo(g), Q.quo(g)
            lc = Q.LC()
            P, Q = P * (1 / lc), Q * (1 / lc)
            fam_p, fam_q, fam_r, fam_s = _coeffs(P), _coeffs(Q), r, int(s)
            extra = {}
        ov = dict(extra)
        for k, v in (overrides or {}).items():
            ov[int(k)] = Fraction(v)
        return cls(fam_p, fam_q, fam_r, fam_s, tuple(sorted(ov.items())), text)

    @classmethod
    def parse(cls, text: str, overrides: Mapping[int, object] | str | None = None) -> "GrowthSequence":
        """Read ``p(n)/q(n) * r^n * fact(n)^s``; any factor may be omitted."""
        if isinstance(overrides, str):
            overrides = parse_overrides(overrides)
        src = text.strip().replace("^", "**")
        src = re.sub(r"\bn!", "fact(n)", src)
        try:
            expr = sympy.sympify(src, locals={"n": _n, "fact": sympy.factorial, "factorial": sympy.factorial},
                                 rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise SequenceSyntaxError(f"cannot parse {text!r}: {exc}") from None
        if expr.free_symbols - {_n}:
            raise SequenceSyntaxError(f"only the variable n is allowed in {text!r}")
        r = sympy.Integer(1)
        s = 0
        rest = sympy.Integer(1)
        for fac in sympy.Mul.make_args(sympy.powsimp(expr, force=True)):
            base, exp = fac.as_base_exp()
            if isinstance(base, sympy.factorial) and base.args[0] == _n and exp.is_Integer:
                s += int(exp)
            elif base.is_Rational and exp.has(_n):
                k = sympy.Poly(exp, _n)
                if k.degree() != 1 or k.nth(0) != 0 or not k.nth(1).is_Integer:
                    raise SequenceSyntaxError(f"exponential factor {fac} is not of the form r^n")
                r *= base ** k.nth(1)
            elif fac.is_Pow and fac.base.is_Rational and fac.exp == _n:
                r *= fac.base
            else:
                rest *= fac
        num, den = sympy.fraction(sympy.cancel(sympy.together(rest)))
        try:
            P, Q = sympy.Poly(num, _n, domain="QQ"), sympy.Poly(den, _n, domain="QQ")
        except sympy.PolynomialError:
            raise SequenceSyntaxError(f"{text!r} is not a rational function times r^n times fact(n)^s") from None
        if not r.is_Rational or r < 0:
            raise SequenceSyntaxError("r must be a nonnegative rational")
        return cls.make(_coeffs(P), _coeffs(Q), Fraction(int(r.p), int(r.q)), s, overrides, text)

    # -- values ------------------------------------------------------------
    @property
    def family_is_zero(self) -> bool:
        return self.p == (Fraction(0),)

    def family_term(self, n: int) -> Fraction:
        if self.family_is_zero:
            return Fraction(0)
        f = factorial(n)
        val = _eval(self.p, n) / _eval(self.q, n) * self.r ** n
        return val * f ** self.s if self.s >= 0 else val / f ** (-self.s)

    def term(self, n: int) -> Fraction:
        for k, v in self.overrides:
            if k == n:
                return v
        return self.family_term(n)

    def __str__(self) -> str:
        return self.text or f"GrowthSequence(p={self.p}, q={self.q}, r={self.r}, s={self.s})"


def parse_overrides(text: str) -> dict[int, Fraction]:
    """``"0:1, 3:-2/5"`` -> {0: 1, 3: -2/5}."""
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        try:
            k, v = part.split(":")
            out[int(k)] = Fraction(v.strip())
        except ValueError:
            raise SequenceSyntaxError(f"bad override {part!r}; expected index:value") from None
    return out


# --------------------------------------------------------------- decisions

def _deg(coeffs) -> int:
    return len(coeffs) - 1


def _newton_coefficients(coeffs) -> list[Fraction]:
    """Coefficients of h in the basis binom(n, k)."""
    d = _deg(coeffs)
    vals = [_eval(coeffs, k) for k in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return out


def entry_denominator(seq: GrowthSequence) -> int | None:
    """D with every term in (1/D)Z, when the family is a polynomial times r**n (n!)**s.

    Polynomial values lie in (1/D)Z for D the lcm of the Newton-basis
    denominators; an integer r and s >= 0 only multiply by integers.
    """
    if seq.q != (Fraction(1),) or seq.r.denominator != 1 or seq.s < 0:
        return None
    den = 1
    for c in _newton_coefficients(seq.p):
        den = lcm(den, c.denominator)
    for _, v in seq.overrides:
        den = lcm(den, v.denominator)
    return den


def decide_fingen(seq: GrowthSequence) -> bool | None:
    """True/False when decidable, None when undecided.

    A subgroup of Q is finitely generated iff it is cyclic, i.e. iff the
    denominators of its elements are bounded.
    """
    if seq.family_is_zero or entry_denominator(seq) is not None:
        return True
    if seq.s == 0 and seq.r.denominator != 1:
        return False     # denominators grow like denominator(r)**n
    if seq.s == 0 and seq.r == 1:
        return False     # proper rational part tends to 0 without vanishing
    return None


def _weight_degree(weight) -> int:
    if weight in (1, "1"):
        return 0
    if weight in ("n", "dim"):
        return 1
    raise ValueError(f"weight must be 1 or 'n', got {weight!r}")


def decide(seq: GrowthSequence, cls: GrowthClass, weight=1) -> bool | None:
    w = _weight_degree(weight)
    if cls is ARB:
        return True
    if cls is FG:
        return decide_fingen(seq)
    if seq.family_is_zero:
        return True
    if cls is FS:
        return False
    r, s = seq.r, seq.s
    dp, dq = _deg(seq.p), _deg(seq.q)
    if cls is PG:
        if s != 0:
            return s < 0
        return r <= 1
    if cls is DWS:
        if s != 0:
            return s < 0
        if r != 1:
            return r < 1
        return dq - dp - w >= 2
    raise ValueError(cls)


def classify(seq: GrowthSequence, weight=1) -> dict[GrowthClass, bool | None]:
    """Membership of ``seq`` in every class (None = undecided)."""
    if not isinstance(seq, GrowthSequence):
        raise NonCanonical("classify expects a GrowthSequence")
    return {c: decide(seq, c, weight) for c in GrowthClass}


# --------------------------------------------------------------- witnesses

def _witness_table(weight) -> dict[tuple[GrowthClass, GrowthClass], GrowthSequence]:
    """(member of, not member of) -> sequence."""
    w = _weight_degree(weight)
    ones = GrowthSequence.make([1], text="1")
    decay = GrowthSequence.parse(f"1/(n+1)^{2 + w}")
    harmonic = GrowthSequence.parse("1/(n+1)")
    expo = GrowthSequence.parse("2^n")
    return {
        (PG, FS): ones, (DWS, FS): decay, (FG, FS): ones, (ARB, FS): ones,
        (PG, DWS): ones, (ARB, DWS): ones, (ARB, PG): expo,
        (ARB, FG): harmonic, (FG, DWS): ones, (FG, PG): expo,
        (DWS, FG): decay, (PG, FG): harmonic,
    }


def separation_witness(member: GrowthClass, non_member: GrowthClass, weight=1) -> GrowthSequence:
    """A sequence in ``member`` but not in ``non_member``."""
    if below(member, non_member):
        raise NotComparable(f"{member.value} is contained in {non_member.value}; no separating sequence")
    seq = _witness_table(weight)[(member, non_member)]
    table = classify(seq, weight)
    assert table[member] is True and table[non_member] is False
    return seq


def inclusion_witness(lower: GrowthClass, upper: GrowthClass, weight=1) -> GrowthSequence:
    """A sequence in ``upper`` but not ``lower`` for a strict inclusion."""
    if lower == upper or not below(lower, upper):
        raise NotComparable(f"{lower.value} is not strictly below {upper.value}")
    return separation_witness(upper, lower, weight)


def strict_inclusions() -> list[tuple[GrowthClass, GrowthClass]]:
    return [(lo, up) for lo in GrowthClass for up in GrowthClass if lo != up and below(lo, up)]


# ------------------------------------------------------ limits vs products

@dataclass
class LimProdCertificate:
    """Staircase system X_{j,m} = Q for m >= j, else 0 (coordinates j >= 1).

    ``available_at[j-1]`` is the stage at which coordinate j of the product of
    colimits becomes nonzero, so the all-ones vector lies in prod_j colim_m.
    ``support_bounds[m-1]`` is the largest coordinate supported by the stage-m
    group prod_j X_{j,m}; ``first_missing[m-1]`` is the coordinate the all-ones
    vector needs but stage m cannot supply.
    """

    k: int
    available_at: list[int]
    support_bounds: list[int]
    first_missing: list[int]

    @property
    def obstructed(self) -> bool:
        return all(b < miss for b, miss in zip(self.support_bounds, self.first_missing))

    def to_dict(self) -> dict:
        return {"kind": "lim-prod", "k": self.k, "available_at": self.available_at,
                "support_bounds": self.support_bounds, "first_missing": self.first_missing,
                "all_ones_in_product_of_colimits": True, "all_ones_in_colimit_of_products": False,
                "obstructed": self.obstructed}


def lim_prod_demo(k: int) -> LimProdCertificate:
    if k < 1:
        raise ValueError("k must be >= 1")

    def X(j: int, m: int) -> int:
        return 1 if m >= j else 0

    coords = range(1, k + 2)
    available = [min(m for m in range(1, k + 2) if X(j, m)) for j in coords]
    bounds = [max(j for j in coords if X(j, m)) for m in range(1, k + 1)]
    missing = [min(j for j in coords if not X(j, m)) for m in range(1, k + 1)]
    return LimProdCertificate(k, available, bounds, missing)
