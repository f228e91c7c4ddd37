"""Mixed (b, B) complex, cyclic homology and the periodicity operator.

On normalized chains

    B(a0 (x) .. (x) an) = sum_{i=0..n} (-1)^(n i) 1 (x) a_i (x) .. (x) an (x) a0 (x) .. (x) a_{i-1}

The total complex is Tot_n = C_n + C_{n-2} + C_{n-4} + ..., listed with
the C_n column first, and has differential (D x)_k = b x_k + B x_{k+1}.
S: Tot_n -> Tot_{n-2} forgets the C_n column, I: C_n -> Tot_n includes it,
and the connecting map HC_{n-2} -> HH_{n-1} is y -> B y_0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, NotUnital
from .cache import DiffCache
from .hochschild import (ChainComplex, HomologyReport, SizeLimit, SIZE_LIMIT, TensorBasis, differential)
from .linalg import CompositionNonzero, RationalMatrix, _norm, induced_map_rank, rank


def _B_matrix(tb: TensorBasis, n: int) -> RationalMatrix:
    """B: C_n -> C_{n+1} on normalized chains."""
    a = tb.algebra
    unit = {k: _norm(v) for k, v in a.unit.items()}
    m = tb.m
    data: dict[int, dict[int, Fraction]] = {}
    col = 0
    for chain in tb.chains(n):
        a0 = chain[0]
        tail = chain[1:]
        red0 = tb._reduced_basis[a0]
        for p0, w in red0.items():
            seq = (p0,) + tail
            for i in range(n + 1):
                sign = -1 if (n * i) % 2 else 1
                rot = seq[i:] + seq[:i]
                low = 0
                for p in rot:
                    low = low * m + p
                for k, u in unit.items():
                    r = k * m ** (n + 1) + low
                    row = data.setdefault(r, {})
                    s = row.get(col, 0) + sign * w * u
                    if s:
                        row[col] = s
                    else:
                        del row[col]
        col += 1
    return RationalMatrix(tb.size(n + 1), tb.size(n), data)


@dataclass
class MixedComplex:
    """Normalized Hochschild chains with both differentials.

    ``b[n-1]`` is b_n: C_n -> C_{n-1} (n = 1..max_degree) and ``B[n]`` is
    B_n: C_n -> C_{n+1} (n = 0..max_degree-1).
    """

    max_degree: int
    dims: list[int]
    b: list[RationalMatrix]
    B: list[RationalMatrix]
    _tot: dict = field(default_factory=dict, repr=False)
    _ranks: dict = field(default_factory=dict, repr=False)

    def b_map(self, n: int) -> RationalMatrix:
        if 1 <= n <= self.max_degree:
            return self.b[n - 1]
        if n == 0:
            return RationalMatrix.zeros(0, self.dims[0])
        raise IndexError(n)

    def B_map(self, n: int) -> RationalMatrix:
        if 0 <= n < self.max_degree:
            return self.B[n]
        raise IndexError(n)

    def hochschild(self) -> ChainComplex:
        return ChainComplex(self.max_degree, self.dims, self.b, True)

    # -- total complex ----------------------------------------------------
    def tot_parts(self, n: int) -> list[int]:
        """Chain degrees making up Tot_n, in basis order."""
        return list(range(n, -1, -2)) if n >= 0 else []

    def tot_dim(self, n: int) -> int:
        return sum(self.dims[k] for k in self.tot_parts(n))

    def D(self, n: int) -> RationalMatrix:
        """Total differential Tot_n -> Tot_{n-1}."""
        if n in self._tot:
            return self._tot[n]
        if n > self.max_degree:
            raise IndexError(f"Tot_{n} needs chains of degree {n}, complex built to {self.max_degree}")
        src = self.tot_parts(n)
        tgt = self.tot_parts(n - 1)
        blocks = []
        for t in tgt:
            line = []
            for s in src:
                if s == t + 1:
                    line.append(self.b_map(s))
                elif s == t - 1:
                    line.append(self.B_map(s))
                else:
                    line.append(None)
            blocks.append(line)
        if not tgt:
            mat = RationalMatrix.zeros(0, self.tot_dim(n))
        else:
            mat = RationalMatrix.block(blocks, [self.dims[t] for t in tgt], [self.dims[s] for s in src])
        self._tot[n] = mat
        return mat

    def D_top(self, n: int) -> RationalMatrix:
        """D_{n+1}, or the zero map into Tot_n when the complex stops at n."""
        if n + 1 <= self.max_degree:
            return self.D(n + 1)
        return RationalMatrix.zeros(self.tot_dim(n), 0)

    def rank_D(self, n: int) -> int:
        key = ("D", n)
        if key not in self._ranks:
            self._ranks[key] = rank(self.D(n)) if n >= 0 else 0
        return self._ranks[key]

    def rank_b(self, n: int) -> int:
        key = ("b", n)
        if key not in self._ranks:
            self._ranks[key] = rank(self.b_map(n)) if 0 <= n <= self.max_degree else 0
        return self._ranks[key]

    def hc(self, n: int) -> int:
        """dim HC_n, exact for n < max_degree."""
        if n < 0:
            return 0
        return self.tot_dim(n) - self.rank_D(n) - self.rank_D(n + 1)

    def hc_co(self, n: int) -> int:
        if n < 0:
            return 0
        key, key1 = ("DT", n), ("DT", n + 1)
        if key not in self._ranks:
            self._ranks[key] = rank(self.D(n).transpose())
        if key1 not in self._ranks:
            self._ranks[key1] = rank(self.D(n + 1).transpose())
        return self.tot_dim(n) - self._ranks[key] - self._ranks[key1]

    def hh(self, n: int) -> int:
        if n < 0:
            return 0
        return self.dims[n] - self.rank_b(n) - self.rank_b(n + 1)

    # -- SBI maps at chain level ------------------------------------------
    def S(self, n: int) -> RationalMatrix:
        """Tot_n -> Tot_{n-2}: drop the C_n column."""
        if n < 2:
            raise ValueError("S is defined for degree >= 2")
        off = self.dims[n]
        size = self.tot_dim(n - 2)
        return RationalMatrix._trusted(size, self.tot_dim(n), {r: {off + r: 1} for r in range(size)})

    def I(self, n: int) -> RationalMatrix:
        """C_n -> Tot_n: include as the first column."""
        return RationalMatrix._trusted(self.tot_dim(n), self.dims[n], {r: {r: 1} for r in range(self.dims[n])})

    def connecting(self, n: int) -> RationalMatrix:
        """Tot_{n-2} -> C_{n-1}: y -> B(y_0)."""
        Bm = self.B_map(n - 2)
        pad = self.tot_dim(n - 2) - self.dims[n - 2]
        return RationalMatrix.block([[Bm, None]], [self.dims[n - 1]], [self.dims[n - 2], pad])

    def check_identities(self) -> None:
        """Raise unless b^2 = 0, B^2 = 0 and bB + Bb = 0 hold exactly."""
        for n in range(1, self.max_degree):
            if not (self.b[n - 1] @ self.b[n]).is_zero():
                raise CompositionNonzero(f"b_{n} b_{n + 1} != 0")
        for n in range(self.max_degree - 1):
            if not (self.B[n + 1] @ self.B[n]).is_zero():
                raise CompositionNonzero(f"B_{n + 1} B_{n} != 0")
        for n in range(self.max_degree):
            # on C_n: b_{n+1} B_n + B_{n-1} b_n
            lhs = self.b[n] @ self.B[n]
            if n >= 1:
                lhs = lhs + self.B[n - 1] @ self.b[n - 1]
            if not lhs.is_zero():
                raise CompositionNonzero(f"bB + Bb != 0 on C_{n}")

    def check_S_commutes(self, n: int) -> None:
        """S D = D S as maps Tot_n -> Tot_{n-3}."""
        if n < 3:
            return
        if self.S(n - 1) @ self.D(n) != self.D(n - 2) @ self.S(n):
            raise CompositionNonzero(f"S does not commute with the total differential at degree {n}")


def mixed_complex(a: Algebra, max_degree: int, *, force: bool = False, cache: DiffCache | None = None,
                  verify: bool = True) -> MixedComplex:
    if a.unit is None:
        raise NotUnital("mixed complex requires a unital algebra; unitalize first")
    tb = TensorBasis(a, True)
    for n in range(max_degree + 1):
        if tb.size(n) > SIZE_LIMIT and not force:
            raise SizeLimit(n, tb.size(n))
    dims = [tb.size(n) for n in range(max_degree + 1)]
    bs = [differential(a, n, True, cache=cache, force=force, _tb=tb) for n in range(1, max_degree + 1)]
    Bs = []
    for n in range(max_degree):
        hit = cache.get(a.digest(), "B", n, True) if cache is not None else None
        if hit is None:
            hit = _B_matrix(tb, n)
            if cache is not None:
                cache.put(a.digest(), "B", n, True, hit)
        Bs.append(hit)
    mc = MixedComplex(max_degree, dims, bs, Bs)
    if verify:
        mc.check_identities()
    return mc


def _complex_for(a: Algebra, cutoff: int, complex: MixedComplex | None, **kw) -> MixedComplex:
    if complex is not None:
        if complex.max_degree < cutoff + 1:
            raise ValueError(f"mixed complex built to {complex.max_degree}, need {cutoff + 1}")
        return complex
    return mixed_complex(a, cutoff + 1, **kw)


def hc_dims(a: Algebra, cutoff: int, *, complex: MixedComplex | None = None, **kw) -> HomologyReport:
    mc = _complex_for(a, cutoff, complex, **kw)
    return HomologyReport("HC", [mc.hc(n) for n in range(cutoff + 1)], cutoff, [True] * (cutoff + 1))


def hc_cohomology_dims(a: Algebra, cutoff: int, *, complex: MixedComplex | None = None, **kw) -> HomologyReport:
    mc = _complex_for(a, cutoff, complex, **kw)
    return HomologyReport("HC_co", [mc.hc_co(n) for n in range(cutoff + 1)], cutoff, [True] * (cutoff + 1))


def s_map(a: Algebra, n: int, *, complex: MixedComplex | None = None, **kw) -> RationalMatrix:
    """Chain-level periodicity map Tot_n -> Tot_{n-2}, checked against D."""
    if n < 2:
        raise ValueError("S is defined for degree >= 2")
    mc = complex or mixed_complex(a, n, **kw)
    mc.check_S_commutes(n)
    return mc.S(n)


def induced_S_rank(mc: MixedComplex, n: int) -> int:
    """Rank of S: HC_n -> HC_{n-2}."""
    if n < 2:
        return 0
    return induced_map_rank(mc.D(n), mc.S(n), mc.D(n - 1), mc.rank_D(n), mc.rank_D(n - 1))


def induced_I_rank(mc: MixedComplex, n: int) -> int:
    """Rank of I: HH_n -> HC_n."""
    top = mc.rank_D(n + 1) if n + 1 <= mc.max_degree else 0
    return induced_map_rank(mc.b_map(n), mc.I(n), mc.D_top(n), mc.rank_b(n), top)


def induced_connecting_rank(mc: MixedComplex, n: int) -> int:
    """Rank of the connecting map HC_{n-2} -> HH_{n-1}."""
    if n < 2:
        return 0
    return induced_map_rank(mc.D(n - 2), mc.connecting(n), mc.b_map(n), mc.rank_D(n - 2), mc.rank_b(n))


# ------------------------------------------------------------------ certificates

@dataclass
class SBINode:
    group: str          # e.g. "HH_3" or "HC_2"
    incoming: str       # name of the incoming map
    outgoing: str
    rank_in: int
    dim: int
    rank_out: int

    @property
    def kernel_out(self) -> int:
        return self.dim - self.rank_out

    @property
    def exact(self) -> bool:
        return self.rank_in == self.kernel_out

    def to_dict(self) -> dict:
        return {"group": self.group, "in": self.incoming, "out": self.outgoing, "rank_in": self.rank_in,
                "dim": self.dim, "ker_out": self.kernel_out, "exact": self.exact}


@dataclass
class SBICertificate:
    cutoff: int
    nodes: list[SBINode]
    unreliable: list[int]
    hh: list[int]
    hc: list[int]

    @property
    def exact(self) -> bool:
        return all(nd.exact for nd in self.nodes)

    def to_dict(self) -> dict:
        return {"kind": "SBI", "cutoff": self.cutoff, "exact": self.exact, "hh": self.hh, "hc": self.hc,
                "unreliable": self.unreliable, "nodes": [nd.to_dict() for nd in self.nodes]}


def sbi_report(a: Algebra, cutoff: int, *, complex: MixedComplex | None = None, **kw) -> SBICertificate:
    """Ranks of I, S and the connecting map on homology, and exactness of

        ... -> HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} -> ...

    at every node whose incoming and outgoing maps both fall inside the
    computed range (degrees 0..cutoff).
    """
    mc = _complex_for(a, cutoff, complex, **kw)
    hh = [mc.hh(n) for n in range(cutoff + 1)]
    hc = [mc.hc(n) for n in range(cutoff + 1)]
    rI = {n: induced_I_rank(mc, n) for n in range(cutoff + 1)}
    rS = {n: induced_S_rank(mc, n) for n in range(cutoff + 1)}
    # connecting map for n = cutoff + 1 lands in HH_cutoff and leaves HC_{cutoff-1}
    rB = {n: induced_connecting_rank(mc, n) for n in range(1, cutoff + 2)}
    nodes = []
    for m in range(cutoff + 1):
        nodes.append(SBINode(f"HH_{m}", f"B:HC_{m - 1}->HH_{m}", f"I:HH_{m}->HC_{m}",
                             rB[m + 1], hh[m], rI[m]))
        nodes.append(SBINode(f"HC_{m}", f"I:HH_{m}->HC_{m}", f"S:HC_{m}->HC_{m - 2}",
                             rI[m], hc[m], rS[m]))
        if m + 2 <= cutoff:
            nodes.append(SBINode(f"HC_{m}", f"S:HC_{m + 2}->HC_{m}", f"B:HC_{m}->HH_{m + 1}",
                                 rS[m + 2], hc[m], rB[m + 2]))
    return SBICertificate(cutoff, nodes, [], hh, hc)


@dataclass
class StabilizationCertificate:
    """Evidence that S: HC_{n+2} -> HC_n has become an isomorphism.

    ``tested[n]`` is True when the induced S from degree n+2 to n is an
    isomorphism.  The certificate is conclusive at the first pair of
    consecutive degrees (n, n+1) that are both isomorphisms and for which
    the Hochschild window HH_{n+1}, HH_{n+2}, HH_{n+3} satisfies the
    vanishing requirement; HP is then read off from HC_n, HC_{n+1}.
    """

    tested: dict[int, bool]
    hh: list[int]
    hc: list[int]
    hh_window: tuple[int, int] | None
    conclusive: bool
    stable_from: int | None
    hp: tuple[int, int] | None
    require_hh_vanishing: bool = True

    def to_dict(self) -> dict:
        return {"kind": "stabilization", "tested": {str(k): v for k, v in self.tested.items()},
                "hh": self.hh, "hc": self.hc,
                "hh_window": list(self.hh_window) if self.hh_window else None,
                "require_hh_vanishing": self.require_hh_vanishing,
                "conclusive": self.conclusive, "stable_from": self.stable_from,
                "hp": list(self.hp) if self.hp else None}


def _power_S(mc: MixedComplex, top: int, k: int) -> RationalMatrix:
    """S^k: Tot_top -> Tot_{top-2k} as one projection."""
    off = sum(mc.dims[top - 2 * j] for j in range(k))
    size = mc.tot_dim(top - 2 * k)
    return RationalMatrix._trusted(size, mc.tot_dim(top), {r: {off + r: 1} for r in range(size)})


def _S_power_rank(mc: MixedComplex, base: int, k: int, transpose: bool = False) -> int:
    top = base + 2 * k
    f = _power_S(mc, top, k)
    if not transpose:
        return induced_map_rank(mc.D(top), f, mc.D(base + 1), mc.rank_D(top), mc.rank_D(base + 1))
    # cochains: S^T maps Tot^base -> Tot^top; source differential D_{base+1}^T, target incoming D_top^T
    return induced_map_rank(mc.D(base + 1).transpose(), f.transpose(), mc.D(top).transpose())


def stabilization_certificate(mc: MixedComplex, cutoff: int, transpose: bool = False) -> StabilizationCertificate:
    """Decide HP from HC_0..HC_cutoff.

    Two rules, tried in order:

    * isomorphism rule: S: HC_{n+2} -> HC_n and S: HC_{n+3} -> HC_{n+1} are
      isomorphisms and HH vanishes on degrees n+1..n+3 (clipped to the
      cutoff); HP = (HC_n, HC_{n+1}) in the matching parities.
    * stable-image rule: for each parity e the ranks of S^k: HC_{e+2k} -> HC_e
      agree for the two largest k available; HP_e is that rank.  This covers
      non-semisimple inputs, where S is not injective but its image settles.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    hh = [mc.hh(n) for n in range(cutoff + 1)]
    hc = [(mc.hc_co if transpose else mc.hc)(n) for n in range(cutoff + 1)]
    tested = {}
    for n in range(cutoff - 1):
        r = _S_power_rank(mc, n, 1, transpose)
        tested[n] = r == hc[n] == hc[n + 2]
    for n in range(cutoff - 2):
        if tested[n] and tested[n + 1]:
            window = (n + 1, min(n + 3, cutoff))
            if all(hh[m] == 0 for m in range(window[0], window[1] + 1)):
                hp = (hc[n], hc[n + 1]) if n % 2 == 0 else (hc[n + 1], hc[n])
                return StabilizationCertificate(tested, hh, hc, window, True, n, hp)
    # stable-image rule
    hp = []
    for e in (0, 1):
        kmax = (cutoff - e) // 2
        if kmax < 2:
            return StabilizationCertificate(tested, hh, hc, None, False, None, None, False)
        r_prev = _S_power_rank(mc, e, kmax - 1, transpose)
        r_last = _S_power_rank(mc, e, kmax, transpose)
        if r_prev != r_last:
            return StabilizationCertificate(tested, hh, hc, None, False, None, None, False)
        hp.append(r_last)
    return StabilizationCertificate(tested, hh, hc, None, True, 0, (hp[0], hp[1]), False)


def _hp_report(theory: str, cert: StabilizationCertificate, cutoff: int) -> HomologyReport:
    if cert.conclusive:
        dims = [cert.hp[n % 2] for n in range(cutoff + 1)]
        return HomologyReport(theory, dims, cutoff, [True] * (cutoff + 1), True, cert)
    # inconclusive: keep the cyclic dims as partial data, none of them vouched for as HP
    return HomologyReport(theory, list(cert.hc), cutoff, [False] * (cutoff + 1), True, cert)


def hp_dims(a: Algebra, cutoff: int, *, complex: MixedComplex | None = None, **kw) -> HomologyReport:
    """Periodic cyclic homology by S-stabilization; see :func:`stabilization_certificate`."""
    mc = _complex_for(a, cutoff, complex, **kw)
    return _hp_report("HP", stabilization_certificate(mc, cutoff), cutoff)


def hp_cohomology_dims(a: Algebra, cutoff: int, *, complex: MixedComplex | None = None, **kw) -> HomologyReport:
    mc = _complex_for(a, cutoff, complex, **kw)
    return _hp_report("HP_co", stabilization_certificate(mc, cutoff, transpose=True), cutoff)
