"""Independent reference computations used to freeze golden values.

Nothing here imports the package's complexes or rank routines; only the
algebra's multiplication table is shared.  Chains are unnormalized
(A^(x)(n+1)), ranks come from sympy's DomainMatrix over QQ, and cyclic
homology is computed two ways:

* Connes' quotient complex C^lambda_n = A^(x)(n+1) / (1 - t), which
  computes HC over Q;
* the unnormalized (b, B) bicomplex with B = (1 - t) s N, from which the
  rank of S^k on homology is read via explicit cycle bases.
"""
from __future__ import annotations

import itertools

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _q(x):
    return QQ(x.numerator, x.denominator)


def _idx(t, d):
    r = 0
    for x in t:
        r = r * d + x
    return r


def _tuples(d, n):
    return itertools.product(range(d), repeat=n)


def _add(col, k, v):
    col[k] = col.get(k, QQ(0)) + v
    if col[k] == 0:
        del col[k]


def matrix(rows, cols, columns):
    """Sparse DomainMatrix from a list of column dicts."""
    data = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                data.setdefault(i, {})[j] = v
    return DomainMatrix(data, (rows, cols), QQ)


def rank(m):
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return m.rank()


def bar_b(a, n):
    """b: A^(x)(n+1) -> A^(x)n, unnormalized."""
    d = a.dim
    prod = {(i, j): {k: _q(v) for k, v in a.basis_product(i, j).items()} for i in range(d) for j in range(d)}
    cols = []
    for t in _tuples(d, n + 1):
        col = {}
        for i in range(n):
            sign = QQ(-1) ** i
            for k, v in prod[(t[i], t[i + 1])].items():
                _add(col, _idx(t[:i] + (k,) + t[i + 2:], d), sign * v)
        sign = QQ(-1) ** n
        for k, v in prod[(t[n], t[0])].items():
            _add(col, _idx((k,) + t[1:n], d), sign * v)
        cols.append(col)
    return matrix(d ** n, d ** (n + 1), cols)


def hh(a, cutoff):
    """HH_0..HH_cutoff from the unnormalized bar complex."""
    d = a.dim
    ranks = {n: rank(bar_b(a, n)) for n in range(1, cutoff + 2)}
    return [d ** (n + 1) - ranks.get(n, 0) - ranks[n + 1] for n in range(cutoff + 1)]


def _t(d, n, t):
    """Signed cyclic operator on one tuple: (-1)^n (a_n, a_0, .., a_{n-1})."""
    return (t[-1],) + t[:-1], QQ(-1) ** n


def one_minus_t(d, n):
    cols = []
    for t in _tuples(d, n + 1):
        col = {_idx(t, d): QQ(1)}
        u, s = _t(d, n, t)
        _add(col, _idx(u, d), -s)
        cols.append(col)
    return matrix(d ** (n + 1), d ** (n + 1), cols)


def hc_connes(a, cutoff):
    """HC_0..HC_cutoff as homology of C / (1 - t)."""
    d = a.dim
    W = {n: one_minus_t(d, n) for n in range(cutoff + 2)}
    rW = {n: rank(W[n]) for n in W}

    def induced(n):
        # rank of b_n: C_n/W_n -> C_{n-1}/W_{n-1}
        b = bar_b(a, n)
        return rank(b.hstack(W[n - 1])) - rW[n - 1]

    r = {n: induced(n) for n in range(1, cutoff + 2)}
    return [d ** (n + 1) - rW[n] - r.get(n, 0) - r[n + 1] for n in range(cutoff + 1)]


def connes_B(a, n):
    """B = (1 - t) s N: A^(x)(n+1) -> A^(x)(n+2), with s inserting the unit in front."""
    d = a.dim
    unit = {k: _q(v) for k, v in a.unit.items()}
    cols = []
    for t0 in _tuples(d, n + 1):
        col = {}
        cur, sgn = t0, QQ(1)
        for _ in range(n + 1):            # N = sum of t^i
            for k, u in unit.items():     # s
                st = (k,) + cur
                _add(col, _idx(st, d), sgn * u)
                v, s2 = _t(d, n + 1, st)  # - t on degree n+1
                _add(col, _idx(v, d), -sgn * u * s2)
            cur, s = _t(d, n, cur)
            sgn = sgn * s
        cols.append(col)
    return matrix(d ** (n + 2), d ** (n + 1), cols)


class Bicomplex:
    """Unnormalized (b, B) total complex Tot_n = C_n + C_{n-2} + ..."""

    def __init__(self, a, top):
        self.a, self.top, self.d = a, top, a.dim
        self.b = {n: bar_b(a, n) for n in range(1, top + 1)}
        self.B = {n: connes_B(a, n) for n in range(top)}

    def parts(self, n):
        return [n - 2 * k for k in range((n // 2) + 1)]

    def size(self, n):
        return sum(self.d ** (m + 1) for m in self.parts(n)) if n >= 0 else 0

    def D(self, n):
        """D: Tot_n -> Tot_{n-1} as a dense DomainMatrix."""
        rows, cols = self.size(n - 1), self.size(n)
        out = DomainMatrix.zeros((rows, cols), QQ).to_sparse()
        if rows == 0:
            return out
        src = self.parts(n)
        dst = self.parts(n - 1)
        roff = {m: sum(self.d ** (x + 1) for x in dst[:i]) for i, m in enumerate(dst)}
        coff = {m: sum(self.d ** (x + 1) for x in src[:i]) for i, m in enumerate(src)}
        data = {}
        for m in src:
            if m >= 1:                       # b: C_m -> C_{m-1}
                for i, row in self.b[m].to_sdm().items():
                    for j, v in row.items():
                        data.setdefault(roff[m - 1] + i, {})[coff[m] + j] = v
            if m + 1 in roff:                # B: C_m -> C_{m+1}
                for i, row in self.B[m].to_sdm().items():
                    for j, v in row.items():
                        data.setdefault(roff[m + 1] + i, {})[coff[m] + j] = v
        return DomainMatrix(data, (rows, cols), QQ)

    def hc(self, n):
        return self.size(n) - rank(self.D(n)) - rank(self.D(n + 1))

    def S_power_image_rank(self, base, k):
        """rank of S^k: HC_{base+2k} -> HC_base via explicit cycles."""
        top = base + 2 * k
        n_top, n_base = self.size(top), self.size(base)
        D = self.D(top).to_dense()
        Z = D.nullspace().to_sdm() if D.shape[0] else {i: {i: QQ(1)} for i in range(n_top)}
        off = n_top - n_base                     # S^k keeps the trailing Tot_base
        cols = [{j - off: v for j, v in row.items() if j >= off} for row in Z.values()]
        images = matrix(n_base, len(cols), cols)
        bound = self.D(base + 1)
        return rank(bound.hstack(images)) - rank(bound)


def hp_oracle(a, k):
    """(rank S^k: HC_2k -> HC_0, rank S^k: HC_{2k+1} -> HC_1)."""
    bc = Bicomplex(a, 2 * k + 2)
    return bc.S_power_image_rank(0, k), bc.S_power_image_rank(1, k)


# ---------------------------------------------------------------- growth

def _log_abs(x):
    """log |x| for a nonzero Fraction of any size."""
    import math
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def numeric_polynomial_growth(seq, n_max=1000):
    """Bounded log|a_n| / log n on [n_max/2, n_max], and not drifting upward."""
    import math

    def exponent(lo, hi):
        vals = [_log_abs(seq.term(n)) / math.log(n) for n in range(lo, hi) if seq.term(n)]
        return max(vals) if vals else float("-inf")

    k1, k2 = exponent(n_max // 4, n_max // 2), exponent(n_max // 2, n_max + 1)
    if k2 == float("-inf"):
        return True
    return k2 < 40 and k2 - k1 < 1


def numeric_summable(seq, weight=1, n_max=1000):
    """Compare the weighted tails over [N/4, N/2) and [N/2, N]; convergent
    tails of the family shrink by at least half, divergent ones do not."""
    import math

    def w(n):
        return 1 if weight == 1 else n + 1

    def tail(lo, hi):
        logs = [_log_abs(seq.term(n)) + math.log(w(n)) for n in range(lo, hi) if seq.term(n)]
        if not logs:
            return float("-inf")
        top = max(logs)
        return top + math.log(sum(math.exp(x - top) for x in logs))

    t1, t2 = tail(n_max // 4, n_max // 2), tail(n_max // 2, n_max + 1)
    if t2 == float("-inf"):
        return True
    return t2 - t1 < math.log(0.75)


def numeric_bounded_denominators(seq, n_max=1000):
    """Entries up to n_max/2 and up to n_max need the same common denominator."""
    import math

    def den(hi):
        d = 1
        for n in range(hi):
            d = math.lcm(d, seq.term(n).denominator)
        return d

    return den(n_max // 2) == den(n_max + 1)
