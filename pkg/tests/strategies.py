"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from cyclic_workbench.linalg import RationalMatrix

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
sparse_rationals = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small_rationals)


@st.composite
def matrices(draw, max_rows=7, max_cols=7, entries=sparse_rationals, shape=None):
    r, c = shape or (draw(st.integers(0, max_rows)), draw(st.integers(0, max_cols)))
    rows = [[draw(entries) for _ in range(c)] for _ in range(r)]
    return RationalMatrix(r, c, {i: dict(enumerate(row)) for i, row in enumerate(rows)})


@st.composite
def invertible_matrices(draw, n):
    """Unit lower times unit upper triangular: always invertible."""
    lo = [[Fraction(1) if i == j else (draw(small_rationals) if j < i else Fraction(0)) for j in range(n)]
          for i in range(n)]
    up = [[Fraction(1) if i == j else (draw(small_rationals) if j > i else Fraction(0)) for j in range(n)]
          for i in range(n)]
    return RationalMatrix.from_dense(lo) @ RationalMatrix.from_dense(up)


def change_basis(a, p):
    """The algebra ``a`` written in the basis c_i = sum_k p[k][i] b_k."""
    from cyclic_workbench.algebra import Algebra, add_into
    from cyclic_workbench.linalg import solve
    d = a.dim
    cols = [{k: p[k][i] for k in range(d) if p[k][i]} for i in range(d)]

    def to_new(vec):
        m = RationalMatrix.from_columns(d, cols)
        return solve(m, vec)

    table = {}
    for i in range(d):
        for j in range(d):
            prod = {}
            for k, u in cols[i].items():
                for l, w in cols[j].items():
                    add_into(prod, a.basis_product(k, l), u * w)
            if prod:
                table[(i, j)] = to_new(prod)
    unit = to_new(a.unit) if a.unit is not None else None
    return Algebra(d, table, unit=unit)
