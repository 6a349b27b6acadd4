"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from obtuse.core import DegenerateBasis, LatticeBasis


@st.composite
def bases(draw, min_n=1, max_n=5, bound=20, extra_dims=0):
    n = draw(st.integers(min_n, max_n))
    m = n + draw(st.integers(0, extra_dims))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=m, max_size=m),
                         min_size=n, max_size=n))
    try:
        return LatticeBasis(rows)
    except DegenerateBasis:
        # fall back to a lower-triangular basis with nonzero diagonal
        for i in range(n):
            rows[i][i + 1:n] = [0] * (n - i - 1)
            rows[i][i] = rows[i][i] or 1
        return LatticeBasis(rows)
