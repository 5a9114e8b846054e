"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from homalg.exactlin import ZZ, Matrix, Zmod

rings = st.one_of(st.just(ZZ), st.sampled_from([2, 3, 4, 6, 8, 9, 12]).map(Zmod))
small_moduli = st.sampled_from([2, 3, 4, 6])


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4, bound=12, ring=ZZ, min_rows=0, min_cols=0):
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(ring, rows, c)


@st.composite
def ring_matrices(draw, max_rows=4, max_cols=4, bound=12):
    ring = draw(rings)
    return draw(int_matrices(max_rows, max_cols, bound, ring))
