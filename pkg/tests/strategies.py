from fractions import Fraction

from hypothesis import strategies as st

from cardbin import Instance


def grid_sizes(max_n=12, top=60, grid=60):
    return st.lists(st.integers(1, top).map(lambda j: Fraction(j, grid)), min_size=1,
                    max_size=max_n)


@st.composite
def instances(draw, ks=(2, 3, 4, 5), max_n=12, top=60):
    k = draw(st.sampled_from(ks))
    return Instance(k, tuple(draw(grid_sizes(max_n, top))))
