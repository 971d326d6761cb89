from fractions import Fraction

from hypothesis import strategies as st

from qes_workbench.polys import Poly2
from qes_workbench.scalars import gauss

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
gaussians = st.builds(gauss, rationals, rationals)


@st.composite
def polys(draw, max_deg: int = 4, coeffs=rationals):
    n = draw(st.integers(0, 6))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_deg))
        b = draw(st.integers(0, max_deg - a))
        terms[(a, b)] = draw(coeffs)
    return Poly2(terms)
