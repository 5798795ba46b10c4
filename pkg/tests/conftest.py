import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from minkconic.core import ParamLine, Point  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
points = st.builds(Point, rationals, rationals)
nonzero_rationals = rationals.filter(lambda v: v != 0)


@st.composite
def lines(draw, allow_null=False):
    a = draw(rationals)
    c = draw(rationals.filter(lambda v: allow_null or v * v != a * a))
    if a == 0 and c == 0:
        c = Fraction(1)
    return ParamLine(a, draw(rationals), c, draw(rationals))
