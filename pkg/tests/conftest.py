from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def dyadic_rationals(lo=-8, hi=8, depth=5):
    return st.integers(lo << depth, hi << depth).map(lambda n: Fraction(n, 1 << depth))


@st.composite
def step_functions(draw, depth=4, span=2, amplitude=3):
    cells = span << depth
    vals = draw(st.lists(st.integers(-amplitude, amplitude), min_size=cells, max_size=cells))
    from carleson import StepFunction

    cell = Fraction(1, 1 << depth)
    return StepFunction.from_pieces((i * cell, (i + 1) * cell, v) for i, v in enumerate(vals))


@st.composite
def measures(draw, max_atoms=3, max_segments=2):
    from carleson import Atom, Measure, Segment

    atoms = draw(
        st.lists(
            st.tuples(
                st.integers(-32, 32).map(lambda n: Fraction(n, 8)),
                st.integers(1, 32).map(lambda n: Fraction(n, 16)),
                st.integers(1, 8).map(lambda n: Fraction(n, 4)),
            ),
            max_size=max_atoms,
        )
    )
    segs = draw(
        st.lists(
            st.tuples(
                st.integers(-32, 24).map(lambda n: Fraction(n, 8)),
                st.integers(1, 32).map(lambda n: Fraction(n, 8)),
                st.integers(1, 32).map(lambda n: Fraction(n, 16)),
                st.integers(1, 4).map(lambda n: Fraction(n, 2)),
            ),
            min_size=0 if atoms else 1,
            max_size=max_segments,
        )
    )
    return Measure(
        [Atom(*a) for a in atoms],
        [Segment(a, a + w, y, rho) for a, w, y, rho in segs],
    )
