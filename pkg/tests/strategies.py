"""Hypothesis strategies shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from gradekit.exactmath import field

CONDUCTORS = [1, 3, 4, 5, 8, 12]

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def scalars(draw, n=None, nonzero=False):
    n = draw(st.sampled_from(CONDUCTORS)) if n is None else n
    fld = field(n)
    coeffs = draw(st.lists(small_q, min_size=fld.degree, max_size=fld.degree))
    x = fld.from_coeffs(coeffs)
    if nonzero and x.is_zero():
        x = x + fld.one
    return x


@st.composite
def scalar_triples(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return tuple(draw(scalars(n)) for _ in range(3))


int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


def vectors(fld, dim, count):
    coeff = st.lists(small_q, min_size=fld.degree, max_size=fld.degree).map(fld.from_coeffs)
    return st.lists(st.lists(coeff, min_size=dim, max_size=dim), min_size=0, max_size=count)


__all__ = ["CONDUCTORS", "Fraction", "int_matrices", "scalar_triples", "scalars", "vectors"]


def random_diagonal_generators(rng, m, conductor=4):
    """One to three commuting diagonal conjugations of sl(m) with small entries."""
    from gradekit.autos import inner_auto
    from gradekit.exactmath import ScalarMatrix
    from gradekit.liealg import make_sl

    L = make_sl(m, conductor)
    fld = L.field
    pool = [Fraction(p, q) for p in range(-4, 5) if p for q in (1, 2, 3)]
    pool += [fld.zeta(k) for k in range(1, conductor)]
    gens = []
    for _ in range(rng.randint(1, 3)):
        A = ScalarMatrix.diag(fld, [rng.choice(pool) for _ in range(m)])
        gens.append(inner_auto(L, A))
    return L, gens


def random_diagonal_gradings(count, seed=2024):
    import random

    from gradekit.gradings import grade_by

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        L, gens = random_diagonal_generators(rng, rng.choice([2, 3, 4]))
        out.append(grade_by(L, gens))
    return out
