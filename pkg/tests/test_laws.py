from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadcolor.errors import InputError, PreconditionError, StructureError, UnsupportedError
from roadcolor.laws import (
    ColoredLaw,
    ProbabilityLawSigma,
    ProbabilityLawV,
    check_uniformity,
    convolve_sigma,
    convolve_sigma_v,
    cyclic_parts,
    law_power,
    periodic_strongness,
    pf_max_deviation,
    stationary_law,
    transition_matrix,
)
from roadcolor.mapping import Mapping, RoadColoring, compose
from roadcolor.sync import shortest_synchronizing_word

from conftest import (
    five_site_coloring,
    law,
    periodic_collapsing,
    periodic_rotations,
    rotation_coloring,
    three_site_coloring,
)
from oracles import exact_stationary_by_sympy, stationary_by_power

PROBS = [F(1, 4), F(1, 3), F(1, 2), F(2, 3)]


def three_site_formula(p):
    q = 1 - p
    den = 2 + p * q
    return (1 - p * q) / den, (q + p * q) / den, (p + p * q) / den


def five_site_formula(p):
    den = 3 * (1 + p)
    return p / den, 1 / den, p / den, 1 / den, (1 + p) / den


@pytest.mark.parametrize("p", PROBS)
def test_three_site_stationary_law(p):
    cl = law(three_site_coloring(), p, 1 - p)
    assert stationary_law(cl.mu).weights == three_site_formula(p)


def test_three_site_named_values():
    assert stationary_law(law(three_site_coloring(), F(1, 3), F(2, 3)).mu).weights == (
        F(7, 20), F(2, 5), F(1, 4))
    assert stationary_law(law(three_site_coloring()).mu).weights == (F(1, 3),) * 3


@pytest.mark.parametrize("p", PROBS)
def test_five_site_stationary_law(p):
    cl = law(five_site_coloring(), p, 1 - p)
    assert stationary_law(cl.mu).weights == five_site_formula(p)


def test_five_site_half():
    lam = stationary_law(law(five_site_coloring()).mu)
    assert lam.weights == (F(1, 9), F(2, 9), F(1, 9), F(2, 9), F(1, 3))


def test_rotations_are_uniform():
    for p in PROBS:
        assert stationary_law(law(rotation_coloring(), p, 1 - p).mu).weights == (F(1, 3),) * 3


@pytest.mark.parametrize("p", PROBS)
def test_uniform_over_blocks(p):
    lam = stationary_law(law(five_site_coloring(), p, 1 - p).mu)
    ok, masses = check_uniformity(lam, [{1, 2}, {3, 4}, {5}])
    assert ok and masses == (F(1, 3),) * 3
    ok, _ = check_uniformity(lam, [{1, 4}, {5}, {2, 3}])
    assert ok


def test_uniformity_fails_on_a_non_partition():
    lam = ProbabilityLawV.uniform(3)
    with pytest.raises(PreconditionError):
        check_uniformity(lam, [{1}, {2}])
    ok, masses = check_uniformity(lam, [{1, 2}, {3}])
    assert not ok and masses == (F(2, 3), F(1, 3))


def test_colored_law_validation():
    C = three_site_coloring()
    with pytest.raises(InputError, match="weight count mismatch"):
        ColoredLaw(C, (F(1),))
    with pytest.raises(InputError):
        ColoredLaw(C, (F(1, 2), F(1, 3)))
    with pytest.raises(InputError):
        ColoredLaw(C, (F(1), F(0)))
    with pytest.raises(InputError):
        ColoredLaw(C, (0.5, 0.5))


def test_equal_colors_merge_in_mu():
    C = RoadColoring.from_images((2, 1), (2, 1), (1, 1))
    mu = ColoredLaw(C, (F(1, 4), F(1, 4), F(1, 2))).mu
    assert mu[Mapping((2, 1))] == F(1, 2)
    assert len(mu.support) == 2


def test_transition_matrix_column_stochastic():
    B = transition_matrix(law(five_site_coloring(), F(1, 3), F(2, 3)).mu)
    for x in range(1, 6):
        assert sum(B(y, x) for y in range(1, 6)) == 1
    assert B(2, 1) == 1


def test_convolution_order():
    s1, s2 = three_site_coloring().colors
    mu = convolve_sigma(ProbabilityLawSigma.point_mass(s1), ProbabilityLawSigma.point_mass(s2))
    assert mu.support == (compose(s1, s2),)


def test_law_power_matches_repeated_convolution():
    mu = law(five_site_coloring(), F(1, 3), F(2, 3)).mu
    assert law_power(mu, 3) == convolve_sigma(mu, convolve_sigma(mu, mu))


def test_convolve_with_site_law_is_matrix_action():
    mu = law(five_site_coloring(), F(1, 3), F(2, 3)).mu
    v = ProbabilityLawV.point_mass(1, 5)
    assert convolve_sigma_v(mu, v) == transition_matrix(mu).apply(v)


def test_stationary_requires_assumption():
    with pytest.raises(StructureError):
        stationary_law(law(periodic_rotations()).mu)
    not_sc = RoadColoring.from_images((1, 1), (1, 2))
    with pytest.raises(StructureError):
        stationary_law(law(not_sc).mu)


@pytest.mark.parametrize(
    "cl",
    [
        law(three_site_coloring(), F(1, 3), F(2, 3)),
        law(rotation_coloring()),
        law(five_site_coloring()),
        law(five_site_coloring(), F(1, 4), F(3, 4)),
    ],
)
def test_power_iteration_agrees(cl):
    lam = stationary_law(cl.mu)
    assert pf_max_deviation(cl.mu, lam) < 1e-9
    v = stationary_by_power([c.image for c in cl.coloring.colors], cl.probs)
    assert np.allclose(v, [float(w) for w in lam.weights], atol=1e-12)


@st.composite
def primitive_laws(draw):
    m = draw(st.integers(2, 5))
    d = draw(st.integers(2, 3))
    images = [tuple(draw(st.integers(1, m)) for _ in range(m)) for _ in range(d)]
    raw = [draw(st.integers(1, 6)) for _ in range(d)]
    probs = tuple(F(r, sum(raw)) for r in raw)
    return images, probs


@settings(max_examples=60, deadline=None)
@given(primitive_laws())
def test_stationary_matches_sympy(data):
    images, probs = data
    cl = ColoredLaw(RoadColoring.from_images(*images), probs)
    try:
        lam = stationary_law(cl.mu)
    except StructureError:
        return
    assert lam.weights == exact_stationary_by_sympy(images, probs)
    assert convolve_sigma_v(cl.mu, lam) == lam


def test_cyclic_parts_of_rotations():
    dec = cyclic_parts(None, law(periodic_rotations()).mu)
    assert dec.d == 2
    assert dec.parts == ((1, 2), (3, 4))
    assert [law_v.weights for law_v in dec.part_laws] == [
        (F(1, 2), F(1, 2), 0, 0), (0, 0, F(1, 2), F(1, 2))]


def _two_step_oracle(images, probs, part):
    m = len(images[0])
    B = np.zeros((m, m))
    for img, p in zip(images, probs):
        for x, y in enumerate(img):
            B[y - 1, x] += float(p)
    B2 = B @ B
    idx = [x - 1 for x in part]
    sub = B2[np.ix_(idx, idx)]
    assert np.allclose(sub.sum(axis=0), 1.0)
    v = np.full(len(idx), 1.0 / len(idx))
    for _ in range(500):
        v = sub @ v
    return v


def test_cyclic_parts_of_collapsing_fixture():
    cl = law(periodic_collapsing(), F(1, 3), F(2, 3))
    dec = cyclic_parts(cl.coloring.graph, cl.mu)
    assert dec.parts == ((1, 2), (3, 4))
    images = [c.image for c in cl.coloring.colors]
    for part, lam in zip(dec.parts, dec.part_laws):
        oracle = _two_step_oracle(images, cl.probs, part)
        assert np.allclose([float(lam[x]) for x in part], oracle, atol=1e-12)
        assert sum(lam[x] for x in part) == 1


def test_periodic_strongness_matches_support_synchronization():
    for make in (periodic_rotations, periodic_collapsing):
        cl = law(make())
        dec = cyclic_parts(None, cl.mu)
        verdicts = periodic_strongness(cl.mu)
        for v, local in zip(verdicts, dec.restricted_laws):
            # Independent route: compose pairs of colors by hand and search.
            images = set()
            for a in cl.coloring.colors:
                for b in cl.coloring.colors:
                    ab = compose(b, a)
                    images.add(tuple(v.part.index(ab(x)) + 1 for x in v.part))
            C = RoadColoring.from_images(*sorted(images))
            assert v.strong == (shortest_synchronizing_word(C) is not None)
    assert [v.strong for v in periodic_strongness(law(periodic_rotations()).mu)] == [False, False]
    assert [v.strong for v in periodic_strongness(law(periodic_collapsing()).mu)] == [True, True]


def test_cyclic_parts_rejects_aperiodic_and_large():
    with pytest.raises(PreconditionError):
        cyclic_parts(None, law(five_site_coloring()).mu)
    big = RoadColoring.from_images(tuple(list(range(2, 11)) + [1]))
    with pytest.raises(UnsupportedError):
        cyclic_parts(None, law(big).mu)


def test_site_law_validation():
    with pytest.raises(InputError):
        ProbabilityLawV((F(1, 2), F(1, 3)))
    with pytest.raises(InputError):
        ProbabilityLawV((F(3, 2), F(-1, 2)))
