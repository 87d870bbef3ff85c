"""Discriminants, multiplicities, Milnor numbers, and the binomial count law."""

import random
from fractions import Fraction
from math import comb

import pytest

from vancyc.groebner import ResourceLimitExceeded
from vancyc.poly import (
    PolyError,
    format_polynomial,
    normalized,
    parse_polynomial,
    proportional,
    squarefree_part_bivariate,
)
from vancyc.singularity import (
    NonGenericMatrixError,
    NonIsolatedSingularityError,
    action_coordinates_germ,
    al_multiplicity,
    al_multiplicity_by_counting,
    betti_prediction,
    critical_ideal,
    discriminant,
    jacobian,
    milnor_number,
    multiplicity_at_origin,
)
from vancyc.groebner import radical_membership
from vancyc.suite import AL_MATRICES, basic_germ, henon_heiles_germ


def test_discriminant_of_basic_germ():
    """(p1 q1, p2) has reduced discriminant s1 with multiplicity 1."""
    d = discriminant(basic_germ())
    assert d.k == 2
    assert d.target_vars == ("s1", "s2")
    assert format_polynomial(normalized(d.reduced_generator)) == "s1"
    assert multiplicity_at_origin(d) == 1


def test_discriminant_of_three_torus_germ():
    """R = [[1,1,0],[0,1,1]] gives the three-line curve s1 s2 (s1 - s2)."""
    d = discriminant(action_coordinates_germ(3, 2, AL_MATRICES[(3, 2)]))
    reduced = normalized(d.reduced_generator)
    expected = parse_polynomial("s1^2*s2 - s1*s2^2", ("s1", "s2"))
    assert proportional(reduced, expected)
    assert multiplicity_at_origin(d) == 3


def test_discriminant_of_four_torus_germ():
    """R = [[1,1,1,0],[0,1,2,1]] gives four distinct lines through the origin."""
    d = discriminant(action_coordinates_germ(4, 2, AL_MATRICES[(4, 2)]))
    reduced = normalized(d.reduced_generator)
    expected = parse_polynomial(
        "s1^3*s2 - 3/2*s1^2*s2^2 + 1/2*s1*s2^3", ("s1", "s2"))
    assert proportional(reduced, expected)
    assert multiplicity_at_origin(d) == 4


def test_discriminant_generators_are_radical_members():
    """The reduced generator lies in the radical of the eliminated ideal."""
    for germ in (basic_germ(), henon_heiles_germ()):
        d = discriminant(germ)
        assert radical_membership(d.reduced_generator, d.ideal)


def test_henon_heiles_discriminant():
    """The corrected cubic-potential pair has a degree-5 curve of multiplicity 4."""
    d = discriminant(henon_heiles_germ())
    reduced = normalized(d.reduced_generator)
    expected = parse_polynomial("s1^4*s2 + 16/27*s2^4", ("s1", "s2"))
    assert proportional(reduced, expected)
    assert multiplicity_at_origin(d) == 4


def test_multiplicity_invariant_under_linear_target_change():
    """Random GL_2(Q) substitutions preserve the order at the origin."""
    rng = random.Random(19)
    amb = ("s1", "s2")
    curves = [
        parse_polynomial("s1^2*s2 - s1*s2^2", amb),
        parse_polynomial("s1^4*s2 + 16/27*s2^4", amb),
        parse_polynomial("s1", amb),
    ]
    s1 = parse_polynomial("s1", amb)
    s2 = parse_polynomial("s2", amb)
    for curve in curves:
        base = squarefree_part_bivariate(curve).order_at_origin()
        done = 0
        while done < 5:
            a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
            if a * d - b * c == 0:
                continue
            moved = curve.substitute(
                {"s1": s1.scale(a) + s2.scale(b), "s2": s1.scale(c) + s2.scale(d)})
            assert squarefree_part_bivariate(moved).order_at_origin() == base
            done += 1


def test_binomial_multiplicity_law():
    """Multiplicity equals C(n, k-1) for generic matrices, n up to 4."""
    generic = {
        (2, 2): [[1, 1], [0, 1]],
        (3, 2): AL_MATRICES[(3, 2)],
        (3, 3): [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        (4, 2): AL_MATRICES[(4, 2)],
        (4, 3): AL_MATRICES[(4, 3)],
        (4, 4): [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    }
    for (n, k), R in generic.items():
        assert al_multiplicity(n, k, R) == comb(n, k - 1)
        assert al_multiplicity_by_counting(n, k, R) == comb(n, k - 1)


def test_counting_rejects_non_generic_matrix():
    """A rank-deficient column pair is refused with the witness columns."""
    with pytest.raises(NonGenericMatrixError):
        al_multiplicity_by_counting(3, 2, [[1, 0, 0], [0, 1, 0]])


def test_elimination_budget_propagates():
    """A zero S-pair budget aborts the k = 2 elimination route."""
    with pytest.raises(ResourceLimitExceeded):
        al_multiplicity(3, 2, AL_MATRICES[(3, 2)], max_pairs=0)


def test_milnor_numbers():
    """Chain singularities x^(a+1) + y^2 have Milnor number a."""
    amb = ("x", "y")
    for a in (1, 2, 3, 4):
        h = parse_polynomial(f"x^{a + 1} + y^2", amb)
        assert milnor_number(h) == a
    assert milnor_number(parse_polynomial("x^2 + y^2 + z^2", ("x", "y", "z"))) == 1
    with pytest.raises(NonIsolatedSingularityError):
        milnor_number(parse_polynomial("x^2*y^2", amb))


def test_critical_ideal_shape():
    """The critical ideal couples source minors with target graph equations."""
    germ = basic_germ()
    crit = critical_ideal(germ)
    assert crit.source_vars == germ.ambient
    assert crit.target_vars == ("s1", "s2")
    assert crit.ambient == germ.ambient + ("s1", "s2")
    jac = jacobian(germ)
    assert jac.shape == (2, 4)


def test_betti_prediction_arithmetic():
    """The middle-degree prediction returns (m - k - s, multiplicity)."""
    assert betti_prediction(4, 4, 2, 1) == (1, 4)
    assert betti_prediction(3, 6, 2, 1) == (3, 3)
    with pytest.raises(PolyError):
        betti_prediction(3, 4, 2, 5)
    with pytest.raises(PolyError):
        betti_prediction(-1, 4, 2, 1)
