import random

import pytest
from hypothesis import given, settings, strategies as st

from cellular_towers.coeff import (
    DELTA,
    DV,
    QV,
    QZDV,
    QZV,
    Q,
    Z,
    LaurentPoly,
    RationalFunction,
    delta_as_qz,
    delta_eliminate,
    divexact,
    poly_gcd,
    specialize,
)
from cellular_towers.errors import CoefficientRingError, SpecializationError


def rand_poly(rng, vars=QV, terms=4, span=4):
    t = {}
    for _ in range(rng.randint(0, terms)):
        exp = tuple(rng.randint(-span, span) for _ in vars)
        t[exp] = t.get(exp, 0) + rng.randint(-6, 6)
    return LaurentPoly(vars, t)


def test_difference_of_squares():
    q = LaurentPoly.gen(QV, Q)
    qi = LaurentPoly.gen(QV, Q, -1)
    assert (q + qi) * (q - qi) == q ** 2 - qi ** 2


def test_annihilation_and_canonical_zero():
    x = LaurentPoly.gen(QV, Q)
    z = x * 0
    assert z.is_zero() and z.terms == {}
    assert x - x == LaurentPoly.zero(QV)


def test_mismatched_vars_is_structural_error():
    with pytest.raises(CoefficientRingError):
        LaurentPoly.gen(QV, Q) + LaurentPoly.gen(DV, DELTA)


def test_ring_axioms_random_triples():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rand_poly(rng, QZV) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_integer_specialization_cross_check():
    # polynomial arithmetic vs plain integers at q := 1, on 100 random pairs
    rng = random.Random(11)
    one = RationalFunction.one(())
    for _ in range(100):
        a, b = rand_poly(rng), rand_poly(rng)
        lhs = specialize(a * b, {Q: one}, ())
        ra = specialize(a, {Q: one}, ())
        rb = specialize(b, {Q: one}, ())
        assert lhs == ra * rb
        ia = sum(a.terms.values())
        assert specialize(a, {Q: one}, ()) == RationalFunction.const((), ia)


@settings(max_examples=60, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 30))
def test_rational_constants_reduce(a, b, c):
    # fractions of constants behave like exact rationals
    x = RationalFunction(LaurentPoly.const(QV, a), LaurentPoly.const(QV, c))
    y = RationalFunction(LaurentPoly.const(QV, b), LaurentPoly.const(QV, c))
    s = x + y
    assert s * c == a + b


def test_rational_normalization_sign_and_gcd():
    q = LaurentPoly.gen(QV, Q)
    r = RationalFunction(q ** 2 - 1, -(q + 1))
    # reduced and sign-normalized: (q^2-1)/-(q+1) = -(q-1) = 1 - q
    assert r.den.is_one()
    assert r.num == 1 - q
    # 1/q is stored with an ordinary denominator
    r2 = RationalFunction(LaurentPoly.one(QV), q)
    assert r2.num.is_one() and r2.den == q


def test_rational_field_ops():
    rng = random.Random(3)
    for _ in range(60):
        a = RationalFunction.from_poly(rand_poly(rng, QZV, 3, 2))
        b = RationalFunction.from_poly(rand_poly(rng, QZV, 3, 2))
        c = RationalFunction.from_poly(rand_poly(rng, QZV, 3, 2))
        assert (a + b) * c == a * c + b * c
        if not b.is_zero():
            assert (a / b) * b == a


def test_specialize_is_homomorphism():
    rng = random.Random(5)
    val = delta_as_qz()
    for _ in range(40):
        a, b = rand_poly(rng, QZDV, 3, 2), rand_poly(rng, QZDV, 3, 2)
        assert specialize(a * b, {DELTA: val}, QZV) == specialize(
            a, {DELTA: val}, QZV
        ) * specialize(b, {DELTA: val}, QZV)
        assert specialize(a + b, {DELTA: val}, QZV) == specialize(
            a, {DELTA: val}, QZV
        ) + specialize(b, {DELTA: val}, QZV)


def test_specialize_q_one_kills_twist():
    q = LaurentPoly.gen(QV, Q)
    qi = LaurentPoly.gen(QV, Q, -1)
    one = RationalFunction.one(())
    assert specialize(q - qi, {Q: one}, ()).is_zero()


def test_ground_ring_relation_at_q_one():
    # z^-1 - z specializes to 0 at z := 1, consistent with
    # (q^-1 - q)(delta - 1) at q = 1 for any delta
    z = LaurentPoly.gen(QZV, Z)
    zi = LaurentPoly.gen(QZV, Z, -1)
    one = RationalFunction.one(QV)
    assert specialize(zi - z, {Z: one}, QV).is_zero()


def test_delta_eliminate_relation():
    # z^-1 - z - (q^-1 - q)(delta - 1) maps to 0 in Q(q, z)
    z = LaurentPoly.gen(QZDV, Z)
    zi = LaurentPoly.gen(QZDV, Z, -1)
    q = LaurentPoly.gen(QZDV, Q)
    qi = LaurentPoly.gen(QZDV, Q, -1)
    d = LaurentPoly.gen(QZDV, DELTA)
    rel = zi - z - (qi - q) * (d - 1)
    assert delta_eliminate(rel).is_zero()


def test_delta_eliminate_fixes_delta_free():
    p = LaurentPoly.gen(QZV, Q) ** 2 - LaurentPoly.gen(QZV, Z)
    assert delta_eliminate(p) == RationalFunction.from_poly(p)


def test_delta_eliminate_image():
    d = LaurentPoly.gen(QZDV, DELTA)
    assert delta_eliminate(d) == delta_as_qz()


def test_composition_of_specializations():
    rng = random.Random(17)
    one = RationalFunction.one(())
    for _ in range(25):
        p = rand_poly(rng, QZDV, 3, 2)
        step1 = delta_eliminate(p)
        direct = specialize(
            p, {DELTA: RationalFunction.const((), 1), Q: one, Z: one}, ()
        )
        # eliminating delta then setting q = z = 1 can hit the removable
        # singularity, so compare through the polynomial route when defined
        try:
            via = specialize(step1, {Q: one, Z: one}, ())
        except SpecializationError:
            continue
        assert via == direct


def test_zero_denominator_raises():
    q = LaurentPoly.gen(QV, Q)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(q, LaurentPoly.zero(QV))
    with pytest.raises(SpecializationError):
        specialize(
            RationalFunction(LaurentPoly.one(QV), q - 1),
            {Q: RationalFunction.one(())},
            (),
        )


def test_gcd_and_divexact():
    rng = random.Random(23)
    for _ in range(40):
        a = rand_poly(rng, QZV, 3, 2)
        b = rand_poly(rng, QZV, 3, 2)
        if a.is_zero() or b.is_zero():
            continue
        # force ordinary polynomials
        a = LaurentPoly(QZV, {tuple(abs(x) for x in e): c for e, c in a.terms.items()})
        b = LaurentPoly(QZV, {tuple(abs(x) for x in e): c for e, c in b.terms.items()})
        p = a * b
        g = poly_gcd(p, b)
        assert divexact(p, g) * g == p
        assert divexact(p, b) == a or divexact(p, b) * b == p


def test_json_round_trip():
    rng = random.Random(29)
    for _ in range(20):
        p = rand_poly(rng, QZDV, 4, 3)
        assert LaurentPoly.from_json(p.to_json()) == p
    r = RationalFunction(
        LaurentPoly.gen(QZV, Q) + 1, LaurentPoly.gen(QZV, Z) ** 2 + 3
    )
    assert RationalFunction.from_json(r.to_json()) == r


def test_json_schema_fields():
    p = LaurentPoly(QZDV, {(1, 0, 0): 1})
    data = p.to_json()
    assert data["vars"] == ["q", "z", DELTA]
    assert data["terms"] == [{"exp": [1, 0, 0], "coef": "1"}]
