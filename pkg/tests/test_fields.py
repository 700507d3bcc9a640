import random
from fractions import Fraction

import pytest

from cihom.fields import FieldError, PrimeField, RationalField, field_by_tag


@pytest.mark.parametrize("field,sampler", [
    (PrimeField(32003), lambda rng: rng.randrange(32003)),
    (RationalField(), lambda rng: Fraction(rng.randint(-50, 50), rng.randint(1, 50))),
])
def test_field_axioms_on_random_triples(field, sampler):
    rng = random.Random(20090928)
    for _ in range(1000):
        a, b, c = sampler(rng), sampler(rng), sampler(rng)
        assert field.eq(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
        assert field.eq(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
        assert field.eq(field.mul(a, field.add(b, c)),
                        field.add(field.mul(a, b), field.mul(a, c)))
        assert field.eq(field.add(a, field.neg(a)), field.zero())
        if not field.is_zero(a):
            assert field.eq(field.mul(a, field.inv(a)), field.one())


def test_prime_field_canonical_range():
    F = PrimeField(32003)
    assert F.from_int(-1) == 32002
    assert F.from_int(32003) == 0
    assert F.sub(0, 1) == 32002
    assert F.mul(32002, 32002) == F.from_int((-1) * (-1))


def test_rational_canonical_form():
    F = RationalField()
    v = F.div(F.from_int(4), F.from_int(6))
    assert v == Fraction(2, 3)
    assert v.denominator == 3


def test_field_by_tag():
    assert isinstance(field_by_tag("f32003"), PrimeField)
    assert isinstance(field_by_tag("rational"), RationalField)
    assert field_by_tag("101").p == 101
    with pytest.raises(FieldError):
        field_by_tag("f4")  # not prime
    with pytest.raises(FieldError):
        field_by_tag("bogus")


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(32003).inv(0)
    with pytest.raises(ZeroDivisionError):
        RationalField().inv(Fraction(0))
