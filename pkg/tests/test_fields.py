import pytest

from singhunt.errors import ContextMismatch, DivisionByZero, InvalidDegree, NonPrime
from singhunt.fields import (
    FieldElement,
    field_create,
    format_element,
    from_basis_tuple,
    inv,
    is_prime,
    parse_element,
    to_basis_tuple,
)


def brute_first_irreducible_quadratic(p):
    """Oracle: scan monic quadratics ordered by (t-coefficient, constant)
    and return the first with no root."""
    for c1 in range(p):
        for c0 in range(p):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                return (c0, c1, 1)
    raise AssertionError


def test_field_create_examples():
    assert field_create(7, 1).modulus is None
    assert field_create(2, 3).q == 8
    assert field_create(5, 2).modulus == (2, 0, 1)  # t^2 + 2


def test_modulus_matches_bruteforce_oracle():
    for p in (3, 5, 7, 11, 13):
        assert field_create(p, 2).modulus == brute_first_irreducible_quadratic(p)


def test_field_create_deterministic():
    a = field_create(5, 2)
    b = field_create(5, 2)
    assert a is b and a.modulus == b.modulus


def test_field_create_errors():
    with pytest.raises(NonPrime):
        field_create(6, 1)
    with pytest.raises(NonPrime):
        field_create(1, 1)
    with pytest.raises(InvalidDegree):
        field_create(5, 0)


def test_is_prime_on_a_range():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(2 * i, 2000, i):
                sieve[j] = False
    for n in range(2000):
        assert is_prime(n) == sieve[n], n


def test_inverse_examples():
    F7 = field_create(7)
    assert inv(F7.element(3)) == F7.element(5)
    assert inv(F7.one()) == F7.one()
    F25 = field_create(5, 2)
    t = F25.gen()
    # oracle: exhaustive search over all 25 elements
    expected = next(x for x in F25.elements() if (t * x) == F25.one())
    assert inv(t) == expected
    assert inv(t) == F25.element((0, 2))  # 2t
    with pytest.raises(DivisionByZero):
        inv(F7.zero())


def test_basis_tuples():
    F25 = field_create(5, 2)
    assert to_basis_tuple(F25.one()) == (1, 0)
    assert to_basis_tuple(F25.element((3, 1))) == (3, 1)
    for a in F25.elements():
        assert from_basis_tuple(F25, to_basis_tuple(a)) == a
    with pytest.raises(ContextMismatch):
        from_basis_tuple(F25, (1, 2, 3))


def test_basis_tuple_linear():
    F25 = field_create(5, 2)
    elems = list(F25.elements())
    for a in elems[:10]:
        for b in elems[::5]:
            left = to_basis_tuple(a + b)
            right = tuple((x + y) % 5 for x, y in zip(to_basis_tuple(a), to_basis_tuple(b)))
            assert left == right


def prime_powers_upto(limit):
    out = []
    for p in range(2, limit + 1):
        if not is_prime(p):
            continue
        k = 1
        while p**k <= limit:
            out.append((p, k))
            k += 1
    return out


def test_fermat_lagrange_exhaustive():
    for p, k in prime_powers_upto(1024):
        ctx = field_create(p, k)
        one = ctx.one()
        for a in ctx.elements():
            if a.is_zero():
                continue
            assert a ** (ctx.q - 1) == one, (p, k, a)


def quotient_ring_mul(a, b, modulus, p):
    """Oracle: naive polynomial multiplication followed by long division."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(modulus) - 1
    while len(prod) > k:
        lead = prod[-1]
        shift = len(prod) - 1 - k
        for i, c in enumerate(modulus):
            prod[shift + i] = (prod[shift + i] - lead * c) % p
        prod.pop()
    prod += [0] * (k - len(prod))
    return tuple(prod)


@pytest.mark.parametrize("p", [2, 3])
def test_tables_match_quotient_ring(p):
    ctx = field_create(p, 2)
    for a in ctx.elements():
        for b in ctx.elements():
            assert (a + b).coeffs == tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs))
            assert (a * b).coeffs == quotient_ring_mul(a.coeffs, b.coeffs, ctx.modulus, p)


def test_cross_context_arithmetic_is_an_error():
    F7 = field_create(7)
    F11 = field_create(11)
    with pytest.raises(ContextMismatch):
        F7.element(1) + F11.element(1)
    F49 = field_create(7, 2)
    with pytest.raises(ContextMismatch):
        F7.element(1) * F49.one()


def test_text_round_trip_bit_exact():
    for ctx in (field_create(7), field_create(5, 2), field_create(2, 3)):
        for a in ctx.elements():
            text = format_element(a)
            assert parse_element(ctx, text) == a
            assert format_element(parse_element(ctx, text)) == text


def test_parse_element_forms():
    F25 = field_create(5, 2)
    assert parse_element(F25, "3*t+1") == F25.element((1, 3))
    assert parse_element(F25, " t ^ 1 ") == F25.gen()
    assert parse_element(F25, "-t") == -F25.gen()
    assert parse_element(field_create(7), "-3") == field_create(7).element(4)
