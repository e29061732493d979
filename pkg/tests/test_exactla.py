import random
from fractions import Fraction
from itertools import permutations

import pytest

from singhunt.errors import NotSquare
from singhunt.exactla import (
    QQ,
    ExactMatrix,
    determinant,
    is_negative_definite,
    leading_minors,
    matvec,
    nullspace,
    parse_matrix,
    rank,
    rref,
    span_intersection,
    symmetric_signature,
)
from singhunt.fields import field_create
from singhunt.lattice import GODEAUX_GRAM_TEXT

GRAM = parse_matrix(GODEAUX_GRAM_TEXT)


def test_rref_identity():
    I3 = ExactMatrix.identity(3, QQ)
    R, pivots, rk = rref(I3)
    assert R == I3 and pivots == [0, 1, 2] and rk == 3


def test_rref_rank_one():
    A = ExactMatrix.make(QQ, [[1, 2], [2, 4]])
    R, pivots, rk = rref(A)
    assert rk == 1 and R.data == [[1, 2], [0, 0]]


def test_gram_matrix_rank_nine():
    assert rank(GRAM) == 9


def test_nullspace_examples():
    A = ExactMatrix.make(QQ, [[1, 2], [2, 4]])
    basis = nullspace(A)
    assert len(basis) == 1
    v = basis[0]
    # primitive integer vector spanning {(-2, 1)}
    assert v in ([2, -1], [-2, 1])
    assert v[0] > 0  # deterministic sign: first nonzero entry positive
    assert all(x == 0 for x in matvec(A, v))
    assert nullspace(GRAM) == []


def test_extended_gram_contains_relation_vector():
    # {N1..N8, K, C'} with the pairings forced by the divisibility relation
    c_pair = [1, 0, 0, 0, 1, 1, 0, 0, 2]
    rows = [list(r) + [c_pair[i]] for i, r in enumerate(GRAM.data)]
    rows.append(c_pair + [2])
    M10 = ExactMatrix.make(QQ, rows)
    basis = nullspace(M10)
    assert len(basis) == 1
    rel = [-2, 0, -1, -2, -3, -3, -2, -1, 8, -4]
    v = basis[0]
    assert v == rel or v == [-x for x in rel]


def cofactor_det(m):
    """Oracle: Laplace expansion along the first row."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def test_determinant_examples():
    A3 = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    assert determinant(ExactMatrix.make(QQ, A3)) == cofactor_det(A3) == -4
    assert determinant(GRAM) == 64
    assert determinant(ExactMatrix.identity(4, QQ)) == 1
    with pytest.raises(NotSquare):
        determinant(ExactMatrix.make(QQ, [[1, 2]]))


def test_determinant_block_diagonal_factorization():
    # 64 = (-2) * (-2) * det(A3) * det(A3) * 1
    assert determinant(GRAM) == (-2) * (-2) * (-4) * (-4) * 1


def fraction_gauss_det(rows):
    """Oracle: plain fraction Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def test_bareiss_matches_fraction_elimination():
    rnd = random.Random(5)
    for _ in range(40):
        n = rnd.randint(1, 6)
        rows = [[rnd.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert determinant(ExactMatrix.make(QQ, rows)) == fraction_gauss_det(rows)


def test_rational_entries_determinant():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]]
    assert determinant(ExactMatrix.make(QQ, rows)) == Fraction(1, 14) - Fraction(1, 15)


def test_rank_nullity_random_gf():
    rnd = random.Random(17)
    for _ in range(25):
        p = rnd.choice([2, 3, 5, 7, 11, 101])
        ctx = field_create(p)
        r = rnd.randint(1, 40)
        c = rnd.randint(1, 40)
        A = ExactMatrix.make(ctx, [[rnd.randrange(p) for _ in range(c)] for _ in range(r)])
        kernel = nullspace(A)
        assert rank(A) + len(kernel) == c
        for v in kernel:
            assert all(x == 0 for x in matvec(A, v))


def test_generic_path_for_large_prime_field():
    # p >= 2^31 bypasses the vectorized path
    p = 2147483659
    ctx = field_create(p)
    A = ExactMatrix.make(ctx, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    R, pivots, rk = rref(A)
    assert rk == 2
    kernel = nullspace(A)
    assert len(kernel) == 1
    assert all(x == 0 for x in matvec(A, kernel[0]))


def test_rank_nullity_extension_field():
    F9 = field_create(3, 2)
    rnd = random.Random(2)
    elems = list(F9.elements())
    for _ in range(10):
        A = ExactMatrix.make(F9, [[rnd.choice(elems) for _ in range(5)] for _ in range(4)])
        kernel = nullspace(A)
        assert rank(A) + len(kernel) == 5
        for v in kernel:
            assert all(x.is_zero() for x in matvec(A, v))


def test_rref_preserves_row_space():
    rnd = random.Random(31)
    for _ in range(20):
        rows = [[Fraction(rnd.randint(-5, 5)) for _ in range(5)] for _ in range(4)]
        A = ExactMatrix.make(QQ, rows)
        R, _, rk = rref(ExactMatrix.make(QQ, rows))
        stacked = ExactMatrix.make(QQ, rows + [r for r in R.data if any(r)])
        assert rank(stacked) == rk == rank(A)


def test_n_block_negative_definite():
    nblock = ExactMatrix.make(QQ, [row[:8] for row in GRAM.data[:8]])
    assert is_negative_definite(nblock)
    minors = leading_minors(ExactMatrix.make(QQ, [[-v for v in row] for row in nblock.data]))
    assert all(m > 0 for m in minors)
    assert not is_negative_definite(GRAM)  # K^2 = 1 breaks definiteness


def test_signature_of_gram():
    assert symmetric_signature(GRAM) == (1, 8, 0)
    assert symmetric_signature(ExactMatrix.identity(3, QQ)) == (3, 0, 0)
    assert symmetric_signature(ExactMatrix.make(QQ, [[0, 1], [1, 0]])) == (1, 1, 0)
    assert symmetric_signature(ExactMatrix.make(QQ, [[1, 2], [2, 4]])) == (1, 0, 1)


def test_span_intersection():
    F7 = field_create(7)
    B1 = [[1, 0, 0], [0, 1, 0]]
    B2 = [[0, 1, 0], [0, 0, 1]]
    inter = span_intersection(B1, B2, F7)
    assert len(inter) == 1
    assert inter[0][0] == 0 and inter[0][2] == 0 and inter[0][1] != 0


def test_parse_matrix_bracket_blocks():
    M = parse_matrix("[1 2]\n[3 4/1]")
    assert M.data == [[1, 2], [3, 4]]
    assert M.data[1][1] == Fraction(4)


def test_matrix_text_round_trip():
    from singhunt.exactla import format_matrix

    text = format_matrix(GRAM)
    again = parse_matrix(text)
    assert again.data == GRAM.data
