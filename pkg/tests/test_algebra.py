import random

import pytest
from hypothesis import given, settings, strategies as st

from lrckit.algebra import (
    FiniteField,
    Matrix,
    Poly,
    dump_matrix,
    interpolate,
    load_matrix,
    poly_from_roots,
    same_row_space,
    subfield_embedding,
)
from lrckit.errors import DuplicateNode, InvalidParameter

F11 = FiniteField(11)
F13 = FiniteField(13)
F4 = FiniteField(2, 2)
F16 = FiniteField(2, 4)
F9 = FiniteField(3, 2)

FIELDS = [F11, F4, F16, F9]


def test_prime_inverse():
    assert F11.inv(7) == 8
    assert F11.mul(7, 8) == 1


def test_f4_multiplication():
    # x * x = x + 1 under the canonical modulus
    assert F4.modulus == (1, 1, 1)
    assert F4.mul(2, 2) == 3


def test_canonical_moduli():
    assert FiniteField(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert F16.modulus == (1, 1, 0, 0, 1)             # x^4 + x + 1
    assert F9.modulus == (1, 0, 1)                    # x^2 + 1


def test_bad_field_parameters():
    with pytest.raises(InvalidParameter):
        FiniteField(6)
    with pytest.raises(InvalidParameter):
        FiniteField(2, 2, modulus=[0, 0, 1])  # x^2 is reducible
    with pytest.raises(ZeroDivisionError):
        F11.inv(0)


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=60, deadline=None)
def test_field_axioms(fld, data):
    a = data.draw(st.integers(0, fld.q - 1))
    b = data.draw(st.integers(0, fld.q - 1))
    assert fld.add(a, 0) == a
    assert fld.mul(a, b) == fld.mul(b, a)
    assert fld.add(a, fld.neg(a)) == 0
    assert fld.pow(a, fld.q) == a  # Frobenius fixed point
    if a:
        assert fld.mul(a, fld.inv(a)) == 1


def test_interpolate_line():
    f = interpolate(F11, [(0, 1), (1, 2)])
    assert f.coeffs == [1, 1]


def test_interpolate_constant():
    f = interpolate(F11, [(3, 6), (6, 6), (5, 6)])
    assert f.coeffs == [6]


def test_interpolate_squares():
    pts = [(1, 1), (2, 4), (3, 9)]
    f = interpolate(F13, pts)
    for x, y in pts:
        assert f(x) == y
    assert f.coeffs == [0, 0, 1]


def test_interpolate_duplicate_node():
    with pytest.raises(DuplicateNode):
        interpolate(F11, [(1, 2), (1, 3)])


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=40, deadline=None)
def test_interpolate_round_trip(fld, data):
    deg = data.draw(st.integers(0, min(5, fld.q - 1) - 1))
    coeffs = [data.draw(st.integers(0, fld.q - 1)) for _ in range(deg + 1)]
    f = Poly(fld, coeffs)
    xs = list(range(deg + 1))
    g = interpolate(fld, [(x, f(x)) for x in xs])
    assert (f - g).is_zero()


def test_from_roots_empty_and_single():
    assert poly_from_roots(F11, []).coeffs == [1]
    assert poly_from_roots(FiniteField(7), [0]).coeffs == [0, 1]


def test_from_roots_pair():
    # (x-1)(x-2) has coefficients (r1*r2, -(r1+r2), 1) = (2, -3, 1)
    f = poly_from_roots(F11, [1, 2])
    assert f.coeffs == [2, 8, 1]
    assert f(1) == 0 and f(2) == 0 and f(3) != 0


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=40, deadline=None)
def test_from_roots_multiplicative(fld, data):
    elems = data.draw(
        st.lists(st.integers(0, fld.q - 1), max_size=min(6, fld.q), unique=True)
    )
    cut = data.draw(st.integers(0, len(elems)))
    a, b = elems[:cut], elems[cut:]
    assert (
        poly_from_roots(fld, a) * poly_from_roots(fld, b)
    ).coeffs == poly_from_roots(fld, elems).coeffs


def test_poly_divmod():
    f = poly_from_roots(F11, [1, 2, 3])
    g = poly_from_roots(F11, [2])
    q, r = divmod(f, g)
    assert r.is_zero()
    assert q.coeffs == poly_from_roots(F11, [1, 3]).coeffs
    q2, r2 = divmod(f + Poly(F11, [5]), g)
    assert r2.coeffs == [5]


def test_matrix_rank_basics():
    eye = Matrix.identity(F11, 3)
    assert eye.rank() == 3
    assert eye.nullspace().nrows == 0
    z = Matrix.zero(F11, 2, 4)
    assert z.rank() == 0
    assert z.nullspace().nrows == 4


def test_rank_nullity_and_shuffle():
    rng = random.Random(5)
    m = Matrix(F13, [[rng.randrange(13) for _ in range(7)] for _ in range(4)])
    assert m.rank() + m.nullspace().nrows == m.ncols
    rows = m.copy_rows()
    rng.shuffle(rows)
    assert Matrix(F13, rows).rank() == m.rank()
    for v in m.nullspace().rows:
        assert all(x == 0 for x in m.mul_vec(v))


def test_matrix_solve():
    rng = random.Random(9)
    m = Matrix(F11, [[rng.randrange(11) for _ in range(5)] for _ in range(3)])
    x = [rng.randrange(11) for _ in range(5)]
    rhs = m.mul_vec(x)
    sol = m.solve(rhs)
    assert sol is not None
    assert m.mul_vec(sol) == rhs
    inconsistent = Matrix(F11, [[1, 0], [1, 0]])
    assert inconsistent.solve([1, 2]) is None


def test_matrix_text_round_trip():
    m = Matrix(F11, [[1, 2, 3], [4, 5, 6]])
    again = load_matrix(dump_matrix(m))
    assert again == m and again.field == F11
    me = Matrix(F16, [[0, 15], [7, 9]])
    again = load_matrix(dump_matrix(me))
    assert again.rows == me.rows and again.field.modulus == F16.modulus


def test_matrix_text_rejects_composite_prime_header():
    with pytest.raises(InvalidParameter):
        load_matrix("4 1 1\n2\n")


def test_same_row_space():
    a = Matrix(F11, [[1, 0, 1], [0, 1, 1]])
    b = Matrix(F11, [[1, 1, 2], [2, 1, 3]])
    assert same_row_space(a, b)
    c = Matrix(F11, [[1, 0, 0], [0, 1, 1]])
    assert not same_row_space(a, c)


def test_subfield_embedding_is_homomorphism():
    emb = subfield_embedding(F4, F16)
    assert emb[0] == 0 and emb[1] == 1
    for a in range(4):
        for b in range(4):
            assert emb[F4.add(a, b)] == F16.add(emb[a], emb[b])
            assert emb[F4.mul(a, b)] == F16.mul(emb[a], emb[b])
    with pytest.raises(InvalidParameter):
        subfield_embedding(F9, F16)
