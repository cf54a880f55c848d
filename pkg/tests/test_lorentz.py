import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from lorentz_crofton import (
    CausalClass,
    apply_transform,
    boost,
    causal_type,
    is_orthochronous_lorentz,
    lorentz_cross,
    minkowski_inner,
    orthochronous_transform,
    plane_causal_type,
    random_orthochronous_transform,
)
from lorentz_crofton.errors import ZeroVector
from lorentz_crofton.lorentz import ETA

coords = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
vectors = st.tuples(coords, coords, coords).map(np.array)


def test_inner_product_unit_vectors():
    assert minkowski_inner([1, 0, 0], [1, 0, 0]) == 1.0
    assert minkowski_inner([0, 0, 1], [0, 0, 1]) == -1.0
    assert minkowski_inner([1, 0, 1], [1, 0, 1]) == 0.0


def test_inner_product_vectorized():
    x = np.array([[1.0, 2.0, 3.0], [0.0, 1.0, 0.0]])
    y = np.array([[4.0, 5.0, 6.0], [0.0, 2.0, 0.0]])
    np.testing.assert_allclose(minkowski_inner(x, y), [4 + 10 - 18, 2.0])


def test_causal_classification():
    assert causal_type(np.array([2.0, 0.0, 1.0])) is CausalClass.SPACELIKE
    assert causal_type(np.array([0.0, 1.0, 2.0])) is CausalClass.TIMELIKE
    assert causal_type(np.array([3.0, 4.0, 5.0])) is CausalClass.LIGHTLIKE


def test_causal_zero_vector():
    with pytest.raises(ZeroVector):
        causal_type(np.zeros(3))


def test_plane_causal_type_examples():
    assert plane_causal_type(np.array([0.0, 0.0, 1.0])) is CausalClass.SPACELIKE
    assert plane_causal_type(np.array([1.0, 0.0, 0.0])) is CausalClass.TIMELIKE
    assert plane_causal_type(np.array([1.0, 0.0, 1.0])) is CausalClass.LIGHTLIKE


def test_boost_moves_time_axis():
    out = apply_transform(boost(1.0), np.array([0.0, 0.0, 1.0]))
    np.testing.assert_allclose(out, [0.0, np.sinh(1.0), np.cosh(1.0)], atol=1e-15)


def test_zero_parameters_give_identity():
    np.testing.assert_allclose(orthochronous_transform(0.0, 0.0), np.eye(3), atol=0)


@pytest.mark.parametrize("seed", [0, 1, 7, 123, 99999])
def test_random_transform_is_orthochronous(seed):
    m = random_orthochronous_transform(seed)
    defect = m.T @ ETA @ m - ETA
    assert np.max(np.abs(defect)) <= 1e-12
    assert m[2, 2] > 0.0
    assert is_orthochronous_lorentz(m)


def test_random_transform_deterministic():
    np.testing.assert_array_equal(random_orthochronous_transform(42),
                                  random_orthochronous_transform(42))


@given(vectors, vectors, st.integers(0, 1000))
@settings(max_examples=60, deadline=None)
def test_inner_product_invariance(x, y, seed):
    m = random_orthochronous_transform(seed)
    lhs = minkowski_inner(apply_transform(m, x), apply_transform(m, y))
    scale = 1.0 + abs(float(minkowski_inner(x, y)))
    assert abs(lhs - minkowski_inner(x, y)) <= 1e-10 * scale


@given(vectors, st.integers(0, 1000))
@settings(max_examples=60, deadline=None)
def test_causal_class_invariance(x, seed):
    tol = 1e-9
    euclid = float(np.dot(x, x))
    q = float(minkowski_inner(x, x))
    if euclid == 0.0 or abs(q) <= 10.0 * tol * euclid:
        return  # too close to the lightcone for exact class stability
    m = random_orthochronous_transform(seed)
    assert causal_type(apply_transform(m, x), tol) is causal_type(x, tol)


@given(vectors)
@settings(max_examples=60, deadline=None)
def test_plane_class_complements_normal_class(n):
    euclid = float(np.dot(n, n))
    q = float(minkowski_inner(n, n))
    if euclid == 0.0 or abs(q) <= 1e-6 * euclid:
        return
    mapping = {CausalClass.SPACELIKE: CausalClass.TIMELIKE,
               CausalClass.TIMELIKE: CausalClass.SPACELIKE}
    assert plane_causal_type(n) is mapping[causal_type(n)]


@given(vectors, vectors, vectors)
@settings(max_examples=60, deadline=None)
def test_lorentz_cross_is_determinant_dual(u, v, w):
    lhs = float(minkowski_inner(lorentz_cross(u, v), w))
    det = float(np.linalg.det(np.stack([u, v, w])))
    assert abs(lhs - det) <= 1e-9 * (1.0 + abs(det))
