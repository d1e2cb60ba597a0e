"""Stream derivation and the five point distributions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randpoly.errors import InsufficientPoints, InvalidDimension, ValidationError
from randpoly.fvector import f_vector_from_facets
from randpoly.hull import convex_hull
from randpoly.rng import (
    DistributionKind,
    StreamKey,
    derive_seed,
    make_stream,
    sample,
    standard_normal,
)

KINDS = list(DistributionKind)


def test_same_key_same_bits():
    a = make_stream(StreamKey(123, 4, "points"))
    b = make_stream(StreamKey(123, 4, "points"))
    assert np.array_equal(
        a.integers(0, 2**63, 256), b.integers(0, 2**63, 256)
    )


def test_replicate_changes_stream_quickly():
    a = make_stream(StreamKey(123, 0, "points")).integers(0, 2**63, 64)
    b = make_stream(StreamKey(123, 1, "points")).integers(0, 2**63, 64)
    assert not np.array_equal(a, b)


def test_purpose_and_attempt_change_stream():
    base = make_stream(StreamKey(9, 2, "points", 0)).integers(0, 2**63, 64)
    for key in (StreamKey(9, 2, "directions", 0), StreamKey(9, 2, "points", 1)):
        other = make_stream(key).integers(0, 2**63, 64)
        assert not np.array_equal(base, other)


def test_stream_key_validation():
    with pytest.raises(ValidationError):
        StreamKey(-1)
    with pytest.raises(ValidationError):
        StreamKey(2**64)
    with pytest.raises(ValidationError):
        StreamKey(0, replicate=-1)
    with pytest.raises(ValidationError):
        StreamKey(0, purpose="nonsense")
    with pytest.raises(ValidationError):
        StreamKey(0, attempt=256)


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**20))
@settings(max_examples=50, deadline=None)
def test_derive_seed_in_range_and_mixes(master, index):
    s = derive_seed(master, index)
    assert 0 <= s < 2**64
    assert derive_seed(master, index) == s
    assert derive_seed(master, index + 1) != s


def test_uniform_mean():
    u = make_stream(StreamKey(1)).random(10**6)
    assert abs(u.mean() - 0.5) < 0.002  # 4 sigma of 1/sqrt(12)/1e3


def test_standard_normal_moments():
    stream = make_stream(StreamKey(2))
    x = np.array([standard_normal(stream) for _ in range(2000)])
    draws = stream.standard_normal(10**6)
    assert abs(draws.mean()) < 0.004
    assert abs(draws.var() - 1.0) < 0.006
    assert abs(np.mean(draws <= 0.0) - 0.5) < 0.002
    assert abs(x.mean()) < 4.0 / np.sqrt(2000)


def test_sample_validation():
    stream = make_stream(StreamKey(0))
    with pytest.raises(InvalidDimension):
        sample("cube", stream, 1, 10)
    with pytest.raises(InsufficientPoints):
        sample("cube", stream, 3, 3)
    with pytest.raises(ValueError):
        sample("triangle", stream, 3, 10)


@pytest.mark.parametrize("kind", KINDS)
def test_sample_support_invariants(kind):
    pts = sample(kind, make_stream(StreamKey(7)), 4, 5000)
    assert pts.shape == (5000, 4)
    assert np.all(np.isfinite(pts))
    if kind is DistributionKind.CUBE:
        assert np.all((pts >= 0.0) & (pts <= 1.0))
    elif kind is DistributionKind.L1BALL:
        assert np.all(np.sum(np.abs(pts), axis=1) <= 1.0)
    elif kind in (DistributionKind.L2BALL, DistributionKind.HALFBALL):
        assert np.all(np.linalg.norm(pts, axis=1) <= 1.0)
        if kind is DistributionKind.HALFBALL:
            assert np.all(pts[:, 0] >= 0.0)


@given(
    st.sampled_from(KINDS),
    st.integers(0, 2**32),
    st.integers(2, 5),
    st.integers(0, 3),
)
@settings(max_examples=40, deadline=None)
def test_sample_deterministic(kind, master, d, replicate):
    key = StreamKey(master, replicate, "points")
    a = sample(kind, make_stream(key), d, d + 5)
    b = sample(kind, make_stream(key), d, d + 5)
    assert np.array_equal(a, b)


def test_ball_probability_mass():
    # uniform in the unit l2 / l1 ball: P(||X|| <= 1/2) = 2^-d
    n = 10**6
    x2 = sample("l2ball", make_stream(StreamKey(11)), 3, n)
    p2 = np.mean(np.linalg.norm(x2, axis=1) <= 0.5)
    assert abs(p2 - 0.125) < 0.0014
    x1 = sample("l1ball", make_stream(StreamKey(12)), 3, n)
    p1 = np.mean(np.sum(np.abs(x1), axis=1) <= 0.5)
    assert abs(p1 - 0.125) < 0.0014


def test_cube_coordinate_variance():
    x = sample("cube", make_stream(StreamKey(13)), 5, 10**6)
    assert np.all(np.abs(x.var(axis=0) - 1.0 / 12.0) < 0.0004)


def test_fvector_affine_invariance():
    # the downstream statistic only sees hull combinatorics, which are
    # invariant under invertible affine maps of the cloud
    rng = np.random.default_rng(5)
    for d in (2, 3, 4):
        pts = sample("gaussian", make_stream(StreamKey(21, d)), d, 40)
        A = rng.standard_normal((d, d))
        while abs(np.linalg.det(A)) < 0.1:
            A = rng.standard_normal((d, d))
        b = rng.standard_normal(d)
        f1 = f_vector_from_facets(d, convex_hull(pts).facet_vertices)
        f2 = f_vector_from_facets(d, convex_hull(pts @ A.T + b).facet_vertices)
        assert f1.counts == f2.counts
