import math

import numpy as np
import pytest

from jsrelax import (
    EnumerationBudgetError,
    Matrix,
    MatrixSet,
    euclidean,
    product_bounds,
    spectral_radius,
    trace_estimate,
)
from jsrelax.oracle import _spectral_radii

from conftest import random_irreducible_pair


class TestProductBounds:
    def test_scalar_family_degenerate(self):
        fam = MatrixSet((2.0 * np.eye(2),))
        b = product_bounds(fam, 3)
        assert b.lower == pytest.approx(2.0, rel=1e-12)
        assert b.upper == pytest.approx(2.0, rel=1e-12)

    def test_example1_depth_one(self, example1):
        # both members have a double unit eigenvalue; both 2-norms are golden
        b = product_bounds(example1, 1)
        assert b.lower == 1.0
        assert b.upper == pytest.approx((1.0 + math.sqrt(5.0)) / 2.0, abs=1e-5)

    def test_lower_never_above_upper_across_depths(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            fam = random_irreducible_pair(rng)
            bnds = [product_bounds(fam, n, euclidean(512)) for n in range(1, 6)]
            for a in bnds:
                for b in bnds:
                    assert a.lower <= b.upper + 1e-9

    def test_sandwich_around_published_values(self, example1, example2):
        # the depth-sweep bounds must close in on the known limits
        for fam, value in ((example1, 1.389), (example2, 1.192)):
            bnds = [product_bounds(fam, n) for n in range(1, 13)]
            assert max(b.lower for b in bnds) <= value + 2e-3
            assert min(b.upper for b in bnds) >= value - 2e-3

    def test_permutation_invariance_exact(self, example2):
        swapped = MatrixSet(tuple(reversed(example2.matrices)))
        for n in (1, 3, 5):
            b1 = product_bounds(example2, n)
            b2 = product_bounds(swapped, n)
            assert (b1.lower, b1.upper) == (b2.lower, b2.upper)
            assert trace_estimate(example2, n) == trace_estimate(swapped, n)

    def test_scaling(self, example1):
        scaled = MatrixSet(tuple(2.5 * m.entries for m in example1))
        for n in (1, 2, 4, 6):
            b1 = product_bounds(example1, n, euclidean(512))
            b2 = product_bounds(scaled, n, euclidean(512))
            assert b2.lower == pytest.approx(2.5 * b1.lower, rel=1e-12)
            assert b2.upper == pytest.approx(2.5 * b1.upper, rel=1e-12)

    def test_budget_refusal_names_requirement(self, example1):
        with pytest.raises(EnumerationBudgetError) as err:
            product_bounds(example1, 25)
        assert "33554432" in str(err.value)
        assert err.value.required == 2 ** 25

    def test_custom_cap_honored(self, example1):
        with pytest.raises(EnumerationBudgetError):
            product_bounds(example1, 5, cap=16)
        assert product_bounds(example1, 4, cap=16).depth == 4

    def test_worker_override_is_deterministic(self, example2):
        serial = product_bounds(example2, 7, workers=1)
        threaded = product_bounds(example2, 7, workers=4)
        assert (serial.lower, serial.upper) == (threaded.lower, threaded.upper)

    def test_env_var_validation(self, example1, monkeypatch):
        monkeypatch.setenv("JSR_RELAX_THREADS", "soup")
        with pytest.raises(ValueError):
            product_bounds(example1, 2)
        monkeypatch.setenv("JSR_RELAX_THREADS", "2")
        assert product_bounds(example1, 2).depth == 2

    def test_norm_descriptor(self, example1):
        assert "512" in product_bounds(example1, 1, euclidean(512)).norm_used


class TestTraceEstimate:
    def test_identity_family(self):
        fam = MatrixSet((np.eye(2),))
        assert trace_estimate(fam, 2) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_scalar_family(self):
        fam = MatrixSet((2.0 * np.eye(2),))
        assert trace_estimate(fam, 4) == pytest.approx(32.0 ** 0.25, rel=1e-15)

    def test_example1_depth_one(self, example1):
        assert trace_estimate(example1, 1) == 2.0

    def test_budget_refusal(self, example1):
        with pytest.raises(EnumerationBudgetError):
            trace_estimate(example1, 40)


class TestBatchSpectralRadii:
    def test_matches_scalar_closed_form(self):
        rng = np.random.default_rng(12)
        batch = rng.normal(size=(200, 2, 2))
        vectorized = _spectral_radii(batch)
        for k in range(200):
            assert vectorized[k] == pytest.approx(
                spectral_radius(Matrix(batch[k])), rel=1e-14, abs=1e-300
            )
