import math

import numpy as np
import pytest
import sympy

from bbd import (
    DomainError,
    NumericInstabilityError,
    c_alpha,
    curvature_check,
    curvature_matrix,
    fisher_information,
)
from bbd.info_geometry import SCALAR_FAMILIES, generator_second_derivative_at_one, rho_derivatives

FIXTURES = {
    "poisson": 2.0,
    "gaussian_mean": 0.5,
    "gaussian_sigma": 1.5,
    "exponential": 2.0,
    "binomial": 0.3,
    "pareto": 3.0,
}


class TestCurvatureConstant:
    def test_examples(self):
        assert c_alpha(2) == pytest.approx(0.1803369, abs=1e-7)
        assert c_alpha(-1) == pytest.approx(0.3606738, abs=1e-7)
        # mpmath, 50 digits
        assert c_alpha(10) == pytest.approx(0.23728053952574763121, rel=1e-14)
        assert c_alpha(math.inf) == 0.25

    def test_tends_to_quarter(self):
        assert c_alpha(1e6) == pytest.approx(0.25, rel=1e-5)
        assert c_alpha(-1e6) == pytest.approx(0.25, rel=1e-5)

    @pytest.mark.parametrize("alpha", list(np.geomspace(1.01, 1e5, 10)) + list(-np.geomspace(1e-3, 1e5, 10)))
    def test_scaled_generator_consistency(self, alpha):
        expected = generator_second_derivative_at_one(alpha) * (-1 / math.log1p(-1 / alpha))
        assert c_alpha(alpha) == pytest.approx(expected, rel=1e-13)
        assert c_alpha(alpha) > 0

    def test_generator_second_derivative_symbolic(self):
        x, a = sympy.symbols("x alpha", positive=True)
        f = -1 + (1 - sympy.sqrt(x)) / a
        second = sympy.diff(f, x, 2).subs(x, 1)
        assert sympy.simplify(second - 1 / (4 * a)) == 0
        for value in (1.5, 2.0, -1.0, 10.0):
            assert generator_second_derivative_at_one(value) == pytest.approx(1 / (4 * value))


class TestFisherInformation:
    @pytest.mark.parametrize("family", SCALAR_FAMILIES)
    def test_numeric_matches_analytic(self, family):
        theta = FIXTURES[family]
        analytic = fisher_information(family, theta)
        numeric = fisher_information(family, theta, mode="numeric")
        assert numeric == pytest.approx(analytic, rel=1e-6)

    def test_known_values(self):
        assert fisher_information("poisson", 4.0) == 0.25
        assert fisher_information("binomial", 0.5, n=20) == pytest.approx(80.0)
        assert fisher_information("gaussian_mean", 0.0, sigma=2.0) == 0.25

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            fisher_information("cauchy", 1.0)
        with pytest.raises(DomainError):
            fisher_information("poisson", 1.0, mode="exact")
        with pytest.raises(DomainError):
            fisher_information("poisson", 1.0, sigma=2.0)


class TestCurvature:
    @pytest.mark.parametrize("family", SCALAR_FAMILIES)
    @pytest.mark.parametrize("alpha", [-10.0, -1.0, 1.5, 2.0, 10.0])
    def test_scalar_families(self, family, alpha):
        rep = curvature_check(family, FIXTURES[family], alpha)
        assert rep.rel_error <= 1e-3
        assert rep.richardson == pytest.approx(rep.predicted, rel=1e-6)
        assert rep.z_at_theta == 0.0
        assert abs(rep.first_difference) <= 1e-6 * rep.predicted

    def test_poisson_value(self):
        rep = curvature_check("poisson", 2.0, 2)
        assert rep.predicted == pytest.approx(0.1803369 / 2, abs=1e-7)

    def test_gaussian_matrix_examples(self):
        rep = curvature_matrix((0.0, 1.0), 2)
        np.testing.assert_allclose(np.diag(rep.fd_curvature), [0.1803369, 0.3606738], atol=1e-6)
        rep = curvature_matrix((0.0, 2.0), 2)
        np.testing.assert_allclose(np.diag(rep.fd_curvature), [0.0450842, 0.0901685], atol=1e-6)
        assert abs(rep.fd_curvature[0, 1]) <= 1e-6
        assert rep.rel_error <= 1e-3

    def test_tiny_step_detected(self):
        with pytest.raises(NumericInstabilityError):
            curvature_check("poisson", 2.0, 2, h=1e-9)

    def test_rejections(self):
        with pytest.raises(DomainError):
            curvature_check("poisson", 2.0, math.inf)
        with pytest.raises(DomainError):
            curvature_check("poisson", 2.0, 2, h=0.0)
        with pytest.raises(DomainError):
            curvature_matrix((0.0, -1.0), 2)

    def test_rho_derivatives(self):
        first, second = rho_derivatives("poisson", 2.0, h=1e-4)
        assert abs(first) <= 1e-8
        # d2 rho / d phi2 at phi = theta is -I/4
        assert second == pytest.approx(-0.25 * 0.5, rel=1e-4)

    def test_to_dict(self):
        d = curvature_matrix((0.0, 1.0), -1).to_dict()
        assert d["family"] == "gaussian" and d["theta"] == [0.0, 1.0]
        assert isinstance(d["fd_curvature"], list)
