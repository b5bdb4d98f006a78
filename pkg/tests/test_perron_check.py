import math

import numpy as np
import pytest

from zetabounds import perron_check as pc
from zetabounds.errors import DomainError


class TestPerronError:
    def test_large_t_limit(self):
        x, sigma = 50.0, 1.2
        want = 4.0 * math.exp(sigma) * 1.0
        assert pc.perron_error(2.0, 1.0, x, 1e15, sigma) == pytest.approx(want, rel=1e-6)

    def test_monotonicities(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            x = rng.uniform(10.0, 1e6)
            t_height = rng.uniform(10.0, 1e5)
            g, psi, sigma = rng.uniform(1, 5), rng.uniform(1, 5), rng.uniform(0.5, 2)
            base = pc.perron_error(g, psi, x, t_height, sigma)
            assert pc.perron_error(g, psi, x, 2 * t_height, sigma) < base
            assert pc.perron_error(g, psi, 2 * x, t_height, sigma) > base
            assert pc.perron_error(2 * g, psi, x, t_height, sigma) > base
            assert pc.perron_error(g, 2 * psi, x, t_height, sigma) > base

    def test_corollary_caps_sampled(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            x = math.exp(rng.uniform(2.0, math.log(1e8)))
            assert pc.mertens_truncation_cost(x) <= 22.2 * math.sqrt(x) * math.log(math.e * x)
            y = math.exp(rng.uniform(0.0, 10.0))
            assert pc.kfree_truncation_cost(x, y) <= 26.0 * y * math.log(math.e * x)

    def test_domain(self):
        with pytest.raises(DomainError):
            pc.perron_error(1.0, 1.0, 0.5, 10.0, 1.0)
        with pytest.raises(DomainError):
            pc.zeta_sigma_cap(1.0)


class TestNumericPerron:
    def test_boundary_x_runs(self):
        rep = pc.numeric_perron_mertens(7.5)
        assert rep.T >= 1.0
        assert rep.residual <= rep.bound

    def test_golden_residual_at_hundred(self):
        rep = pc.numeric_perron_mertens(100.5)
        assert rep.sieve_value == 1
        assert rep.residual == pytest.approx(1.157849, abs=1e-3)
        assert rep.residual <= 50.0
        assert abs(rep.integral_value - rep.sieve_value) <= 2.0

    def test_precision_tightens_with_tolerance(self):
        loose = pc.numeric_perron_mertens(500.5, quad_tol=1e-3)
        tight = pc.numeric_perron_mertens(500.5, quad_tol=1e-8)
        assert abs(loose.integral_value - tight.integral_value) <= 2e-3

    def test_preconditions(self):
        with pytest.raises(DomainError):
            pc.numeric_perron_mertens(100.0)  # integer
        with pytest.raises(DomainError):
            pc.numeric_perron_mertens(5.0)  # below e^2
        with pytest.raises(DomainError):
            pc.numeric_perron_mertens(2e4)

    def test_csv(self):
        import io

        rep = pc.numeric_perron_mertens(50.5)
        buf = io.StringIO()
        pc.report_to_csv(rep, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "x,sigma,T,integral_value,sieve_value,residual,bound"
        assert len(lines) == 2
