import math

import numpy as np
import pytest

from zetabounds import bound_engine as be
from zetabounds import table_optimizer as topt
from zetabounds.errors import RangeError

from reference_rows import KFREE_ROWS, MERTENS_ROWS


class TestExponentConversion:
    def test_published_values(self):
        assert topt.x_exponent_from_u0(10.472, "mertens") == pytest.approx(4.486728, abs=1e-5)
        assert topt.x_exponent_from_u0(54.13, "kfree") == pytest.approx(23.14614, abs=1e-5)
        assert topt.x_exponent_from_u0(90.22, "mertens") == pytest.approx(39.12086, abs=1e-4)

    def test_matches_direct_arithmetic(self):
        for u0 in (10.472, 30.08, 90.22):
            direct = math.log10(2 * (math.exp(u0) - math.log(1.5 * math.e)) / math.log(10))
            assert topt.x_exponent_from_u0(u0, "mertens") == pytest.approx(direct, rel=1e-12)

    def test_huge_u0_no_overflow(self):
        got = topt.x_exponent_from_u0(540.10, "kfree")
        assert got == pytest.approx(234.2002, abs=1e-3)


class TestMinimizers:
    def test_first_row_minimum(self):
        sigma0, t0, alpha0 = topt.min_alpha0(10.472)
        assert sigma0 == 0.5805
        assert t0 == pytest.approx(38.0820263, abs=1e-3)
        assert alpha0 == pytest.approx(0.998969, abs=1e-5)

    def test_restricted_grid_cannot_beat_full(self):
        u0 = 10.472
        _, _, full = topt.min_alpha0(u0)
        sub = topt.SIGMA_GRID[:100]
        t = np.linspace(30.0, 50.0, 400)
        best = min(
            float(np.min(s + 0.5 * be.omega1(s, t, u0))) for s in sub
        )
        assert best >= full - 1e-12

    def test_kfree_first_row_minimum(self):
        sigma0, t1, beta0, alpha1 = topt.min_beta0(54.13)
        assert sigma0 == 0.5140
        assert t1 == pytest.approx(30.3977424, abs=1e-3)
        assert beta0 == pytest.approx(0.499874, abs=1e-5)
        assert alpha1 == pytest.approx(0.584406, abs=1e-5)


class TestFindU0:
    def test_mertens_first_target(self):
        row = topt.find_u0(0.999, "mertens")
        assert row.u0 == pytest.approx(10.472, abs=1e-9)
        assert row.sigma0 == 0.5805
        assert row.attained < 0.999
        assert row.coeff == pytest.approx(0.516044, abs=1e-5)
        assert row.exponent10 == pytest.approx(4.486728, abs=1e-4)

    def test_unachievable_target(self):
        with pytest.raises(RangeError):
            topt.find_u0(0.45, "mertens")
        with pytest.raises(RangeError):
            topt.find_u0(1.2, "mertens")
        with pytest.raises(RangeError):
            topt.find_u0(0.3, "kfree")

    def test_smaller_target_needs_larger_u0(self):
        a = topt.find_u0(0.9, "mertens")
        b = topt.find_u0(0.85, "mertens")
        assert b.u0 > a.u0


class TestPublish:
    def test_ceiling_rule(self):
        assert topt.ceil_at(0.516044, 3) == 0.517
        assert topt.ceil_at(13.00239, 3) == 13.003
        assert topt.ceil_at(0.062108, 4) == 0.0622
        assert topt.ceil_at(19.52983, 3) == 19.53
        assert topt.ceil_at(234.2002, 2) == 234.21
        assert topt.ceil_at(0.084900, 4) == 0.0849
        assert topt.ceil_at(0.0849004, 4) == 0.0850

    def test_publish_rows_columns(self):
        row = topt.OptRow(
            kind="mertens",
            target=0.999,
            u0=10.472,
            sigma0=0.5805,
            t0=38.082,
            attained=0.998969,
            coeff=0.516044,
            exponent10=4.486728,
        )
        pub = topt.publish_rows([row])[0]
        assert pub["coeff"] == 0.517
        assert pub["exponent10"] == 4.487


class TestShiftInequality:
    def test_safe_shift_under_true_height(self):
        # u0 - 0.6932 never exceeds log log(3e sqrt(x0)/2)
        for row in KFREE_ROWS:
            u0 = row[1]
            log_x0 = math.exp(u0) - be.LOG_3E_HALF
            true_u = be.u_from_log_x0(log_x0, "mertens")
            assert u0 - 0.6932 <= true_u


class TestRowPipelines:
    def test_mertens_row_matches_reference(self):
        for target, u0, sigma0, t0, alpha0, n1, x_exp in MERTENS_ROWS[:2]:
            row = topt.mertens_row(u0, target)
            assert row.sigma0 == sigma0
            assert row.t0 == pytest.approx(t0, abs=1e-3)
            assert row.attained == pytest.approx(alpha0, abs=1e-5)
            assert row.coeff == pytest.approx(n1, abs=1e-5)
            assert row.exponent10 == pytest.approx(x_exp, abs=1e-4)

    def test_kfree_row_matches_reference(self):
        target, u0, sigma0, t1, alpha1, beta0, n2, y_exp = KFREE_ROWS[0]
        row = topt.kfree_row(u0, target)
        assert row.sigma0 == sigma0
        assert row.t0 == pytest.approx(t1, abs=1e-3)
        assert row.attained == pytest.approx(beta0, abs=1e-5)
        assert row.coeff == pytest.approx(n2, abs=1e-5)
        assert row.exponent10 == pytest.approx(y_exp, abs=1e-4)
