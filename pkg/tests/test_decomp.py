import math

import pytest

from divgap.decomp import (
    CounterexampleError,
    DecompRecord,
    decompose,
    gap_bound_thm1,
    gap_bound_thm2,
    verify_identities,
)
from divgap.pairs import PairRecord, SearchConfig, scan


class TestDecompose:
    def test_pair_2_8(self):
        rec = decompose(PairRecord(2, 8, 208))
        assert (rec.D, rec.x, rec.y) == (2, 1, 4)
        assert (rec.T, rec.m, rec.s) == (5, 13, 897)
        assert rec.lam == 207 * 208

    def test_pair_2_10(self):
        rec = decompose(PairRecord(2, 10, 505))
        assert (rec.D, rec.x, rec.y) == (2, 1, 5)
        assert (rec.T, rec.m, rec.s) == (1, 101, 2121)
        assert rec.lam == 504 * 505

    def test_pair_3_12(self):
        rec = decompose(PairRecord(3, 12, 232))
        assert (rec.D, rec.x, rec.y) == (3, 1, 4)
        assert (rec.T, rec.m, rec.s) == (5, 29, 2233)

    def test_pair_3_15(self):
        rec = decompose(PairRecord(3, 15, 565))
        assert (rec.D, rec.x, rec.y) == (3, 1, 5)
        assert rec.m * rec.T == 226
        assert rec.s == 226 * 226 - 565 * 81

    def test_rejects_non_pair(self):
        with pytest.raises(ValueError):
            decompose(PairRecord(2, 9, 300))
        with pytest.raises(ValueError):
            decompose(PairRecord(2, 8, 207))
        with pytest.raises(ValueError):
            decompose(PairRecord(8, 2, 208))

    def test_reconstruction(self):
        for pair in scan(SearchConfig(2, 25, 2500)):
            rec = decompose(pair)
            assert rec.D * rec.x == pair.a
            assert rec.D * rec.y == pair.b
            assert math.gcd(rec.x, rec.y) == 1
            assert rec.s >= 1
            assert rec.lam == (pair.t - 1) * pair.t


class TestVerifyIdentities:
    def test_all_hold_on_survey_sample(self):
        count = 0
        for pair in scan(SearchConfig(2, 20, 3000)):
            report = verify_identities(decompose(pair))
            assert report.all_ok, (pair, report)
            count += 1
        assert count > 50

    def test_trivial_pairs_also_verify(self):
        for pair in scan(SearchConfig(1, 1, 50, include_trivial=True)):
            assert verify_identities(decompose(pair)).all_ok

    def test_tampered_s_flips_expected_checks(self):
        rec = decompose(PairRecord(2, 8, 208))
        bad = rec._replace(s=rec.s + 1)
        report = verify_identities(bad)
        assert not report.eq3
        assert not report.eq4
        assert not report.eq5
        assert not report.s_divides_lam
        assert report.eq0 and report.eq1 and report.eq2
        assert report.gcd_mT_D
        assert not report.all_ok

    def test_tampered_m_flips_checks(self):
        rec = decompose(PairRecord(2, 8, 208))
        bad = rec._replace(m=rec.m + 1)
        report = verify_identities(bad)
        assert not report.eq1
        assert not report.eq2
        assert not report.all_ok

    def test_identity_values_pair_2_8(self):
        # eq3: 897 * 1 = 208 * 4 + 65; eq5: 897 * 15 = 207 * 65
        rec = decompose(PairRecord(2, 8, 208))
        assert rec.s * rec.x**2 == 208 * 4 + 65
        assert rec.s * (rec.y**2 - rec.x**2) == 207 * 65
        assert 43056 % rec.s == 0


class TestGapBoundThm1:
    def test_frozen_values(self):
        assert gap_bound_thm1(2) == pytest.approx(
            1.9104390131946412, rel=1e-9
        )
        assert gap_bound_thm1(100) == pytest.approx(
            0.7520111031534606, rel=1e-9
        )
        assert gap_bound_thm1(10**6) == pytest.approx(
            12.924751065033224, rel=1e-9
        )

    def test_small_arguments(self):
        assert gap_bound_thm1(1) == 0.0
        assert gap_bound_thm1(10) == pytest.approx(
            11.098823909992598, rel=1e-9
        )

    def test_domain(self):
        with pytest.raises(ValueError):
            gap_bound_thm1(0)
        with pytest.raises(ValueError):
            gap_bound_thm1(0.5)


class TestGapBoundThm2:
    def test_frozen_values(self):
        assert gap_bound_thm2(1, 0.5) == 1.0
        assert gap_bound_thm2(100, 1 / 14) == pytest.approx(100.0, rel=1e-9)
        assert gap_bound_thm2(100, 0.001) == pytest.approx(
            138.31113424845594, rel=1e-9
        )
        assert gap_bound_thm2(1000, 0.01) == pytest.approx(
            1528.5713462632068, rel=1e-9
        )

    def test_epsilon_domain(self):
        for eps in (0, -0.1, 15 / 14, 2):
            with pytest.raises(ValueError):
                gap_bound_thm2(100, eps)

    def test_a_domain(self):
        with pytest.raises(ValueError):
            gap_bound_thm2(0, 0.5)

    def test_monotone_in_epsilon(self):
        assert gap_bound_thm2(50, 0.5) > gap_bound_thm2(50, 0.9)
