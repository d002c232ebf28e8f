"""Unit tests for specialization certificates (tools/specialize.py)."""
import operator
from functools import reduce

import numpy as np
import pytest

from tools.base_field import get_base_field
from tools.drinfeld import g_tilde_pair
from tools.errors import CombinationExhaustedError, DegenerateInputError
from tools.polyring import BiPoly, UPoly
from tools.specialize import (
    PATH_BEZOUT,
    PATH_RESULTANT,
    PATH_TRIVIAL,
    PATH_UNIT,
    STATUS_EXCLUDED,
    STATUS_FAIL,
    STATUS_PASS,
    certificate,
    common_zero_count_generic,
    disc_sf,
    draw_degree,
    scan_certificate,
    specialized_gcd,
    verify_at,
)

# Every combination over F_2 of the last two members shares a root with the
# first: alpha = 0 gives z, alpha = 1 gives (z + t)(z + 1). Coefficients from
# a proper extension of F_2 avoid both.
UNLUCKY_SYSTEM = ("z^2+t*z", "z", "z^2+t*z+t")


@pytest.fixture
def system(bipoly):
    return lambda *texts: [bipoly(text) for text in texts]


class TestGenericCount:

    def test_common_factor(self, system, bipoly):
        h, count = common_zero_count_generic(system("z+t", "z+t"))
        assert h == bipoly("z+t")
        assert count == 1

    def test_coprime(self, system, bipoly):
        h, count = common_zero_count_generic(system("z", "z+t"))
        assert h == bipoly("1")
        assert count == 0

    def test_repeated_factor_counts_once(self, system, bipoly):
        fs = [bipoly("z+t") ** 2, bipoly("z+t") * bipoly("z+1")]
        h, count = common_zero_count_generic(fs)
        assert h == bipoly("z+t")
        assert count == 1

    def test_zero_members_are_ignored(self, system, gf2, bipoly):
        h, count = common_zero_count_generic([BiPoly.zero(gf2), bipoly("z^2+t*z+1")])
        assert count == 2

    def test_all_zero_raises(self, gf2):
        with pytest.raises(DegenerateInputError):
            common_zero_count_generic([BiPoly.zero(gf2)])

    def test_disc_sf(self, bipoly, upoly):
        assert disc_sf(bipoly("1")) == upoly("1")
        # z^2 + t*z + 1 has discriminant t^2 in characteristic 2
        assert disc_sf(bipoly("z^2+t*z+1")) == upoly("t^2")


class TestCertificate:
    """Tests for the certificate paths."""

    def test_linear_pair(self, system, upoly):
        cert = certificate(system("z", "z+t"))
        assert cert.path == PATH_RESULTANT
        assert cert.cert == upoly("t")
        assert cert.generic_count == 0
        assert cert.seed_trail == (0,)

    def test_equal_members_take_unit_path(self, system, upoly):
        cert = certificate(system("z-t", "z-t"))
        assert cert.path == PATH_UNIT
        assert cert.cert == upoly("1")
        assert cert.generic_count == 1

    def test_single_polynomial(self, system, upoly):
        cert = certificate(system("t*z^2+z"))
        assert cert.path == PATH_TRIVIAL
        assert cert.factors.delta == upoly("1")
        assert cert.factors.lc_h == upoly("t")
        assert cert.cert == upoly("t")
        assert cert.generic_count == 2

    def test_content_of_single_polynomial(self, system, upoly):
        # t*z vanishes identically at t = 0
        fs = system("t*z")
        cert = certificate(fs)
        assert cert.factors.content_h == upoly("t")
        assert cert.cert == upoly("t")
        assert cert.paper_cert == upoly("t")
        assert scan_certificate(fs, cert, ell_max=3).failed == 0

    def test_content_over_f3(self, bipoly, upoly, gf3):
        # (2t + 1)z + t + 2 = (t + 2)(2z + 1) vanishes identically at t = 1
        fs = [bipoly("2*t*z+z+t+2", gf3)]
        cert = certificate(fs)
        assert cert.factors.content_h == upoly("t+2", gf3)
        summary = scan_certificate(fs, cert, ell_max=2)
        assert summary.failed == 0
        assert summary.paper_counterexamples == 0

    def test_content_shared_by_the_system(self, system, upoly):
        fs = system("t*z", "t*z+t")
        cert = certificate(fs)
        assert cert.factors.content_h == upoly("t")
        assert scan_certificate(fs, cert, ell_max=3).failed == 0

    def test_paper_strict_drops_guards(self, system, upoly):
        cert = certificate(system("t*z^2+z"), paper_strict=True)
        assert cert.cert == upoly("1")
        assert cert.paper_cert == cert.cert

    def test_deterministic(self, system):
        fs = system("z^2+1", "z+t", "z^2+t*z+t^2+1", "t*z+1")
        assert certificate(fs, seed=5) == certificate(fs, seed=5)

    def test_degree_bounds(self, system):
        fs = system("z^2+t", "z+t^2", "z^2+t*z+1")
        cert = certificate(fs, check_identity=True)
        assert cert.identity_checked is True
        assert cert.factors.delta.degree <= cert.delta_bound
        assert cert.cert.degree <= cert.guarded_bound
        assert cert.paper_cert.degree <= cert.paper_bound

    def test_identity_for_resultant_path(self, system):
        cert = certificate(system("z^2", "z+1", "z+t"), check_identity=True)
        assert cert.path == PATH_RESULTANT
        assert cert.identity_checked is True

    def test_bezout_fallback(self, system, upoly):
        fs = system(*UNLUCKY_SYSTEM)
        cert = certificate(fs, retry_limit=3, check_identity=True, sample_degree=1)
        assert cert.path == PATH_BEZOUT
        assert cert.seed_trail == (0, 1, 2, 3)
        assert cert.identity_checked is True
        assert not cert.cert.is_zero

    def test_exhausted_without_fallback(self, system):
        with pytest.raises(CombinationExhaustedError) as exc_info:
            certificate(system(*UNLUCKY_SYSTEM), retry_limit=2, fallback=False, sample_degree=1)
        assert exc_info.value.seed_trail == (0, 1, 2)

    def test_all_zero_raises(self, gf2):
        with pytest.raises(DegenerateInputError):
            certificate([BiPoly.zero(gf2), BiPoly.zero(gf2)])


class TestSampleDegree:
    """Random coefficients come from F_{q^k} with q^k > 2D."""

    @pytest.mark.parametrize("q,degree,expected", [
        (2, 1, 2),
        (2, 2, 3),
        (3, 1, 1),
        (3, 2, 2),
        (4, 2, 2),
        (16, 7, 1),
    ])
    def test_draw_degree(self, q, degree, expected):
        assert draw_degree(q, degree) == expected

    def test_pair_needs_no_draw(self, system):
        cert = certificate(system("z^2+t", "z+t^2"))
        assert cert.sample_degree == 1

    def test_three_members_draw_from_extension(self, system, gf2):
        fs = system("z^2+t", "z+t^2", "z^2+t*z+1")
        cert = certificate(fs, check_identity=True)
        assert cert.sample_degree == 3
        assert cert.path == PATH_RESULTANT
        assert cert.identity_checked is True
        assert cert.factors.delta.field == gf2
        assert cert.factors.delta.degree <= cert.delta_bound
        assert scan_certificate(fs, cert, ell_max=3).failed == 0

    def test_extension_draw_escapes_unlucky_system(self, system):
        fs = system(*UNLUCKY_SYSTEM)
        cert = certificate(fs, check_identity=True)
        assert cert.path == PATH_RESULTANT
        assert cert.sample_degree == 3
        assert cert.identity_checked is True
        assert scan_certificate(fs, cert, ell_max=3).failed == 0

    def test_explicit_sample_degree(self, system):
        fs = system("z^2+t", "z+t^2", "z^2+t*z+1")
        cert = certificate(fs, sample_degree=2, check_identity=True)
        assert cert.sample_degree == 2
        assert cert.identity_checked is True


class TestVerification:
    """Tests for pointwise and exhaustive verification."""

    def test_verify_at(self, system, f4):
        fs = system("z", "z+t")
        cert = certificate(fs)
        excluded = verify_at(fs, cert, f4.zero)
        assert excluded.status == STATUS_EXCLUDED
        assert excluded.n_tau == 1
        assert excluded.paper_counterexample is False
        passed = verify_at(fs, cert, f4.gen)
        assert passed.status == STATUS_PASS
        assert passed.n_tau == 0

    def test_specialized_gcd_of_vanishing_system(self, system, f4):
        fs = system("t*z", "t*z^2+t")
        assert specialized_gcd(fs, f4.zero) is None
        cert = certificate(fs)
        outcome = verify_at(fs, cert, f4.zero)
        assert outcome.n_tau is None
        assert outcome.status == STATUS_EXCLUDED

    def test_scan_linear_pair(self, system):
        fs = system("z", "z+t")
        summary = scan_certificate(fs, certificate(fs), ell_max=2)
        assert summary.per_ell[1] == {STATUS_PASS: 1, STATUS_EXCLUDED: 1, STATUS_FAIL: 0}
        assert summary.per_ell[2] == {STATUS_PASS: 3, STATUS_EXCLUDED: 1, STATUS_FAIL: 0}
        assert (summary.passed, summary.excluded, summary.failed) == (4, 2, 0)

    def test_scan_equal_members(self, system):
        fs = system("z-t", "z-t")
        summary = scan_certificate(fs, certificate(fs), ell_max=3)
        assert summary.failed == 0
        assert summary.excluded == 0

    @pytest.mark.parametrize("factored", [
        [["z^2+t"], ["z+t^2"]],
        [["z^2+t*z+1"], ["t*z^2+z+t"]],
        [["z+t", "z+1"], ["z+t", "z+t^2"]],
        [[text] for text in UNLUCKY_SYSTEM],
    ])
    def test_certificate_is_sound(self, bipoly, factored):
        fs = [reduce(operator.mul, (bipoly(f) for f in factors)) for factors in factored]
        summary = scan_certificate(fs, certificate(fs), ell_max=3)
        assert summary.failed == 0

    def test_drinfeld_pair_is_sound(self, ratfunc):
        fs = g_tilde_pair(ratfunc("1"), ratfunc("t"), r=2, m=1, cap=1000)
        cert = certificate(fs)
        summary = scan_certificate(fs, cert, ell_max=4)
        assert summary.failed == 0
        assert summary.passed + summary.excluded == 2 + 4 + 8 + 16

    @pytest.mark.slow
    def test_drinfeld_pair_m2_is_sound(self, ratfunc):
        fs = g_tilde_pair(ratfunc("t/(t+1)"), ratfunc("t"), r=2, m=2, cap=1000)
        summary = scan_certificate(fs, certificate(fs), ell_max=3)
        assert summary.failed == 0


def _random_system(rng, field, size, degree, height):
    fs = []
    for _ in range(size):
        rows = [rng.integers(0, field.q, size=height + 1).tolist() for _ in range(degree + 1)]
        rows[-1][0] = rows[-1][0] or 1
        fs.append(BiPoly(field, [UPoly(field, row) for row in rows]))
    return fs


class TestRandomSystems:
    """Exhaustive scans of certificates for seeded random systems."""

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [2, 3])
    def test_random_systems_are_sound(self, p):
        field = get_base_field(p)
        rng = np.random.default_rng(p)
        for trial in range(40):
            size = int(rng.integers(1, 4))
            degree = int(rng.integers(1, 4))
            height = int(rng.integers(0, 4))
            fs = _random_system(rng, field, size, degree, height)
            cert = certificate(fs, seed=trial)
            summary = scan_certificate(fs, cert, ell_max=2)
            assert summary.failed == 0, [f.to_text() for f in fs]

    @pytest.mark.slow
    def test_random_systems_with_shared_content(self, gf3):
        rng = np.random.default_rng(11)
        for trial in range(20):
            content = UPoly(gf3, rng.integers(0, 3, size=3).tolist() + [1])
            fs = [f.scale(content) for f in _random_system(rng, gf3, int(rng.integers(1, 3)), 2, 1)]
            cert = certificate(fs, seed=trial)
            assert content.divides(cert.factors.content_h)
            assert scan_certificate(fs, cert, ell_max=2).failed == 0
