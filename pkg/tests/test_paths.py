import pytest
from lib.contfrac import ballot
from lib.errors import DomainError, FixedPointError, SizeLimitError
from lib.formulas import theta_sum
from lib.paths import (LatticePath, check_size, enumerate_paths, family_size, is_dyck_prefix,
                       marked_peak_involution, normalize_kind, path_weight, penaud_decompose, penaud_fibers,
                       transfer_weight_sum, weight_pair, weight_sequence, weight_sum)
from lib.qcore import Q, Y, Y_INV, qint


class TestLatticePath:
    @pytest.mark.parametrize("code", ["DU", "UUD", "UXD"])
    def test_invalid(self, code):
        with pytest.raises(DomainError):
            LatticePath(code)

    def test_half_length(self):
        assert LatticePath("UHD").half_length == 2
        assert LatticePath("").half_length == 0

    def test_membership(self):
        p = LatticePath("uUDd")
        assert p.belongs_to('marked-dyck')
        assert p.belongs_to('md_star')
        assert not p.belongs_to('dyck')
        assert not LatticePath("Uudd").belongs_to('md_star')

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            normalize_kind('motzkin')


class TestEnumeration:
    def test_lexicographic(self):
        assert [p.code for p in enumerate_paths('dyck', 2)] == ["UDUD", "UUDD"]
        assert [p.code for p in enumerate_paths('schroder', 1)] == ["H", "UD"]

    @pytest.mark.parametrize("kind,sizes", [
        ('dyck', [1, 1, 2, 5, 14, 42]),
        ('schroder', [1, 2, 6, 22, 90, 394]),
        ('marked_dyck', [1, 4, 32]),
        ('md_star', [1, 3, 21]),
        ('marked_schroder', [1, 5]),
    ])
    def test_family_sizes(self, kind, sizes):
        assert [family_size(kind, n) for n in range(len(sizes))] == sizes

    @pytest.mark.parametrize("kind", ['dyck', 'schroder', 'marked_schroder', 'md_star'])
    def test_stream_matches_count(self, kind):
        streamed = list(enumerate_paths(kind, 3))
        assert len(streamed) == family_size(kind, 3)
        assert streamed == sorted(streamed)
        assert all(p.belongs_to(kind) for p in streamed)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            check_size('marked_schroder', 6, limit=100)
        assert check_size('schroder', 4, limit=100) == 90


class TestWeights:
    def test_sequences(self):
        assert weight_sequence('U')(3) == qint(3)
        assert weight_sequence('U-1')(2) == Q
        assert weight_sequence('J')(1) == 1 + Y * Q
        assert weight_sequence('JP')(1) == 1 + Y_INV * Q
        assert weight_sequence('J')(2) == 1 - Q ** 2
        assert weight_sequence('G1')(1) == -Q
        assert weight_sequence('G2')(3) == -Q ** 2
        assert weight_sequence('UA', a=2)(1) == qint(3)

    def test_bad_specs(self):
        with pytest.raises(DomainError):
            weight_sequence('W')
        with pytest.raises(DomainError):
            weight_pair('V')

    def test_path_weight(self):
        w = weight_pair('U,U')
        assert path_weight(LatticePath("UUDD"), w) == qint(2) ** 2
        assert path_weight(LatticePath("UHD"), w) == -1
        assert path_weight(LatticePath("uD"), w) == 1

    def test_schroder_triple_product(self):
        assert weight_sum('schroder', 1, weight_pair('J,JP')) == Y * Q + Q * Y_INV + Q ** 2
        assert weight_sum('schroder', 1, weight_pair('J,JP')) == theta_sum(1).value

    @pytest.mark.parametrize("kind,spec", [
        ('dyck', 'U,ONE'),
        ('schroder', 'J,JP'),
        ('md_star', 'V-1,V-1'),
        ('md_star', 'G1,G2'),
        ('marked_schroder', 'U-1,U-1'),
    ])
    def test_transfer_matches_enumeration(self, kind, spec):
        w = weight_pair(spec)
        assert transfer_weight_sum(kind, 3, w) == weight_sum(kind, 3, w)

    def test_touchard_as_dyck_sum(self):
        assert weight_sum('dyck', 2, weight_pair('U,ONE')) == 2 + Q


class TestMarkedPeakInvolution:
    def test_swaps(self):
        assert marked_peak_involution(LatticePath("H")).code == "ud"
        assert marked_peak_involution(LatticePath("ud")).code == "H"
        assert marked_peak_involution(LatticePath("UHudD")).code == "UududD"

    def test_fixed_points(self):
        with pytest.raises(FixedPointError):
            marked_peak_involution(LatticePath("uUDd"))

    def test_sign_reversing(self):
        w = weight_pair('J-1,JP-1')
        for p in enumerate_paths('marked_schroder', 3):
            if p.belongs_to('md_star'):
                continue
            image = marked_peak_involution(p)
            assert marked_peak_involution(image) == p
            assert path_weight(image, w) == -path_weight(p, w)

    def test_cancellation_leaves_md_star(self):
        w = weight_pair('V-1,V-1')
        assert transfer_weight_sum('marked_schroder', 3, w) == transfer_weight_sum('md_star', 3, w)


class TestPenaud:
    def test_decompose(self):
        d = penaud_decompose(LatticePath("udUD"))
        assert d.core.code == "UD"
        assert d.prefix == "UDUU"
        assert d.k == 1
        assert is_dyck_prefix(d.prefix) == (True, 2)

    def test_all_marked(self):
        d = penaud_decompose(LatticePath("ud"))
        assert d.core.code == ""
        assert d.k == 0

    def test_needs_marked_dyck(self):
        with pytest.raises(DomainError):
            penaud_decompose(LatticePath("UHD"))

    def test_fibers_are_ballot_numbers(self):
        census = penaud_fibers(3)
        assert sorted(census) == [0, 1, 2, 3]
        for k, cores in census.items():
            assert len(cores) == family_size('md_star', k)
            assert set(cores.values()) == {ballot(3, k)}

    def test_dyck_prefix(self):
        assert is_dyck_prefix("UUD") == (True, 1)
        assert is_dyck_prefix("UDD") == (False, -1)
