import pytest
from lib.configs import (Arrow, DeltaConfig, HORIZONTAL, HalfConfig, K_ARROW, KM1_ARROW, Overpartition,
                         Partition, VERTICAL, config_to_mdstar, config_weight_sum, delta_minus_violations,
                         delta_plus_transfer_sum, embed_previous, enumerate_configs, fixed_points, involution_f,
                         is_delta_minus, is_delta_plus, is_embedded_previous, mdstar_to_config, miniatures,
                         op_closure, overpartition_involution, phi, phi1, phi_trace, psi, psi1, psi_trace,
                         render, staircase_partitions, transpose, weights)
from lib.errors import DomainError, FixedPointError, SizeLimitError
from lib.formulas import gauss_sum, triple_sum
from lib.paths import LatticePath, enumerate_paths, family_size
from lib.qcore import MultiLaurent, Q


def h(i, kind=K_ARROW):
    return Arrow(HORIZONTAL, kind, i)


def v(j, kind=K_ARROW):
    return Arrow(VERTICAL, kind, j)


def config(k, parts=(), *arrows):
    return DeltaConfig(k, Partition(parts), frozenset(arrows))


class TestPartitions:
    def test_normalization(self):
        assert Partition((2, 1, 0)).parts == (2, 1)
        with pytest.raises(DomainError):
            Partition((1, 2))

    def test_transpose(self):
        assert Partition((3, 1)).transpose() == Partition((2, 1, 1))

    def test_staircase(self):
        assert [p.parts for p in staircase_partitions(2)] == [(), (1,), (1, 1), (2,), (2, 1)]

    def test_overpartition(self):
        mu = Overpartition.from_parts([(1, True), (2, False)])
        assert str(mu) == "(2,1')"
        assert mu.weight() == -Q ** 3
        assert overpartition_involution(mu) == Overpartition(((2, False), (1, False)))
        with pytest.raises(DomainError):
            Overpartition(((1, True), (1, False)))


class TestDeltaConfig:
    def test_derived_lengths(self):
        c = config(3, (1,), h(2), v(1, KM1_ARROW))
        assert c.length(h(2)) == 2
        assert c.length(v(1, KM1_ARROW)) == 1
        assert c.norm == 3
        assert str(c) == "k=3 (1) [h2:k v1:km1]"

    def test_validation(self):
        with pytest.raises(DomainError):
            config(2, (2,))
        with pytest.raises(DomainError):
            config(1, (), h(1), h(1, KM1_ARROW))
        with pytest.raises(DomainError):
            config(1, (), h(2))
        with pytest.raises(DomainError):
            Arrow('d', K_ARROW, 1)

    def test_corners(self):
        c = config(1, (), h(1), v(1))
        assert c.outer_corners() == [(1, 1)]
        assert c.forbidden_corners() == [(1, 1)]
        assert not is_delta_plus(c)

    def test_transpose(self):
        assert transpose(config(1, (), h(1))) == config(1, (), v(1))
        c = config(3, (2,), h(2), v(3, KM1_ARROW))
        assert transpose(transpose(c)) == c

    def test_render(self):
        assert render(config(1, (), h(1))) == "-"
        assert render(config(2, (), h(2), v(2))) == ".|\n-"
        assert render(config(2, (1,), v(2, KM1_ARROW))) == "#.\n.\nlength 0: v2"


class TestFamilies:
    def test_delta_plus_one(self):
        family = list(enumerate_configs('delta_plus', 1))
        assert set(family) == {config(1), config(1, (), h(1)), config(1, (), v(1))}
        assert sorted(config_to_mdstar(c).code for c in family) == ["UD", "Ud", "uD"]

    def test_delta_plus_counts_match_md_star(self):
        for k in range(4):
            images = {config_to_mdstar(c) for c in enumerate_configs('delta_plus', k)}
            assert images == set(enumerate_paths('md_star', k))
            assert len(images) == family_size('md_star', k)

    def test_delta_minus_one(self):
        family = set(enumerate_configs('delta_minus', 1))
        assert family == {config(1), config(1, (), h(1)), config(1, (), v(1))}
        assert is_embedded_previous(config(1))
        assert set(fixed_points(1)) == {config(1, (), h(1)), config(1, (), v(1))}

    def test_half_configurations(self):
        family = list(enumerate_configs('half', 2))
        assert family == [HalfConfig(2, Partition(), frozenset()),
                          HalfConfig(2, Partition(), frozenset({2})),
                          HalfConfig(2, Partition((1,)), frozenset())]
        assert [weights(c, 'half_wt_q') for c in family] == [1, -Q, Q]

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            list(enumerate_configs('delta_plus', 3, limit=10))

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            list(enumerate_configs('delta_zero', 2))

    def test_general_contains_both(self):
        general = set(enumerate_configs('general', 2))
        assert set(enumerate_configs('delta_plus', 2)) <= general
        assert set(enumerate_configs('delta_minus', 2)) <= general


class TestWeightSums:
    @pytest.mark.parametrize("k", range(6))
    def test_gauss(self, k):
        assert config_weight_sum('delta_plus', k, 'wt_q') == gauss_sum(k)

    def test_first_values(self):
        assert config_weight_sum('delta_plus', 1, 'wt_q') == 1 - 2 * Q
        assert gauss_sum(2) == 1 - 2 * Q + 2 * Q ** 4

    @pytest.mark.parametrize("k", range(1, 6))
    def test_one_step_up(self, k):
        step = config_weight_sum('delta_plus', k, 'wt_q') - config_weight_sum('delta_plus', k - 1, 'wt_q')
        assert step == MultiLaurent.monomial(2 * (-1) ** (k * k), k * k)

    def test_configuration_with_seven_arrows(self):
        c = mdstar_to_config(LatticePath("uUuuDduUDdUDdD"), 7)
        assert c == config(7, (4, 2, 2), h(3), h(4), h(5), h(7), v(2), v(4), v(6))
        assert [c.length(u) for u in c.sorted_arrows()] == [3, 4, 3, 1, 3, 3, 2]
        assert weights(c, 'wt_q') == -Q ** 35

    @pytest.mark.parametrize("k", range(6))
    def test_triple(self, k):
        assert config_weight_sum('delta_plus', k, 'wt_yq') == triple_sum(k)

    @pytest.mark.parametrize("scheme", ['wt_q', 'wt_yq', 'wt_prime'])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_transport(self, scheme, k):
        assert delta_plus_transfer_sum(k, scheme) == config_weight_sum('delta_plus', k, scheme)

    def test_transport_ab(self):
        assert delta_plus_transfer_sum(2, 'wt_ab', 1, 2) == config_weight_sum('delta_plus', 2, 'wt_ab', 1, 2)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_half_sum_is_one(self, k):
        assert config_weight_sum('half', k, 'half_wt_q') == MultiLaurent.one()

    def test_scheme_mismatch(self):
        with pytest.raises(DomainError):
            weights(HalfConfig(2, Partition()), 'wt_q')
        with pytest.raises(DomainError):
            weights(config(1), 'half_wt_q')
        with pytest.raises(DomainError):
            weights(config(1), 'wt_z')


class TestMarkedPathMaps:
    def test_mdstar_round_trip(self):
        c = mdstar_to_config(LatticePath("uUDd"), 2)
        assert c == config(2, (), h(2), v(2))
        assert config_to_mdstar(c).code == "uUDd"

    def test_long_path(self):
        p = LatticePath("uUuuDduUDdUDdD")
        assert p.belongs_to('md_star')
        c = mdstar_to_config(p, 7)
        assert c.partition == Partition((4, 2, 2))
        assert config_to_mdstar(c) == p

    def test_rejects_marked_peak(self):
        with pytest.raises(DomainError):
            mdstar_to_config(LatticePath("Uudd"), 2)
        with pytest.raises(DomainError):
            mdstar_to_config(LatticePath("UD"), 2)

    def test_half_round_trip(self):
        for c in enumerate_configs('half', 3):
            assert mdstar_to_config(config_to_mdstar(c), 3, half=True) == c


class TestHalfBijection:
    def test_images(self):
        images = [str(psi1(c)) for c in enumerate_configs('half', 2)]
        assert images == ["()", "(1')", "(1)"]

    def test_marked_path_of_half_configuration(self):
        c = HalfConfig(7, Partition((4, 2, 2)), frozenset({3, 5, 6}))
        assert weights(c, 'half_wt_q') == -Q ** 16
        assert config_to_mdstar(c).code == "UuuUdduUddUddd"

    def test_four_arrow_rows(self):
        c = HalfConfig(7, Partition((3, 3, 1, 1, 1)), frozenset({2, 4, 5, 7}))
        assert [c.length(i) for i in (2, 4, 5, 7)] == [3, 3, 2, 1]
        mu = psi1(c)
        assert mu == Overpartition(((6, True), (4, True), (3, False), (3, True), (1, False), (1, True)))
        assert str(mu) == "(6',4',3,3',1,1')"
        assert mu.weight() == weights(c, 'half_wt_q') == Q ** 18
        assert phi1(mu, 7) == c

    @pytest.mark.parametrize("k", range(1, 7))
    def test_bijection(self, k):
        overpartitions = set(enumerate_configs('overpartition', k))
        images = set()
        for c in enumerate_configs('half', k):
            mu = psi1(c)
            assert mu.in_op(k)
            assert phi1(mu, k) == c
            assert mu.weight() == weights(c, 'half_wt_q')
            images.add(mu)
        assert images == overpartitions

    def test_phi1_domain(self):
        assert phi1(Overpartition(((1, True),)), 2) == HalfConfig(2, Partition(), frozenset({2}))
        with pytest.raises(DomainError):
            phi1(Overpartition(((3, False),)), 2)


class TestMoves:
    def test_ascend_and_descend(self):
        low = config(2, (), h(2))
        high = config(2, (), h(1, KM1_ARROW))
        assert op_closure(low, 'ascend') == high
        assert op_closure(high, 'descend') == low

    def test_closure_is_idempotent(self):
        c = op_closure(config(2, (), h(2)), 'ascend')
        assert op_closure(c, 'ascend') == c

    @pytest.mark.parametrize("k", range(1, 5))
    def test_scan_order_does_not_matter(self, k):
        traces = [psi_trace(c) for c in enumerate_configs('delta_plus', k)]
        traces += [phi_trace(c) for c in enumerate_configs('delta_minus', k)]
        for trace in traces:
            for (_, before), (op, after) in zip(trace, trace[1:]):
                assert op_closure(before, op, reverse=True) == after, (before, op)

    def test_reverse_scan_on_competing_arrows(self):
        c = config(3, (), h(2), h(3))
        expected = config(3, (), h(1, KM1_ARROW), h(2, KM1_ARROW))
        assert op_closure(c, 'ascend') == expected
        assert op_closure(c, 'ascend', reverse=True) == expected

    def test_miniatures(self):
        assert [m.name for m in miniatures(config(2, (1,)))] == ['A0']
        assert [m.name for m in miniatures(config(2))] == [None]
        assert miniatures(config(1)) == []


class TestPsiPhi:
    def test_identity_at_one(self):
        for c in enumerate_configs('delta_plus', 1):
            assert psi(c) == c

    def test_trace_shape(self):
        trace = psi_trace(config(2, (), h(2)))
        assert [op for op, _ in trace] == ['start', 'ascend', 'fill', 'shrink', 'fill']
        assert trace[0][1] == config(2, (), h(2))

    def test_trace_with_nine_arrows(self):
        m = KM1_ARROW
        start = config(8, (2, 2, 2, 2, 1, 1), h(2), h(4), h(5), h(7), h(8), v(3), v(4), v(5), v(7))
        ascended = config(8, (2, 2, 2, 2, 1, 1), h(1, m), h(3, m), h(5), h(7), h(8), v(3), v(4), v(5), v(6, m))
        filled = config(8, (6, 2, 2, 2, 1, 1), h(1, m), h(3, m), h(5), h(7), h(8), v(3), v(4), v(5), v(6, m))
        shrunk = config(8, (6, 5, 2, 2, 2, 1, 1), h(1, m), h(3, m), h(5, m), h(7, m), h(8),
                        v(3, m), v(4, m), v(5, m), v(6, m))
        image = config(8, (6, 5, 5, 2, 2, 1, 1), h(1, m), h(3, m), h(5, m), h(7, m), h(8),
                       v(3, m), v(4, m), v(5, m), v(6, m))
        trace = psi_trace(start)
        assert [c for _, c in trace] == [start, ascended, filled, shrunk, image]
        assert [image.length(u) for u in image.sorted_arrows()] == [1, 0, 1, 0, 1, 2, 1, 0, 1]
        assert weights(image, 'wt_q') == weights(start, 'wt_q') == -Q ** 51
        assert phi(image) == start

    @pytest.mark.parametrize("k", range(1, 5))
    def test_bijection(self, k):
        minus = set(enumerate_configs('delta_minus', k))
        images = set()
        for c in enumerate_configs('delta_plus', k):
            image = psi(c)
            assert image in minus
            assert phi(image) == c
            assert weights(image, 'wt_q') == weights(c, 'wt_q')
            images.add(image)
        assert images == minus

    def test_domains(self):
        with pytest.raises(DomainError):
            psi(config(1, (), h(1), v(1)))
        with pytest.raises(DomainError):
            op_closure(config(1), 'rotate')

    def test_embedding(self):
        for c in enumerate_configs('delta_plus', 1):
            embedded = embed_previous(c)
            assert embedded.k == 2
            assert is_delta_minus(embedded), delta_minus_violations(embedded)
            assert is_embedded_previous(embedded)


class TestInvolution:
    def test_fixed_points_at_one(self):
        for c in fixed_points(1):
            with pytest.raises(FixedPointError):
                involution_f(c)

    def test_embedded_is_rejected(self):
        with pytest.raises(DomainError):
            involution_f(config(1))

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_sign_reversing(self, k):
        fixed = []
        for c in enumerate_configs('delta_minus', k):
            if is_embedded_previous(c):
                continue
            try:
                image = involution_f(c)
            except FixedPointError:
                fixed.append(c)
                continue
            assert involution_f(image) == c
            assert weights(image, 'wt_q') == -weights(c, 'wt_q')
        assert set(fixed) == set(fixed_points(k))
        for c in fixed:
            assert weights(c, 'wt_q') == MultiLaurent.monomial((-1) ** (k * k), k * k)
