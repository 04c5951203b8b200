import pytest
from lib.controllers.suite_controller import CaseResult, RunReport, SuiteController
from lib.errors import DomainError
from lib.qcore import Q
from lib.suites import Case


def boom():
    raise ValueError("boom")


@pytest.fixture
def controller():
    return SuiteController(workers=1)


@pytest.fixture
def mixed_cases():
    return [
        Case("ok", lambda: (True, 1)),
        Case("wrong", lambda: (False, {'lhs': Q, 'rhs': 1})),
        Case("raises", boom),
    ]


class TestRunCases:
    @pytest.mark.asyncio
    async def test_outcomes_keep_order(self, controller, mixed_cases):
        report = await controller.run_cases('demo', mixed_cases)
        assert [c.id for c in report.cases] == ["ok", "wrong", "raises"]
        assert [c.passed for c in report.cases] == [True, False, False]
        assert not report.passed

    @pytest.mark.asyncio
    async def test_exception_is_contained(self, controller, mixed_cases):
        report = await controller.run_cases('demo', mixed_cases)
        assert report.cases[2].detail == "ValueError: boom"
        assert [c.id for c in report.failures] == ["wrong", "raises"]

    @pytest.mark.asyncio
    async def test_empty_suite_passes(self, controller):
        report = await controller.run_cases('empty', [])
        assert report.passed
        assert report.cases == []

    @pytest.mark.asyncio
    async def test_many_workers(self):
        cases = [Case(f"c{i}", lambda i=i: (True, i)) for i in range(10)]
        report = await SuiteController(workers=4).run_cases('wide', cases)
        assert [c.detail for c in report.cases] == list(range(10))


class TestReportShape:
    def test_to_dict(self):
        report = RunReport('demo', [CaseResult('a', True, 1)], elapsed_ms=7)
        assert report.to_dict() == {'suite': 'demo', 'cases': [{'id': 'a', 'pass': True, 'detail': 1}], 'pass': True}
        assert report.to_dict(timing=True)['elapsed_ms'] == 7


class TestRunSuite:
    @pytest.mark.asyncio
    async def test_tourio(self, controller):
        report = await controller.run_suite('tourio', 3)
        assert report.passed
        assert len(report.cases) == 4
        assert report.cases[0].id == "tourio n=0"

    @pytest.mark.asyncio
    @pytest.mark.parametrize("suite,ids", [
        ('dkc', ["dkc k=0", "dkc k=5"]),
        ('bijection', ["psi1/phi1 k=6", "psi/phi k=4", "scan order k=4", "involution f k=4"]),
    ])
    async def test_configuration_suites_at_defaults(self, suite, ids):
        report = await SuiteController(workers=2).run_suite(suite)
        assert report.passed, [c.id for c in report.failures]
        for case_id in ids:
            assert case_id in [c.id for c in report.cases]

    @pytest.mark.asyncio
    async def test_all_prefixes_ids(self, controller):
        report = await controller.run_suite('all', max_n=1)
        assert report.suite == 'all'
        assert report.cases[0].id.startswith("tourio: ")
        assert all(': ' in c.id for c in report.cases)

    @pytest.mark.asyncio
    async def test_unknown_suite(self, controller):
        with pytest.raises(DomainError):
            await controller.run_suite('nope')

    @pytest.mark.asyncio
    async def test_negative_max_n(self, controller):
        with pytest.raises(DomainError):
            await controller.run_suite('tourio', -1)
