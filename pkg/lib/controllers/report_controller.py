from pybars import Compiler
import os
import asyncio
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
from lib.configs import render
from lib.controllers.suite_controller import RunReport
from lib.errors import DomainError
from lib.logger import cli_logger
from lib.serializers import dumps, to_json_value, to_text


class ReportController:
    """Renders reports, values, listings and traces as text through handlebars templates"""

    def __init__(self, template_dir: Optional[str] = None):
        self.compiler = Compiler()
        self.templates: Dict[str, Callable] = {}
        self.template_dir = template_dir or os.path.join(
            os.path.dirname(os.path.dirname(os.path.dirname(__file__))), 'templates'
        )
        self._initialized = False

    @classmethod
    async def create(cls, template_dir: Optional[str] = None) -> 'ReportController':
        """Async factory method for creating ReportController instance"""
        cli_logger.debug("Creating ReportController instance")
        controller = cls(template_dir)
        await controller._initialize()
        return controller

    async def _initialize(self) -> None:
        if not self._initialized:
            await self._load_templates()
            self._initialized = True

    @staticmethod
    def _load_template_file(path: str) -> str:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()

    async def _load_templates(self) -> None:
        """Load and compile all handlebars templates asynchronously"""
        cli_logger.debug(f"Loading templates from: {self.template_dir}")
        tasks = []
        for template_file in sorted(os.listdir(self.template_dir)):
            if template_file.endswith('.hbs'):
                name = os.path.splitext(template_file)[0]
                path = os.path.join(self.template_dir, template_file)
                tasks.append(asyncio.create_task(self._load_and_compile_template(name, path)))
        await asyncio.gather(*tasks)
        cli_logger.debug(f"Loaded {len(self.templates)} templates")

    async def _load_and_compile_template(self, name: str, path: str) -> None:
        content = await asyncio.to_thread(self._load_template_file, path)
        self.templates[name] = self.compiler.compile(content)

    async def _render(self, name: str, context: Dict[str, Any]) -> str:
        if not self._initialized:
            await self._initialize()
        if name not in self.templates:
            raise DomainError(f"No template named {name}")
        return await asyncio.to_thread(self.templates[name], context)

    @staticmethod
    def _detail_text(detail: Any) -> str:
        if detail is None:
            return ''
        if isinstance(detail, dict):
            return ', '.join(f"{k}={ReportController._detail_text(v)}" for k, v in detail.items())
        return to_text(detail)

    async def render_report(self, report: RunReport, timing: bool = False) -> str:
        cases = [
            {
                'id': c.id,
                'status': 'PASS' if c.passed else 'FAIL',
                # detail is printed for failures only
                'detail': None if c.passed else self._detail_text(c.detail),
            }
            for c in report.cases
        ]
        context = {
            'suite': report.suite,
            'status': 'PASS' if report.passed else 'FAIL',
            'passed': len(cases) - len(report.failures),
            'total': len(cases),
            'cases': cases,
            'elapsed_ms': report.elapsed_ms if timing else None,
        }
        return await self._render('report', context)

    async def render_value(self, label: str, value: Any, fields: Sequence[Tuple[str, Any]] = ()) -> str:
        context = {
            'label': label,
            'fields': [{'name': k, 'value': v} for k, v in fields if v is not None],
            'value': to_text(value),
        }
        return await self._render('value', context)

    async def render_listing(self, label: str, items: List[Any], weight: Any = None) -> str:
        context = {
            'label': label,
            'count': len(items),
            'items': [to_text(item) for item in items],
            'weight': None if weight is None else to_text(weight),
        }
        return await self._render('listing', context)

    async def render_trace(self, name: str, steps: List[Tuple[str, Any]]) -> str:
        context = {
            'name': name,
            'steps': [{'op': op, 'body': render(c)} for op, c in steps],
        }
        return await self._render('trace', context)

    async def render_json(self, value: Any, granularity: Optional[int] = None) -> str:
        return await asyncio.to_thread(dumps, value, granularity)

    async def cleanup(self) -> None:
        cli_logger.debug("Cleaning up ReportController resources")
        self.templates.clear()
        self._initialized = False


def report_payload(report: RunReport, timing: bool = False) -> Dict[str, Any]:
    return to_json_value(report.to_dict(timing))
