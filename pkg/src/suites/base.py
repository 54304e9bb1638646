import sys
from functools import cached_property
from typing import Callable, Iterable, Union

from src.logging import logging
from src.exception import CustomException
from src.constants.defaults import EPSILON_INDEXING_NOTE
from src.components.contour import make_grid
from src.schemas.config import RunConfig
from src.schemas.grids import ContourGrid
from src.schemas.models import KratzerParams
from src.schemas.reports import VerificationReport

CheckResult = Union[VerificationReport, Iterable[VerificationReport]]


class VerificationSuite:
    """
    A named group of checks run against one RunConfig.

    Subclasses list their checks in checks(); run() evaluates each one and
    turns any exception into a failing report, so one broken check never
    hides the others.
    """

    name = "base"

    def __init__(self, config: RunConfig):
        try:
            self.config = config
            self.logger = logging.getLogger(__name__)
        except Exception as e:
            raise CustomException(e, sys)

    @cached_property
    def quadrature_grid(self) -> ContourGrid:
        return make_grid(self.config.grid_extent, self.config.grid_points)

    @cached_property
    def uniform_grid(self) -> ContourGrid:
        return make_grid(self.config.grid_extent, self.config.grid_points, scheme="uniform")

    @property
    def params(self) -> KratzerParams:
        return self.config.kratzer

    def base_params(self) -> dict:
        return {"alpha": self.config.alpha, "c": self.config.c, "q": self.config.q}

    def checks(self) -> list[tuple[str, Callable[[], CheckResult]]]:
        raise NotImplementedError

    def run(self) -> list[VerificationReport]:
        reports: list[VerificationReport] = []
        for check, evaluate in self.checks():
            try:
                result = evaluate()
                produced = [result] if isinstance(result, VerificationReport) else list(result)
            except Exception as e:
                self.logger.error(f"{check} raised {type(e).__name__}: {e}")
                produced = [VerificationReport.failure(check, self.config.tolerance(check), e,
                                                       params=self.base_params())]
            reports.extend(self._annotate(report) for report in produced)

        failed = sum(not report.passed for report in reports)
        self.logger.info(f"{self.name} suite: {len(reports)} reports, {failed} failed")
        return reports

    @staticmethod
    def _annotate(report: VerificationReport) -> VerificationReport:
        metadata = dict(report.metadata)
        metadata.setdefault("epsilon_indexing", EPSILON_INDEXING_NOTE)
        return report.model_copy(update={"metadata": metadata})
