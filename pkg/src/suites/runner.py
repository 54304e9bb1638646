import sys
from concurrent.futures import ProcessPoolExecutor

from src.logging import logging
from src.exception import InvalidArgumentError
from src.constants.defaults import SUITE_ORDER
from src.schemas.config import RunConfig
from src.schemas.reports import VerificationReport
from src.suites.algebra import AlgebraSuite
from src.suites.biortho import BiorthoSuite
from src.suites.cubic import CubicSuite
from src.suites.ladder import LadderSuite
from src.suites.metric import MetricSuite
from src.suites.spectrum import SpectrumSuite
from src.suites.susy import SusySuite

SUITE_REGISTRY = {
    suite.name: suite
    for suite in (SpectrumSuite, BiorthoSuite, LadderSuite, MetricSuite, SusySuite, AlgebraSuite, CubicSuite)
}

SUITE_CHOICES = SUITE_ORDER + ("all",)


def _run_named(config: RunConfig, name: str) -> list[VerificationReport]:
    return SUITE_REGISTRY[name](config).run()


def run_suite(config: RunConfig, suite: str, parallel: bool = False) -> list[VerificationReport]:
    """
    Run one suite, or every suite in SUITE_ORDER for "all".

    With parallel=True the suites of "all" run in worker processes; the
    report order is the same as in a sequential run.
    """
    if suite not in SUITE_CHOICES:
        raise InvalidArgumentError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_CHOICES)}", sys)
    names = list(SUITE_ORDER) if suite == "all" else [suite]
    logging.info(f"Running suites {names} (parallel={parallel})")

    if parallel and len(names) > 1:
        with ProcessPoolExecutor(max_workers=len(names)) as pool:
            batches = list(pool.map(_run_named, [config] * len(names), names))
    else:
        batches = [_run_named(config, name) for name in names]

    return [report for batch in batches for report in batch]
