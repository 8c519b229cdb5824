"""Run registered verification checks."""
from concurrent.futures import ThreadPoolExecutor
import logging
from timeit import default_timer as timer

from .const import ClaimStatus
from .exceptions import BudgetExceeded, BWCError
from .report import Claim
from .validation import safe_threads

_LOGGER = logging.getLogger(__name__)


class CheckRunner:
    """Run checks from a registry and collect their claims in registry order.

    A check is a function taking the context and returning a list of claims.
    Worker threads are capped by the BWC_THREADS environment variable.
    """

    def __init__(self, checks, threads=None):
        """Set up CheckRunner."""
        self.checks = checks
        self.threads = safe_threads(threads)

    def run_job(self, name, context):
        """Run a single check, converting budget errors into claims."""
        func = self.checks[name]
        start = timer()
        try:
            claims = func(context)
        except BudgetExceeded as exc:
            _LOGGER.warning("Check %s ran out of budget: %s", name, exc)
            claims = [
                Claim(
                    name,
                    "enumeration budget",
                    exc.budget,
                    exc.nodes,
                    ClaimStatus.SKIPPED_BUDGET,
                )
            ]
        except BWCError as exc:
            _LOGGER.error("Check %s failed with %s", name, exc)
            claims = [Claim(name, "check raised", None, str(exc), ClaimStatus.FAIL)]
        end = timer()
        if end - start > 0.1:
            _LOGGER.debug("Check %s took %.3f seconds", name, end - start)
        return claims

    def run(self, context, names=None):
        """Run the named checks, all by default, and return the claims in order."""
        names = list(self.checks) if names is None else list(names)
        if self.threads == 1:
            results = [self.run_job(name, context) for name in names]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                results = list(
                    executor.map(lambda name: self.run_job(name, context), names)
                )
        return [claim for claims in results for claim in claims]
