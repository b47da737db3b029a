# core/testing.py
import functools
import logging
import time

logger = logging.getLogger("tests")


def test_wrapper(func):
    """Log start, outcome and duration of a test; failures are re-raised."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        logger.info("START %s", func.__name__)
        try:
            result = func(*args, **kwargs)
        except Exception:
            logger.info("FAIL  %s (%.3fs)", func.__name__, time.perf_counter() - start)
            raise
        logger.info("PASS  %s (%.3fs)", func.__name__, time.perf_counter() - start)
        return result

    return wrapper


# Imported into test modules; keep pytest from collecting the decorator itself.
test_wrapper.__test__ = False
