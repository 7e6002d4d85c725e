import logging
import time
from functools import wraps
from typing import Callable
from typing import Optional

logger = logging.getLogger(__name__)


def _format_execution_time(func_name, execution_time, is_error=False, error=None):
    """Format execution time with appropriate units and precision."""
    if execution_time < 1.0:
        time_str = f"{execution_time * 1000:.2f}ms"
    else:
        time_str = f"{execution_time:.2f} seconds"

    if is_error:
        return f"{func_name} failed after {time_str} with error: {error}"
    return f"{func_name} completed in {time_str}"


def perf_time(func=None, *, log_function: Optional[Callable[[str], None]] = None):
    """Measure and log the wall time of a call, including failed ones.

    Usable bare (``@perf_time``) or with a logging callable
    (``@perf_time(log_function=logger.info)``); defaults to DEBUG on this
    module's logger.
    """
    emit = log_function or logger.debug

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                emit(_format_execution_time(func.__name__, execution_time, True, e))
                raise
            execution_time = time.perf_counter() - start_time
            emit(_format_execution_time(func.__name__, execution_time))
            return result

        return wrapper

    # If used without parentheses
    if func is not None:
        return decorator(func)

    return decorator
