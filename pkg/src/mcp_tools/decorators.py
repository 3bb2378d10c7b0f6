"""
Decorators for MCP tools.

- @solver_tool: registers a tool and funnels failures into SolverOperationError.
"""

import logging
from functools import wraps
from typing import Callable, TypeVar

from fastmcp import FastMCP

from core import NZFlowError, SolverOperationError

T = TypeVar("T")

logger = logging.getLogger(__name__)


def wrap_errors(operation_name: str) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Re-raise anything that is not an NZFlowError as SolverOperationError."""

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> T:
            try:
                return func(*args, **kwargs)
            except NZFlowError:
                raise
            except Exception as e:
                logger.error(f"{operation_name} failed: {e}")
                raise SolverOperationError(operation_name, str(e))

        return wrapper

    return decorator


def solver_tool(mcp: FastMCP, operation_name: str):
    """
    Decorator for standardizing error handling and registration.

    Automatically:
    1. Wraps the tool so unexpected errors become SolverOperationError
    2. Registers it with FastMCP

    Args:
        mcp: FastMCP instance
        operation_name: Name of operation for error reporting

    Usage:
        @solver_tool(mcp, "solve_instance")
        def solve_instance(problem, graph_text, k="6"):
            ...
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        return mcp.tool()(wrap_errors(operation_name)(func))

    return decorator
