"""
MCP server module.

Contains the FastMCP tool surface.

Modules:
- helpers: Logging setup and batch parsing
- decorators: Decorator for unified tool error handling
- tools: All MCP tool definitions
"""

from .helpers import parse_operations, setup_logging
from .decorators import solver_tool, wrap_errors

__all__ = [
    "parse_operations",
    "setup_logging",
    "solver_tool",
    "wrap_errors",
]
