"""
nzflow MCP Server

Exposes the nowhere-zero flow and cut-balanced orientation solvers,
verifiers, generators and oracles as MCP tools.

Uses FastMCP framework for clean, decorator-based tool definition.
"""

import logging
import sys

from fastmcp import FastMCP

from __version__ import __title__, __version__
from core import get_config
from mcp_tools.helpers import setup_logging, setup_utf8_encoding
from mcp_tools.tools import (
    register_export_tools,
    register_generate_tools,
    register_oracle_tools,
    register_solve_tools,
    register_verify_tools,
)

logger = logging.getLogger(__name__)

# Initialize FastMCP server
mcp = FastMCP(name=__title__)


def register_all_tools(server: FastMCP = mcp) -> None:
    """Register all MCP tools with FastMCP.

    Organizes tools by category:
    - Solving (approximation pipelines)
    - Verification
    - Instance generation
    - Brute-force oracles
    - Bench export
    """
    logger.info("Registering MCP tools...")

    register_solve_tools(server)
    logger.debug("  Solve tools registered")

    register_verify_tools(server)
    logger.debug("  Verify tools registered")

    register_generate_tools(server)
    logger.debug("  Generate tools registered")

    register_oracle_tools(server)
    logger.debug("  Oracle tools registered")

    register_export_tools(server)
    logger.debug("  Export tools registered")

    logger.info("All MCP tools registered successfully")


def main() -> None:
    """Run the server: stdio when piped, streamable HTTP from a terminal."""
    setup_utf8_encoding()
    setup_logging()
    register_all_tools()
    logger.info(f"Starting {__title__} MCP server v{__version__}...")

    config = get_config()
    use_stdio = not sys.stdin.isatty()

    try:
        if use_stdio:
            logger.info("Starting server in stdio mode...")
            mcp.run(transport="stdio")
        else:
            host, port = config.server.host, config.server.port
            logger.info(f"MCP endpoint at http://{host}:{port}/mcp")
            mcp.run(transport="http", host=host, port=port)
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error(f"Server error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
