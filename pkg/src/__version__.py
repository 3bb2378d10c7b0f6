"""Version information for nzflow."""

__version__ = "0.1.0"
__version_info__ = tuple(int(x) for x in __version__.split("."))

# Project metadata
__title__ = "nzflow"
__description__ = (
    "Min-cost nowhere-zero flows and cut-balanced orientations: "
    "approximation algorithms, exact LP machinery and verification oracles"
)
__license__ = "Apache-2.0"
