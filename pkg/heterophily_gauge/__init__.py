"""
Heterophily Gauge - heterophily analysis for heterogeneous graphs.
"""

from .core.gauge import HeterophilyGauge

__version__ = "1.0.0"
__all__ = ["HeterophilyGauge"]
