"""
Utility modules for the critical-memory toolkit
"""

from .logger import setup_logging
from .serialization import dumps_csv, dumps_report, round_sig, to_plain, write_csv, write_report

__all__ = ["setup_logging", "dumps_csv", "dumps_report", "round_sig", "to_plain", "write_csv", "write_report"]
