"""
Critical-Memory Toolkit

Bosonic neuron networks whose critical states make many memory patterns
nearly degenerate: critical splits, pattern capacity, recall dynamics under
input stimuli and classical-limit pattern packing.
"""

__version__ = "0.1.0"
__author__ = "Critical Memory Team"

from .core import CriticalMemoryToolkit
from .config import Config

__all__ = [
    "CriticalMemoryToolkit",
    "Config",
    "__version__",
    "__author__",
]
