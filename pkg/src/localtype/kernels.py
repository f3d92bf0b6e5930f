"""Kernel selection: compiled phased-sum loop when available, pure Python otherwise.

`phased_sum` is the active implementation.  Both backends stay importable so
tests and the benchmark can compare them directly.
"""

from __future__ import annotations

from . import _phasedsum_py

phased_sum_python = _phasedsum_py.phased_sum

try:
    from . import _phasedsum as _compiled
except ImportError:
    _compiled = None

if _compiled is not None:
    phased_sum_compiled = _compiled.phased_sum
    phased_sum = phased_sum_compiled
    BACKEND = "cython"
else:
    phased_sum_compiled = None
    phased_sum = phased_sum_python
    BACKEND = "python"
