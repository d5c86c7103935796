"""Token-scanner backend selection.

The compiled scanner (``resumekit._scan_c``, built from Cython) is used
when importable; otherwise the pure-Python twin takes over. Set
``RESUMEKIT_SCANNER=pure`` or ``RESUMEKIT_SCANNER=compiled`` to force a
backend, or call :func:`set_backend` at runtime (the bench command does
this to compare the two).
"""

import os

from resumekit import _scan_py

KIND_WORD = _scan_py.KIND_WORD
KIND_NUMBER = _scan_py.KIND_NUMBER
KIND_PUNCT = _scan_py.KIND_PUNCT

try:
    from resumekit import _scan_c
except ImportError:
    _scan_c = None

_BACKENDS = {"pure": _scan_py}
if _scan_c is not None:
    _BACKENDS["compiled"] = _scan_c

_active_name = "compiled" if _scan_c is not None else "pure"
_forced = os.environ.get("RESUMEKIT_SCANNER", "").strip().lower()
if _forced:
    if _forced not in _BACKENDS:
        raise ImportError(f"RESUMEKIT_SCANNER={_forced!r} is not available "
                          f"(have: {', '.join(sorted(_BACKENDS))})")
    _active_name = _forced
_active = _BACKENDS[_active_name]


def available_backends():
    """Names of the importable scanner backends."""
    return sorted(_BACKENDS)


def backend_name():
    """Name of the backend currently in use ('pure' or 'compiled')."""
    return _active_name


def set_backend(name):
    """Switch the active scanner backend; returns the previous name."""
    global _active, _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown scanner backend {name!r} "
                         f"(have: {', '.join(sorted(_BACKENDS))})")
    previous = _active_name
    _active_name = name
    _active = _BACKENDS[name]
    return previous


def scan_tokens(text):
    """Scan text into (start, end, kind) spans using the active backend."""
    return _active.scan_tokens(text)
