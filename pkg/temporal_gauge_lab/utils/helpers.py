"""
Utility Functions Module
========================

Small helpers shared by the runner, the report builder and the tests.
"""

import os
import tempfile
from datetime import datetime

import numpy as np


def get_current_time():
    """
    Get current time formatted as string

    Returns:
        str: Current time in 'YYYY-MM-DD HH:MM:SS' format
    """
    return datetime.now().strftime('%Y-%m-%d %H:%M:%S')


def atomic_write_text(path, text):
    """
    Write a text file atomically: temp file in the same directory, then rename.

    Args:
        path (str): Destination
        text (str): Contents
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def to_jsonable(value):
    """Convert numpy scalars, arrays and complex numbers to JSON types"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(np.real(value)), float(np.imag(value))]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def max_abs_error(values, expected):
    """Largest absolute deviation between two array-likes"""
    return float(np.max(np.abs(np.asarray(values) - np.asarray(expected)), initial=0.0))
