import logging
import math
import tomllib
from collections.abc import Callable
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import ArrayLike, NDArray

if TYPE_CHECKING:
    from _typeshed import StrPath

type FloatArray = NDArray[np.float64]
type RealFunction = Callable[[FloatArray], FloatArray]


def resource_path(relative_path: "StrPath"):
    """Get absolute path to resource, from the root of the repository."""
    return Path(__file__).parent.parent / relative_path


def as_float_array(values: ArrayLike) -> FloatArray:
    return np.asarray(values, dtype=np.float64)


def unwrap_scalar(values: FloatArray, like: ArrayLike):
    """@return: A Python float when `like` was a scalar, otherwise the array itself."""
    if np.ndim(like) == 0:
        return float(values.reshape(-1)[0])
    return values


def format_number(value: object):
    """Shortest round-trip text of a number, without a trailing `.0` on integral floats."""
    if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    number = float(value)
    if math.isfinite(number) and number.is_integer() and abs(number) < INTEGRAL_FLOAT_LIMIT:
        return str(int(number))
    return repr(number)


def flatten_dict(d, parent_key="", sep="_"):
    """Convert nested dictionary to flat structure."""
    items = []
    for k, v in d.items():
        new_key = f"{parent_key}{sep}{k}" if parent_key else k
        if isinstance(v, dict):
            items.extend(flatten_dict(v, new_key, sep).items())
        else:
            items.append((new_key, v))
    return dict(items)


def debug_log(message):
    logger = logging.getLogger(__name__)
    logger.debug(message)


def get_version():
    return PBALL_VERSION


MACHINE_EPSILON = float(np.finfo(np.float64).eps)
"""Spacing of float64 values around 1"""
INTEGRAL_FLOAT_LIMIT = 2.0**53
"""Above this every float is integral, print those in full"""

# Shared strings
try:
    PBALL_VERSION = version("pball")
except PackageNotFoundError:
    # Running from a source checkout
    with open(resource_path("pyproject.toml"), mode="rb") as pyproject:
        PBALL_VERSION: str = tomllib.load(pyproject)["project"]["version"]
