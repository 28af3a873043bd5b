# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import hashlib
import logging
import numbers

import numpy as np

from .errors import DimensionMismatchError


def setup_logger(key, level=None):
    """General logger"""
    log = logging.getLogger("discenvelope." + key.lower())
    if not log.handlers:
        console = logging.StreamHandler()
        msg = "{key} - %(levelname)s - %(message)s".format(key=key)
        formatter = logging.Formatter(msg)
        console.setFormatter(formatter)
        log.addHandler(console)
        log.propagate = False
    if level is not None:
        log.setLevel(level)
    elif log.level == logging.NOTSET:
        log.setLevel(logging.WARNING)
    return log


def set_log_level(level):
    """Apply ``level`` to every logger created by :py:func:`setup_logger`."""
    for name in list(logging.Logger.manager.loggerDict):
        if name.startswith("discenvelope."):
            logging.getLogger(name).setLevel(level)


def _get(data, item, default=None):
    """
    Helper function to catch empty mappings in scenario data. If item is
    optional but not in the data, or data is ``None``, the default value
    is returned.
    """
    try:
        return data.get(item, default)
    except AttributeError:
        return default


def parse_complex(value):
    """
    Read one complex coordinate from scenario data: either a real number
    or a ``[re, im]`` pair.
    """
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        return complex(float(re), float(im))
    raise ValueError("Not a complex coordinate: {0!r}".format(value))


def complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def parse_point(value):
    """Read a point (list of complex coordinates) from scenario data."""
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        return np.array([parse_complex(value)], dtype=complex)
    coords = [parse_complex(c) for c in value]
    if len(coords) not in (1, 2):
        raise ValueError("Points must have 1 or 2 complex coordinates")
    return np.array(coords, dtype=complex)


def point_to_list(p):
    return [complex_pair(c) for c in np.atleast_1d(p)]


def make_point(*coords):
    """Build a point of C^n from complex coordinates."""
    return np.array([complex(c) for c in coords], dtype=complex)


def as_points(p, n):
    """
    Coerce ``p`` to a complex array whose last axis has length ``n``.

    A bare complex scalar is read as a point of C^1.
    """
    arr = np.asarray(p, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != n:
        msg = "Expected points of C^{0}, got coordinates of length {1}".format(
            n, arr.shape[-1])
        raise DimensionMismatchError(msg)
    return arr


def to_real(points):
    """(..., n) complex -> (..., 2n) real as (re z1, im z1, re z2, ...)."""
    points = np.asarray(points, dtype=complex)
    out = np.empty(points.shape[:-1] + (2 * points.shape[-1],))
    out[..., 0::2] = points.real
    out[..., 1::2] = points.imag
    return out


def from_real(coords):
    coords = np.asarray(coords, dtype=float)
    return coords[..., 0::2] + 1j * coords[..., 1::2]


def norm(points):
    return np.sqrt(np.sum(np.abs(points) ** 2, axis=-1))


def derived_rng(*parts):
    """
    Deterministic generator seeded from arbitrary parts (numbers, arrays,
    strings), so equal inputs always draw equal samples.
    """
    digest = hashlib.sha256()
    for part in parts:
        if isinstance(part, np.ndarray):
            digest.update(np.ascontiguousarray(part).tobytes())
        else:
            digest.update(repr(part).encode("utf-8"))
    seed = int.from_bytes(digest.digest()[:8], "little")
    return np.random.default_rng(seed)


def unit_ball_samples(rng, count, n):
    """Uniform samples from the unit ball of C^n (= R^2n)."""
    g = rng.standard_normal((count, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    radii = rng.random(count) ** (1.0 / (2 * n))
    return from_real(g * radii[:, None])


def unit_sphere_samples(rng, count, n):
    g = rng.standard_normal((count, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return from_real(g)
