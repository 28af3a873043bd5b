# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
The piecewise objective: phi1 on X minus the closure of W, phi2 on W and
min(phi1*, phi2*) on the boundary of W, where * is the upper
semicontinuous regularization.
"""

import attr
import numpy as np

from .config import BOUNDARY_BAND
from .errors import ClosureError, ObjectiveError
from .geometry import Difference, Domain
from .utils import as_points, derived_rng, setup_logger, unit_ball_samples

log = setup_logger("OBJECTIVE")

#: Default regularization schedule: eight levels from 1e-1 down to 1e-4.
STAR_RADII = tuple(np.geomspace(0.1, 1e-4, 8))
STAR_SAMPLES = 64
#: Successive levels further apart than this mark an estimate unstable.
UNSTABLE_JUMP = 0.1
MONOTONE_NOISE = 1e-2

INNER = "inner"
OUTER = "outer"
BOUNDARY = "boundary"


def _schedule(value):
    radii = tuple(float(r) for r in value)
    if len(radii) < 8:
        raise ObjectiveError("Regularization needs at least 8 radii")
    if any(r <= 0 for r in radii) or \
            any(b >= a for a, b in zip(radii, radii[1:])):
        raise ObjectiveError("Regularization radii must be positive and "
                             "strictly decreasing")
    return radii


@attr.s(frozen=True)
class StarEstimate(object):
    """
    Outcome of an upper regularization: the final-level value, the sup at
    every level, and the monotone / unstable flags.
    """
    value    = attr.ib()
    levels   = attr.ib(converter=tuple)
    monotone = attr.ib()
    unstable = attr.ib()


def _level_sup(e, d, p, r, rng, m):
    n = p.shape[-1]
    found = []
    accepted = 0
    for _ in range(64):
        cand = p + r * unit_ball_samples(rng, m, n)
        inside = cand[np.asarray(d.contains(cand), dtype=bool)]
        if len(inside):
            found.append(inside)
            accepted += len(inside)
        if accepted >= m:
            break
    if not found:
        return None
    pts = np.concatenate(found)
    return float(np.max(e.evaluate(pts)))


def regularize(e, d, p, radii=STAR_RADII, samples=STAR_SAMPLES):
    """
    Approximate limsup of ``e`` at ``p`` along ``d``: the sup over samples
    of ``d`` in shrinking balls around ``p``.

    :raises ClosureError: when no sample of ``d`` lies within radii[0]
    """
    radii = _schedule(radii)
    p = as_points(p, d.dimension)
    if samples < 64:
        raise ObjectiveError("Regularization needs >= 64 samples per level")
    rng = derived_rng("usc", p, radii)
    levels = []
    for r in radii:
        value = _level_sup(e, d, p, r, rng, samples)
        if value is None:
            if not levels:
                msg = "Point {0} is not in the closure of the region".format(
                    p.tolist())
                raise ClosureError(msg)
            msg = "No region sample within radius {0:g} of {1}".format(
                r, p.tolist())
            raise ClosureError(msg)
        levels.append(value)
    diffs = np.diff(levels)
    monotone = bool(np.all(diffs <= MONOTONE_NOISE))
    unstable = bool(np.any(np.abs(diffs) > UNSTABLE_JUMP))
    if unstable:
        log.warning("Unstable regularization at %s: levels %s",
                    p.tolist(), ["{0:.4g}".format(v) for v in levels])
    return StarEstimate(levels[-1], levels, monotone, unstable)


def usc_star(e, d, p, radii=STAR_RADII):
    return regularize(e, d, p, radii).value


@attr.s(frozen=True, eq=False)
class PiecewiseObjective(object):
    """
    :param X: the ambient domain
    :param W: a proper subdomain of ``X``
    :param phi1: expression used on X minus the closure of W
    :param phi2: expression used on W
    :param boundary_values: optional closed form on the boundary of W
    """
    X               = attr.ib(validator=attr.validators.instance_of(Domain))
    W               = attr.ib(validator=attr.validators.instance_of(Domain))
    phi1            = attr.ib()
    phi2            = attr.ib()
    boundary_values = attr.ib(default=None)
    star_radii      = attr.ib(default=STAR_RADII, converter=_schedule)
    band            = attr.ib(default=BOUNDARY_BAND, converter=float)

    def __attrs_post_init__(self):
        if self.X.dimension != self.W.dimension:
            raise ObjectiveError("X and W live in different dimensions")
        exprs = [self.phi1, self.phi2, self.boundary_values]
        used = max(e.max_index() for e in exprs if e is not None)
        if used > self.dimension:
            msg = "Objective uses z{0} but the domain is in C^{1}".format(
                used, self.dimension)
            raise ObjectiveError(msg)
        self._check_nested()

    def _check_nested(self, count=1000):
        rng = derived_rng("nested", self.X.to_dict(), self.W.to_dict())
        n = self.dimension

        def draw(domain, tries=200):
            box = np.array(domain.bounding_box())
            found = []
            for _ in range(tries):
                real = rng.uniform(box[:, 0], box[:, 1], (count, 2 * n))
                pts = real[:, 0::2] + 1j * real[:, 1::2]
                found.append(pts[np.asarray(domain.contains(pts), bool)])
                if sum(len(f) for f in found) >= count:
                    break
            return np.concatenate(found)[:count]

        inner = draw(self.W)
        if len(inner) and not np.all(self.X.contains(inner)):
            raise ObjectiveError("W is not contained in X")
        outer = draw(self.X)
        if not np.any(self.W.signed_margin(outer) < -self.band):
            raise ObjectiveError("X minus the closure of W looks empty")

    @property
    def dimension(self):
        return self.X.dimension

    @property
    def outer(self):
        """X minus the closure of W."""
        return Difference(self.X, self.W)

    def region(self, points):
        """Dispatch case per point: ``inner``, ``outer`` or ``boundary``."""
        pts = as_points(points, self.dimension)
        m = np.asarray(self.W.signed_margin(pts))
        out = np.where(m > 0, INNER, np.where(m < -self.band, OUTER,
                                               BOUNDARY))
        return str(out) if pts.ndim == 1 else out

    def _boundary_value(self, p):
        if self.boundary_values is not None:
            return self.boundary_values.evaluate(p[None, :])[0]
        left = usc_star(self.phi1, self.outer, p, self.star_radii)
        right = usc_star(self.phi2, self.W, p, self.star_radii)
        return min(left, right)

    def phi(self, points):
        """
        Vectorized objective. ``-inf`` is allowed, ``+inf`` is not.

        :raises ObjectiveError: for points outside X or ``+inf`` values
        """
        pts = as_points(points, self.dimension)
        single = pts.ndim == 1
        flat = pts.reshape(-1, self.dimension)
        if not np.all(self.X.contains(flat)):
            raise ObjectiveError("Objective evaluated outside X")
        m = np.asarray(self.W.signed_margin(flat))
        inner = m > 0
        outer = m < -self.band
        band = ~(inner | outer)
        out = np.empty(len(flat))
        if inner.any():
            out[inner] = self.phi2.evaluate(flat[inner])
        if outer.any():
            out[outer] = self.phi1.evaluate(flat[outer])
        for i in np.flatnonzero(band):
            out[i] = self._boundary_value(flat[i])
        if np.any(out == np.inf):
            raise ObjectiveError("Objective evaluates to +inf")
        if single:
            return float(out[0])
        return out.reshape(pts.shape[:-1])


def eval_phi(obj, p):
    return obj.phi(p)
