# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Grid oracle for the largest plurisubharmonic minorant of an obstacle:
monotone Jacobi relaxation u <- min(u, obstacle, circle averages of u)
over complex lines through every interior node, and the relative
extremal functions built on it.
"""

import attr
import numpy as np
from scipy.ndimage import map_coordinates

from . import config
from .errors import ExpressionError, RelaxationError
from .geometry import Ball, Intersection, GridSpec, make_grid
from .utils import as_points, from_real, norm, setup_logger, to_real

log = setup_logger("PERRON")

#: Stand-in for -inf inside the interpolation.
FLOOR = -1e300
EXTEND = "extend"
PIN = "pin"
NONE = "none"
UNITARY = "unitary"


@attr.s(frozen=True)
class RelaxConfig(object):
    """
    :param radii_steps: circle radii in grid steps, capped by the margin
        of the node in X
    :param directions: complex directions sampled on the projective line
        (n=2); the two coordinate axes are always added
    :param boundary_rule: ``extend`` fills nodes outside X with phi1,
        ``pin`` with ``boundary_value``
    :param symmetry: ``unitary`` reads samples of a z1-plane slice grid
        at their norm on the real axis
    :param closure_band: fraction of a grid step counted as the closure
    """
    radii_steps    = attr.ib(default=config.RADII_STEPS,
                             converter=lambda r: tuple(float(x) for x in r))
    directions     = attr.ib(default=config.DIRECTIONS, converter=int)
    angular_nodes  = attr.ib(default=config.ANGULAR_NODES, converter=int)
    tolerance      = attr.ib(default=config.RELAX_TOLERANCE, converter=float)
    max_sweeps     = attr.ib(default=config.MAX_SWEEPS, converter=int)
    boundary_rule  = attr.ib(default=EXTEND,
                             validator=attr.validators.in_([EXTEND, PIN]))
    boundary_value = attr.ib(default=0.0, converter=float)
    symmetry       = attr.ib(default=NONE,
                             validator=attr.validators.in_([NONE, UNITARY]))
    closure_band   = attr.ib(default=0.1, converter=float)

    @classmethod
    def from_config(cls, engine_config, **overrides):
        relax = engine_config["relax"]
        kwargs = dict(
            radii_steps=relax["radii_steps"],
            directions=relax["directions"],
            angular_nodes=relax["angular_nodes"],
            tolerance=relax["tolerance"],
            max_sweeps=relax["max_sweeps"],
        )
        kwargs.update(overrides)
        return cls(**kwargs)


@attr.s(eq=False)
class EnvelopeGrid(object):
    """Relaxed values on a grid; exterior nodes hold NaN."""
    grid             = attr.ib()
    values           = attr.ib(repr=False)
    sweeps           = attr.ib()
    residual         = attr.ib()
    converged        = attr.ib()
    residual_history = attr.ib(factory=list, repr=False)

    def value_at(self, point):
        """Value at the interior node nearest ``point``."""
        idx, _ = self.grid.nearest(point)
        return float(self.values[idx])

    def distance_to_node(self, point):
        return self.grid.nearest(point)[1]

    def rows(self):
        """(flat index, real coordinates, value) for interior nodes."""
        real = to_real(self.grid.points)
        for i in np.flatnonzero(self.grid.interior):
            yield i, real[i], self.values[i]

    def metadata(self):
        return {"sweeps": self.sweeps, "residual": self.residual,
                "converged": self.converged,
                "shape": list(self.grid.shape),
                "interior_nodes": int(self.grid.interior.sum())}


def directions(n, count):
    """
    Unit directions for circle averages: the complex line itself for
    n=1; ``count`` Fibonacci points of the projective line plus the two
    coordinate axes for n=2.
    """
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    k = np.arange(count) + 0.5
    polar = np.arccos(1.0 - 2.0 * k / count)
    azimuth = np.pi * (1.0 + 5 ** 0.5) * k
    dirs = np.stack([np.cos(polar / 2),
                     np.exp(1j * azimuth) * np.sin(polar / 2)], axis=-1)
    axes = np.eye(2, dtype=complex)
    return np.vstack([dirs, axes])


class _Relaxation(object):
    """Precomputed circle samples and fallbacks for one grid/obstacle."""

    def __init__(self, grid, X, obstacle, fill, cfg):
        spec = grid.spec
        if spec.slice and spec.dimension == 2 and cfg.symmetry != UNITARY:
            raise RelaxationError("Slice grids in C^2 need unitary symmetry")
        self.grid = grid
        self.cfg = cfg
        self.shape = grid.shape
        self.interior = np.flatnonzero(grid.interior)
        nodes = grid.points[self.interior]
        self.obstacle = np.maximum(obstacle(nodes), FLOOR)
        self.base = np.full(len(grid.points), np.nan)
        exterior = ~grid.interior
        if exterior.any():
            self.base[exterior] = np.maximum(fill(grid.points[exterior]),
                                             FLOOR)

        margin = np.maximum(X.signed_margin(nodes), 0.0)
        radii = np.array(cfg.radii_steps) * grid.step
        radii = np.minimum(radii[None, :], margin[:, None] * (1 - 1e-9))
        theta = 2 * np.pi * np.arange(cfg.angular_nodes) / cfg.angular_nodes
        circle = radii[:, :, None] * np.exp(1j * theta)[None, None, :]
        self.samples = []
        for a in directions(spec.dimension, cfg.directions):
            q = nodes[:, None, None, :] + circle[..., None] * a
            self.samples.append(self._locate(q.reshape(-1, spec.dimension),
                                             obstacle))

    def _locate(self, q, obstacle):
        spec = self.grid.spec
        if spec.slice:
            if spec.dimension == 2:
                q = np.stack([norm(q), np.zeros(len(q))], axis=-1)
            real = to_real(q[:, :1])
        else:
            real = to_real(q)
        idx = self.grid.to_index(real)
        top = np.array(self.shape) - 1
        outside = np.any((idx < 0) | (idx > top), axis=1)
        fallback = np.full(len(q), np.nan)
        if outside.any():
            pts = from_real(real[outside])
            if spec.slice and spec.dimension == 2:
                pts = np.hstack([pts, np.zeros((len(pts), 1))])
            fallback[outside] = np.maximum(obstacle(pts), FLOOR)
        coords = np.clip(idx, 0, top).T
        return coords, outside, fallback

    def sweep(self, u):
        full = self.base.copy()
        full[self.interior] = u
        field = full.reshape(self.shape)
        k = self.cfg.angular_nodes
        best = np.minimum(u, self.obstacle)
        for coords, outside, fallback in self.samples:
            vals = map_coordinates(field, coords, order=1, mode="nearest")
            vals[outside] = fallback[outside]
            avg = vals.reshape(len(u), -1, k).mean(axis=2).min(axis=1)
            best = np.minimum(best, avg)
        return best


def relax(grid, X, obstacle, fill, cfg):
    """
    Iterate Jacobi sweeps from the obstacle until the largest change drops
    below ``cfg.tolerance`` or ``cfg.max_sweeps`` is reached.

    :param obstacle: callable, points -> obstacle values
    :param fill: callable, points -> values held by exterior nodes
    """
    run = _Relaxation(grid, X, obstacle, fill, cfg)
    u = run.obstacle.copy()
    history = []
    residual = np.inf
    sweeps = 0
    while sweeps < cfg.max_sweeps:
        new = run.sweep(u)
        residual = float(np.max(u - new)) if len(u) else 0.0
        u = new
        sweeps += 1
        history.append(residual)
        if sweeps % 100 == 0:
            log.debug("sweep %d residual %.3g", sweeps, residual)
        if residual < cfg.tolerance:
            break
    converged = residual < cfg.tolerance
    if not converged:
        log.warning("Relaxation stopped after %d sweeps, residual %.3g",
                    sweeps, residual)
    values = np.full(len(grid.points), np.nan)
    values[run.interior] = np.where(u <= FLOOR / 2, -np.inf, u)
    return EnvelopeGrid(grid, values, sweeps, residual, converged, history)


def sweep(env, obstacle, X, cfg, fill=None):
    """
    One Jacobi sweep over ``env``; returns the new grid and the residual.
    """
    fill = fill or (lambda pts: np.full(len(pts), cfg.boundary_value))
    run = _Relaxation(env.grid, X, obstacle, fill, cfg)
    u = np.maximum(env.values[run.interior], FLOOR)
    new = run.sweep(u)
    residual = float(np.max(u - new)) if len(u) else 0.0
    values = env.values.copy()
    values[run.interior] = np.where(new <= FLOOR / 2, -np.inf, new)
    out = EnvelopeGrid(env.grid, values, env.sweeps + 1, residual,
                       residual < cfg.tolerance,
                       env.residual_history + [residual])
    return out, residual


def initial_grid(grid, obstacle):
    """EnvelopeGrid holding the obstacle at every interior node."""
    values = np.full(len(grid.points), np.nan)
    values[grid.interior] = obstacle(grid.points[grid.interior])
    return EnvelopeGrid(grid, values, 0, np.inf, False)


def _phi1_fill(obj, cfg):
    def fill(points):
        if cfg.boundary_rule == PIN:
            return np.full(len(points), cfg.boundary_value)
        with np.errstate(all="ignore"):
            try:
                values = np.asarray(obj.phi1.evaluate(points), dtype=float)
            except ExpressionError:
                values = np.full(len(points), np.nan)
        return np.where(np.isfinite(values) | (values == -np.inf), values,
                        cfg.boundary_value)
    return fill


def _outside_fill(obj, cfg, fill):
    def obstacle(points):
        inside = np.asarray(obj.X.contains(points), dtype=bool)
        out = np.empty(len(points))
        if inside.any():
            out[inside] = obj.phi(points[inside])
        if (~inside).any():
            out[~inside] = fill(points[~inside])
        return out
    return obstacle


def psh_envelope(obj, grid, cfg=None):
    """
    Largest (pluri)subharmonic minorant of ``obj.phi`` on the nodes of
    ``grid``; ``grid.restriction`` must be ``obj.X``.

    :param grid: a :py:class:`GridSpec`
    """
    cfg = cfg or RelaxConfig()
    if grid.restriction is not obj.X and \
            grid.restriction.to_dict() != obj.X.to_dict():
        raise RelaxationError("Grid restriction must be the objective's X")
    nodes = make_grid(grid)
    fill = _phi1_fill(obj, cfg)
    env = relax(nodes, obj.X, _outside_fill(obj, cfg, fill), fill, cfg)
    log.info("Envelope on %s grid: %d sweeps, residual %.3g", nodes.shape,
             env.sweeps, env.residual)
    return env


def _extremal_obstacle(U, X, band):
    def obstacle(points):
        if band > 0:
            inside = U.signed_margin(points) > -band
        else:
            inside = np.asarray(U.contains(points), dtype=bool)
        return np.where(inside & X.contains(points), -1.0, 0.0)
    return obstacle


def relative_extremal(U, X, grid, cfg=None, closure=False):
    """
    Relative extremal function of ``U`` in ``X``: the largest negative
    psh function that is at most -1 on ``U`` (on the closure of ``U``
    with ``closure=True``). Nodes outside X are pinned to 0.
    """
    cfg = attr.evolve(cfg or RelaxConfig(), boundary_rule=PIN,
                      boundary_value=0.0)
    nodes = make_grid(grid)
    band = cfg.closure_band * nodes.step if closure else 0.0
    pin = (lambda pts: np.zeros(len(pts)))
    return relax(nodes, X, _extremal_obstacle(U, X, band), pin, cfg)


def closure_extremal_compare(U, X, grid, cfg=None):
    """Sup-norm difference between the open and closure variants."""
    nodes = make_grid(grid)
    if not np.any(U.signed_margin(nodes.points[nodes.interior]) > 0):
        raise RelaxationError("U has no grid node inside X")
    box = np.array(U.bounding_box())
    corners = from_real(np.array(np.meshgrid(*box, indexing="ij")).reshape(
        len(box), -1).T)
    if not np.all(X.contains(corners)):
        log.warning("Bounding box of U leaves X; closure check is partial")
    open_ = relative_extremal(U, X, grid, cfg)
    closed = relative_extremal(U, X, grid, cfg, closure=True)
    inner = open_.grid.interior
    return float(np.max(np.abs(open_.values[inner] - closed.values[inner])))


def thinness_grid(x, v_radius, resolution):
    """
    Grid on V1 = ball(x, v_radius / 2) with an even node count per axis,
    so that no node sits on the lines through ``x``.
    """
    x = as_points(x, 1)
    res = int(resolution) + int(resolution) % 2
    v1 = Ball(x, 0.5 * v_radius)
    return GridSpec.around(v1, res)


def thinness_oracle(U, x, v_radius, resolution=64, cfg=None):
    """
    Value at (the node nearest) ``x`` of the relative extremal function
    of U cut to V1 = ball(x, v_radius / 2), relative to V1. Values near
    -1 indicate non-thinness, values well above -1 thinness.

    :raises RelaxationError: if the nearest node is more than two grid
        steps away from ``x``
    """
    spec = thinness_grid(x, v_radius, resolution)
    v1 = spec.restriction
    env = relative_extremal(Intersection([U, v1]), v1, spec, cfg)
    idx, dist = env.grid.nearest(x)
    if dist > 2 * env.grid.step:
        msg = "Nearest node is {0:.3g} from x; refine the grid".format(dist)
        raise RelaxationError(msg)
    return float(env.values[idx])
