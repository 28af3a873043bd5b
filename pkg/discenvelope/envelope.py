# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Derivative-free minimization of the disc functional over the coefficients
of polynomial discs centered at a point: upper estimates of the envelope
over all discs (EH) and over the classes B1/B2 (F), covering-disc
searches and an empirical upper semicontinuity probe.
"""

import attr
import numpy as np
from scipy.optimize import minimize

from . import config
from .discs import (
    AnalyticDisc, CircleQuadrature, B1, B2, classify, disc_from_boundary,
    label_for, probe_points
)
from .errors import SearchError
from .utils import as_points, norm, setup_logger

log = setup_logger("SEARCH")

#: Scores stand in for -inf during the search; reported values are exact.
FLOOR = -1e300
#: Structured starts tried per degree, best first.
STRUCTURED_STARTS = 3
SEED_SAMPLES = 256

EH = "EH"
F = "F"


def _schedule(value):
    degrees = [int(d) for d in value]
    if not degrees or degrees[0] < 1 or \
            any(b <= a for a, b in zip(degrees, degrees[1:])):
        msg = "degree_schedule must be increasing positive integers: {0}"
        raise SearchError(msg.format(value))
    return degrees


def _nonnegative_seed(inst, attribute, value):
    if not 0 <= value < 2 ** 64:
        raise SearchError("seed must be an unsigned 64-bit integer")


@attr.s(frozen=True)
class SearchConfig(object):
    """Knobs of the disc search. ``init_scale=None`` means 0.1 * margin."""
    degree_schedule = attr.ib(default=config.DEGREE_SCHEDULE,
                              converter=_schedule)
    restarts        = attr.ib(default=config.RESTARTS, converter=int)
    max_evals       = attr.ib(default=config.MAX_EVALS, converter=int)
    seed            = attr.ib(default=0, converter=int,
                              validator=_nonnegative_seed)
    penalty_weight  = attr.ib(default=config.PENALTY_WEIGHT, converter=float)
    init_scale      = attr.ib(default=None)
    quadrature      = attr.ib(default=config.QUADRATURE, converter=int)
    tolerance       = attr.ib(default=config.SEARCH_TOLERANCE,
                              converter=float)
    probe           = attr.ib(default=config.PROBE, converter=int)
    mu              = attr.ib(default=config.MU, converter=float)

    @classmethod
    def from_config(cls, engine_config, **overrides):
        """Build from the ``[search]``/``[thresholds]`` config sections."""
        search = engine_config["search"]
        kwargs = dict(
            degree_schedule=search["degree_schedule"],
            restarts=search["restarts"],
            max_evals=search["max_evals"],
            penalty_weight=search["penalty_weight"],
            quadrature=search["quadrature"],
            tolerance=search["tolerance"],
            probe=search["probe"],
            mu=engine_config["thresholds"]["mu"],
        )
        kwargs.update(overrides)
        return cls(**kwargs)


@attr.s(frozen=True)
class TraceRow(object):
    degree     = attr.ib()
    restart    = attr.ib()
    evals      = attr.ib()
    best_value = attr.ib()
    feasible   = attr.ib()


@attr.s(eq=False)
class SearchResult(object):
    """
    Best feasible disc found. ``value`` is ``None`` when no admissible
    disc was found (class-restricted searches only).
    """
    mode             = attr.ib()
    point            = attr.ib()
    value            = attr.ib()
    best_disc        = attr.ib()
    label            = attr.ib()
    per_degree       = attr.ib(factory=list)
    trace            = attr.ib(factory=list)
    feasible_count   = attr.ib(default=0)
    infeasible_count = attr.ib(default=0)

    @property
    def covered(self):
        return self.value is not None

    def to_dict(self):
        return {
            "mode": self.mode,
            "point": [[z.real, z.imag] for z in self.point],
            "value": self.value,
            "label": self.label,
            "best_disc": self.best_disc.to_dict() if self.best_disc else None,
            "per_degree": [list(row) for row in self.per_degree],
            "trace": [attr.astuple(row) for row in self.trace],
            "feasible_count": self.feasible_count,
            "infeasible_count": self.infeasible_count,
        }


@attr.s(frozen=True)
class Coverage(object):
    """
    Outcome of a covering-disc search; ``covered=False`` carries the best
    (negative) class margin reached.
    """
    covered = attr.ib()
    label   = attr.ib()
    disc    = attr.ib()
    margin  = attr.ib()


@attr.s(frozen=True)
class UscProbe(object):
    points = attr.ib()
    values = attr.ib()
    defect = attr.ib()


class DiscScorer(object):
    """
    Penalized disc functional for one center and degree. Remembers the
    best admissible coefficient vector it has seen.

    :param bool restrict: only discs in B1 or B2 are admissible
    """

    def __init__(self, obj, x, degree, cfg, restrict=False):
        self.obj = obj
        self.x = x
        self.degree = degree
        self.cfg = cfg
        self.restrict = restrict
        self.quadrature = CircleQuadrature(cfg.quadrature)
        k = np.arange(1, degree + 1)
        self._edge = self.quadrature.nodes[:, None] ** k
        self._range = probe_points(cfg.probe)[:, None] ** k
        self.best_value = np.inf
        self.best_vector = None
        self.evals = 0
        self.feasible = 0
        self.infeasible = 0
        self.restart_feasible = False

    def coeffs(self, vector):
        real = np.asarray(vector, dtype=float).reshape(
            self.obj.dimension, self.degree, 2)
        return real[..., 0] + 1j * real[..., 1]

    def disc(self, vector):
        return AnalyticDisc.from_vector(self.x, vector, self.degree)

    def measure(self, vector):
        """(functional value, range margin, W margin, outer margin)."""
        c = self.coeffs(vector)
        edge = self.x + self._edge @ c.T
        inner = self.x + self._range @ c.T
        obj = self.obj
        m_x = obj.X.signed_margin(edge)
        m_w = obj.W.signed_margin(edge)
        range_m = min(float(np.min(m_x)),
                      float(np.min(obj.X.signed_margin(inner))))
        inner_m = float(np.min(m_w))
        outer_m = float(np.min(np.minimum(m_x, -m_w)))

        inside = m_x > 0
        values = np.zeros(len(edge))
        if inside.any():
            values[inside] = obj.phi(edge[inside])
            finite = values[inside][np.isfinite(values[inside])]
            values[~inside] = finite.max() if finite.size else 0.0
        value = self.quadrature.mean(values)
        return value, range_m, inner_m, outer_m

    def label(self, vector):
        """Disc label on the same nodes that decide admissibility."""
        _, range_m, inner_m, outer_m = self.measure(vector)
        return label_for(range_m, inner_m, outer_m, self.cfg.mu)

    def admissible(self, range_m, inner_m, outer_m):
        label = label_for(range_m, inner_m, outer_m, self.cfg.mu)
        if self.restrict:
            return label in (B1, B2)
        return range_m >= self.cfg.mu

    def __call__(self, vector):
        value, range_m, inner_m, outer_m = self.measure(vector)
        self.evals += 1
        mu = self.cfg.mu
        gap = max(0.0, mu - range_m) ** 2
        if self.restrict:
            gap += max(0.0, mu - max(inner_m, outer_m)) ** 2
        if self.admissible(range_m, inner_m, outer_m):
            self.feasible += 1
            self.restart_feasible = True
            if value < self.best_value:
                self.best_value = value
                self.best_vector = np.array(vector, dtype=float)
        else:
            self.infeasible += 1
        return max(value, FLOOR) + self.cfg.penalty_weight * gap


def structured_seeds(obj, x, degree, samples=SEED_SAMPLES):
    """
    Starting discs of the given degree built around W's anchor point a:
    circle discs whose boundary runs on a sphere around a (Blaschke
    reparametrized so that f(0) = x) and truncated covering maps of an
    annulus around a, which spread the boundary over both sides of W.
    """
    a = obj.W.anchor
    r_w = float(obj.W.signed_margin(a))
    r_x = float(obj.X.signed_margin(a)) if obj.X.contains(a) else 0.0
    if degree < 1 or r_w <= 0 or r_x <= r_w:
        return []
    offset = x - a
    s = float(norm(offset))
    if s > 0:
        u = offset / s
    else:
        u = np.zeros(obj.dimension, dtype=complex)
        u[0] = 1.0
    nodes = np.exp(2j * np.pi * np.arange(samples) / samples)
    boundaries = []

    radii = [r_w + (r_x - r_w) * frac for frac in (0.25, 0.5, 0.75)]
    if s < r_w:
        radii.append(0.5 * (s + r_w))
    for t in radii:
        if t <= s:
            continue
        b = s / t
        boundaries.append(t * (nodes + b) / (1.0 + b * nodes))

    r_hi = 0.95 * r_x
    for frac in (0.6, 0.8, 0.9, 0.96):
        r_lo = frac * r_w
        if not r_lo < s < r_hi:
            continue
        lo, hi = np.log(r_lo), np.log(r_hi)
        m, h = 0.5 * (lo + hi), hi - lo
        z0 = 1j * np.tan(0.5 * (np.log(s) - m) * np.pi / h)
        for rho in _cover_radii(degree):
            w = rho * nodes
            w = (w + z0) / (1.0 + np.conj(z0) * w)
            psi = m - 1j * (h / np.pi) * np.log((1.0 + w) / (1.0 - w))
            boundaries.append(np.exp(psi))

    return [disc_from_boundary(x, a + g[:, None] * u[None, :], degree)
            for g in boundaries]


def _cover_radii(degree):
    """Contraction factors rho with rho ** degree small."""
    return [min(0.98, float(np.exp(-c / degree))) for c in (2.0, 3.0, 4.5)]


def _simplex(v0, scale):
    dim = len(v0)
    return np.vstack([v0, v0 + scale * np.eye(dim)])


def _nm_options(cfg, v0, scale):
    return {"maxfev": cfg.max_evals, "xatol": cfg.tolerance,
            "fatol": cfg.tolerance, "initial_simplex": _simplex(v0, scale)}


def _starts(scorer, incumbent, cfg, scale):
    """Carried incumbent, constant disc, ranked structured seeds, Gaussians."""
    dim = 2 * scorer.obj.dimension * scorer.degree
    starts = []
    if incumbent is not None and incumbent.degree > 0:
        starts.append(incumbent.padded(scorer.degree).to_vector())
    starts.append(np.zeros(dim))
    seeds = [s.to_vector() for s in
             structured_seeds(scorer.obj, scorer.x, scorer.degree)]
    seeds.sort(key=scorer)
    starts.extend(seeds[:STRUCTURED_STARTS])
    restart = 0
    while len(starts) < max(cfg.restarts, 1):
        rng = np.random.default_rng([cfg.seed, scorer.degree, restart])
        starts.append(scale * rng.standard_normal(dim))
        restart += 1
    return starts


def _init_scale(obj, x, cfg):
    if cfg.init_scale is not None:
        return float(cfg.init_scale)
    return 0.1 * float(obj.X.signed_margin(x))


def _search(obj, x, cfg, restrict):
    x = as_points(x, obj.dimension)
    if not obj.X.contains(x):
        raise SearchError("Search center {0} is outside X".format(x.tolist()))
    mode = F if restrict else EH
    scale = _init_scale(obj, x, cfg)
    incumbent = value = label = None
    per_degree, trace = [], []
    feasible = infeasible = 0

    for degree in cfg.degree_schedule:
        scorer = DiscScorer(obj, x, degree, cfg, restrict)
        for restart, v0 in enumerate(_starts(scorer, incumbent, cfg, scale)):
            before = scorer.evals
            scorer.restart_feasible = False
            minimize(scorer, v0, method="Nelder-Mead",
                     options=_nm_options(cfg, v0, scale))
            best = scorer.best_value if scorer.best_vector is not None \
                else None
            trace.append(TraceRow(degree, restart, scorer.evals - before,
                                  best, scorer.restart_feasible))
        feasible += scorer.feasible
        infeasible += scorer.infeasible
        if scorer.best_vector is not None:
            incumbent = scorer.disc(scorer.best_vector)
            value = scorer.best_value
            label = scorer.label(scorer.best_vector)
            per_degree.append((degree, scorer.best_value, scorer.evals))
        else:
            per_degree.append((degree, None, scorer.evals))
        log.debug("%s search at %s: degree %d best %s after %d evals",
                  mode, x.tolist(), degree, per_degree[-1][1], scorer.evals)

    if incumbent is None:
        log.warning("No admissible %s disc found at %s", mode, x.tolist())
        return SearchResult(mode, x, None, None, None, per_degree, trace,
                            feasible, infeasible)
    log.info("%s estimate at %s: %.6g (%s, degree %d)", mode, x.tolist(),
             value, label, incumbent.degree)
    return SearchResult(mode, x, value, incumbent, label, per_degree, trace,
                        feasible, infeasible)


def eh_estimate(obj, x, cfg=None):
    """
    Upper estimate of the envelope at ``x``: the least disc functional
    value over feasible discs with f(0) = x that the search reaches.
    """
    return _search(obj, x, cfg or SearchConfig(), restrict=False)


def f_estimate(obj, x, cfg=None):
    """As :py:func:`eh_estimate`, restricted to discs in B1 or B2."""
    return _search(obj, x, cfg or SearchConfig(), restrict=True)


def find_covering_disc(obj, x, cfg=None):
    """
    Look for a disc in B1 or B2 centered at ``x`` by maximizing the class
    margin over coefficients. Failure is a value, never an exception.
    """
    cfg = cfg or SearchConfig()
    x = as_points(x, obj.dimension)
    probe = max(cfg.probe, 1024)

    def consider(disc):
        cls = classify(disc, obj, probe, cfg.mu)
        margin = min(cls.range_margin, max(cls.inner_margin,
                                           cls.outer_margin))
        if cls.in_b:
            return Coverage(True, cls.label, disc, cls.boundary_margin)
        if margin > best[0]:
            best[:] = [margin, cls.label, disc]
        return None

    best = [-np.inf, None, None]
    found = consider(AnalyticDisc.constant(x))
    if found:
        return found
    scale = _init_scale(obj, x, cfg)
    for degree in cfg.degree_schedule:
        for seed in structured_seeds(obj, x, degree):
            found = consider(seed)
            if found:
                return found
        scorer = DiscScorer(obj, x, degree, cfg, restrict=True)

        def negative_margin(vector):
            _, range_m, inner_m, outer_m = scorer.measure(vector)
            return -min(range_m, max(inner_m, outer_m))

        for v0 in _starts(scorer, None, cfg, scale):
            res = minimize(negative_margin, v0, method="Nelder-Mead",
                           options=_nm_options(cfg, v0, scale))
            found = consider(scorer.disc(res.x))
            if found:
                return found
    log.warning("No covering disc at %s; best margin %.3g", x.tolist(),
                best[0])
    return Coverage(False, best[1], best[2], best[0])


def usc_probe(obj, points, cfg=None):
    """
    F estimates along a sequence converging to its last point, and the
    defect max(0, limsup along the sequence - value at the limit).
    """
    cfg = cfg or SearchConfig()
    if len(points) < 2:
        raise SearchError("usc_probe needs a sequence and its limit")
    values = [f_estimate(obj, p, cfg).value for p in points]
    if values[-1] is None:
        raise SearchError("No B-disc at the limit point")
    tail = [v for v in values[len(values) // 2:-1] if v is not None]
    if not tail:
        tail = [v for v in values[:-1] if v is not None]
    defect = max(0.0, max(tail) - values[-1]) if tail else 0.0
    return UscProbe(list(points), values, defect)
