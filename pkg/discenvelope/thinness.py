# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Disc characterization of thinness. A set is non-thin at x when discs
centered at x, staying in a neighbourhood V of x, send boundary measure
arbitrarily close to 1 into the set. Certificates are constructive;
thinness is only ever reported as evidence from the grid oracle.
"""

import attr
import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from . import config
from .discs import (
    AnalyticDisc, CircleQuadrature, boundary_measure, range_margin
)
from .envelope import SearchConfig
from .errors import ThinnessQueryError
from .geometry import Ball, BallUnion, Domain, Intersection
from .perron import RelaxConfig, thinness_oracle as _oracle
from .utils import norm, setup_logger

log = setup_logger("THINNESS")

NONTHIN = "NonThin"
THIN_EVIDENCE = "ThinEvidence"
INCONCLUSIVE = "Inconclusive"
VERDICTS = (NONTHIN, THIN_EVIDENCE, INCONCLUSIVE)

RHO_SCHEDULE = (0.1, 0.01, 0.001)
#: Seed radii as fractions of the disc scale, largest first.
SEED_FRACTIONS = (0.5, 0.25, 0.1)
CLOSURE_TOL = 1e-9


def _cloud(value):
    if value is None:
        return None
    return np.atleast_2d(np.asarray(value, dtype=complex))


@attr.s(frozen=True, eq=False)
class ThinnessQuery(object):
    """
    Either an open ``target`` Domain or a point ``cloud`` sampling a
    general set Y; ``rho_schedule`` sizes the open supersets of a cloud.
    """
    x            = attr.ib(converter=lambda p: np.atleast_1d(
        np.asarray(p, dtype=complex)))
    v_radius     = attr.ib(converter=float)
    epsilon      = attr.ib(converter=float)
    target       = attr.ib(default=None)
    cloud        = attr.ib(default=None, converter=_cloud)
    rho_schedule = attr.ib(default=RHO_SCHEDULE,
                           converter=lambda r: tuple(float(x) for x in r))

    @v_radius.validator
    def _positive_radius(self, attribute, value):
        if value <= 0:
            raise ThinnessQueryError("V radius must be positive")

    @epsilon.validator
    def _unit_interval(self, attribute, value):
        if not 0 < value < 1:
            raise ThinnessQueryError("epsilon must lie in (0, 1)")

    def __attrs_post_init__(self):
        if (self.target is None) == (self.cloud is None):
            raise ThinnessQueryError("Give exactly one of a domain or a "
                                     "point cloud")
        if self.target is not None:
            self._check_domain()
        else:
            self._check_cloud()

    @property
    def dimension(self):
        return len(self.x)

    @property
    def is_cloud(self):
        return self.cloud is not None

    def _check_domain(self):
        if not isinstance(self.target, Domain):
            raise ThinnessQueryError("Thinness target must be a Domain")
        if self.target.dimension != self.dimension:
            raise ThinnessQueryError("x and the set live in different "
                                     "dimensions")
        if self.target.signed_margin(self.x) < -CLOSURE_TOL:
            msg = "x = {0} is not in the closure of the set".format(
                self.x.tolist())
            raise ThinnessQueryError(msg)

    def _check_cloud(self):
        others = self.others()
        if not len(others):
            raise ThinnessQueryError("Y minus {x} is empty")
        nearest = float(np.min(norm(others - self.x)))
        if nearest > max(self.rho_schedule):
            msg = "x is isolated in Y (nearest point {0:.3g} away)".format(
                nearest)
            raise ThinnessQueryError(msg)
        if any(r <= 0 for r in self.rho_schedule):
            raise ThinnessQueryError("rho schedule must be positive")

    def others(self):
        """Y minus {x}."""
        pts = self.cloud
        if pts.shape[1] != self.dimension:
            raise ThinnessQueryError("Cloud points and x differ in dimension")
        keep = norm(pts - self.x) > 1e-15
        return pts[keep]

    @property
    def neighbourhood(self):
        return Ball(self.x, self.v_radius)

    def to_dict(self):
        out = {"x": [[z.real, z.imag] for z in self.x],
               "v_radius": self.v_radius, "epsilon": self.epsilon}
        if self.is_cloud:
            out["cloud_size"] = int(len(self.cloud))
            out["rho_schedule"] = list(self.rho_schedule)
        else:
            out["set"] = self.target.to_dict()
        return out


@attr.s(frozen=True)
class Certificate(object):
    disc    = attr.ib()
    measure = attr.ib()
    success = attr.ib()


@attr.s(frozen=True)
class RhoResult(object):
    rho         = attr.ib()
    success     = attr.ib()
    measure     = attr.ib()
    certificate = attr.ib()


@attr.s(eq=False)
class ThinnessReport(object):
    """Certificate, oracle bound and verdict of one thinness query."""
    verdict           = attr.ib(validator=attr.validators.in_(VERDICTS))
    query             = attr.ib()
    certificate       = attr.ib(default=None)
    best_measure      = attr.ib(default=0.0)
    oracle_value      = attr.ib(default=None)
    per_rho           = attr.ib(factory=list)
    all_rho_certified = attr.ib(default=False)

    def to_dict(self):
        cert = None
        if self.certificate is not None:
            cert = {"disc": self.certificate.disc.to_dict(),
                    "measure": self.certificate.measure}
        return {
            "verdict": self.verdict,
            "certificate": cert,
            "best_measure": self.best_measure,
            "oracle_value": self.oracle_value,
            "per_rho": [{"rho": r.rho, "success": r.success,
                         "measure": r.measure} for r in self.per_rho],
            "all_rho_certified": self.all_rho_certified,
            "query": self.query.to_dict(),
        }


def _radial_seeds(x, scale, degree):
    n = len(x)
    for s in SEED_FRACTIONS:
        for j in range(n):
            coeffs = np.zeros((n, degree), dtype=complex)
            coeffs[j, degree - 1] = s * scale
            yield AnalyticDisc(x, coeffs)


def _certificate_search(x, target, v, epsilon, scale, cfg):
    """
    Largest boundary measure in ``target`` over discs with f(0) = x and
    f(closed disc) in ``v``; stops at the first disc above 1 - epsilon
    that re-validates at four times the quadrature.
    """
    q = CircleQuadrature(cfg.quadrature)
    fine = q.refined(4)
    probe = max(cfg.probe, 1024)
    best = Certificate(AnalyticDisc.constant(x), 0.0, False)

    def check(disc):
        if range_margin(disc, v, probe) < cfg.mu:
            return None
        measure = boundary_measure(disc, target, q)
        success = measure > 1 - epsilon and \
            boundary_measure(disc, target, fine) > 1 - epsilon
        return Certificate(disc, measure, success)

    n = len(x)
    tau = 0.05 * scale
    for degree in cfg.degree_schedule:
        for seed in _radial_seeds(x, scale, degree):
            found = check(seed)
            if found is None:
                continue
            if found.success:
                return found
            if found.measure > best.measure:
                best = found
        k = np.arange(1, degree + 1)
        edge = q.nodes[:, None] ** k

        def smoothed(vector):
            real = np.asarray(vector).reshape(n, degree, 2)
            c = real[..., 0] + 1j * real[..., 1]
            pts = x + edge @ c.T
            soft = np.mean(expit(target.signed_margin(pts) / tau))
            gap = max(0.0, cfg.mu - float(np.min(v.signed_margin(pts))))
            return -soft + cfg.penalty_weight * gap ** 2

        start = best.disc.padded(degree) if best.disc.degree <= degree \
            else AnalyticDisc.constant(x, degree)
        starts = [start.to_vector()]
        for restart in range(max(cfg.restarts - 1, 0)):
            rng = np.random.default_rng([cfg.seed, degree, restart])
            starts.append(0.25 * scale * rng.standard_normal(2 * n * degree))
        for v0 in starts:
            simplex = np.vstack([v0, v0 + 0.1 * scale * np.eye(len(v0))])
            res = minimize(smoothed, v0, method="Nelder-Mead",
                           options={"maxfev": cfg.max_evals,
                                    "xatol": cfg.tolerance,
                                    "fatol": cfg.tolerance,
                                    "initial_simplex": simplex})
            found = check(AnalyticDisc.from_vector(x, res.x, degree))
            if found is None:
                continue
            if found.success:
                return found
            if found.measure > best.measure:
                best = found
        log.debug("degree %d: best measure %.4f", degree, best.measure)
    return best


def nonthin_certificate(query, cfg=None):
    """
    A disc f with f(0) = x, f(closed disc) inside V = ball(x, V_radius)
    and boundary measure in V and the set above 1 - epsilon, if the
    search finds one. Returns a :py:class:`Certificate` whose ``success``
    flag tells whether the bound was reached.
    """
    cfg = cfg or SearchConfig()
    if query.is_cloud:
        raise ThinnessQueryError("Use general_set_certificate for clouds")
    v = query.neighbourhood
    target = Intersection([query.target, v])
    return _certificate_search(query.x, target, v, query.epsilon,
                               query.v_radius, cfg)


def thinness_oracle(query, resolution=64, relax_cfg=None):
    """Relative extremal value of U cut to V1 = ball(x, V_radius / 2)."""
    if query.is_cloud:
        raise ThinnessQueryError("The oracle needs an open set")
    if query.dimension != 1:
        raise ThinnessQueryError("The thinness oracle works in C^1")
    return _oracle(query.target, query.x, query.v_radius, resolution,
                   relax_cfg or RelaxConfig())


def general_set_certificate(query, cfg=None):
    """
    Certificate search against U(rho) = union of open balls of radius rho
    around Y minus {x}, for each rho of the schedule. The verdict stays
    Inconclusive: a finite schedule never covers every open superset.
    """
    cfg = cfg or SearchConfig()
    if not query.is_cloud:
        raise ThinnessQueryError("general_set_certificate needs a cloud")
    others = query.others()
    v = query.neighbourhood
    per_rho = []
    best = None
    for rho in query.rho_schedule:
        target = Intersection([BallUnion(others, rho), v])
        scale = min(query.v_radius, rho)
        cert = _certificate_search(query.x, target, v, query.epsilon,
                                   scale, cfg)
        per_rho.append(RhoResult(rho, cert.success, cert.measure,
                                 cert if cert.success else None))
        if best is None or cert.measure > best.measure:
            best = cert
        log.info("rho %g: %s (measure %.4f)", rho,
                 "certified" if cert.success else "no certificate",
                 cert.measure)
    certified = all(r.success for r in per_rho)
    return ThinnessReport(INCONCLUSIVE, query,
                          best if best and best.success else None,
                          best.measure if best else 0.0, None, per_rho,
                          certified)


def thinness_report(query, cfg=None, relax_cfg=None, resolution=64,
                    thin_margin=config.THIN_MARGIN):
    """
    NonThin when a certificate is found, ThinEvidence when the search
    fails and the oracle stays at least ``thin_margin`` above -1,
    Inconclusive otherwise.
    """
    if query.is_cloud:
        return general_set_certificate(query, cfg)
    cert = nonthin_certificate(query, cfg)
    oracle = None
    if query.dimension == 1:
        oracle = thinness_oracle(query, resolution, relax_cfg)
    if cert.success:
        verdict = NONTHIN
    elif oracle is not None and oracle >= -1 + thin_margin:
        verdict = THIN_EVIDENCE
    else:
        verdict = INCONCLUSIVE
    log.info("Thinness at %s: %s (measure %.4f, oracle %s)",
             query.x.tolist(), verdict, cert.measure, oracle)
    return ThinnessReport(verdict, query,
                          cert if cert.success else None, cert.measure,
                          oracle)
