# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Maximum principle checks: for plurisubharmonic u and U compactly inside
X, the sup of u over U equals its sup over the boundary of U.
"""

import attr
import numpy as np

from .errors import BaseDiscError, DomainError, PshCertificationError
from .expressions import parse_expr
from .geometry import (
    Annulus, Ball, Difference, Domain, GridSpec, Union, boundary_sample,
    make_grid
)
from .utils import derived_rng, norm, setup_logger, unit_sphere_samples

log = setup_logger("MAXPRINCIPLE")

SUB_MEAN_NODES = 256
SUB_MEAN_TOL = 1e-8
DEFECT_TOL = 0.02


@attr.s(frozen=True)
class PshSample(object):
    """
    A plurisubharmonic test function and the open region where its
    sub-mean-value property is checked numerically.
    """
    name         = attr.ib()
    text         = attr.ib()
    note         = attr.ib()
    certified_on = attr.ib(validator=attr.validators.instance_of(Domain))
    expression   = attr.ib(init=False)

    def __attrs_post_init__(self):
        object.__setattr__(self, "expression", parse_expr(self.text))

    def __call__(self, points):
        return self.expression.evaluate(np.asarray(points, dtype=complex))


def _library():
    unit = Ball([0], 1.0)
    samples = [
        PshSample("abs2", "abs2(z1)", "squared modulus of z", unit),
        PshSample("re", "re(z1)", "real part of a holomorphic function",
                  unit),
        PshSample("im", "im(z1)", "real part of -iz", unit),
        PshSample("log_dist", "log((re(z1)-0.9)^2+im(z1)^2)/2",
                  "log modulus of z - 0.9", Ball([0], 0.85)),
        PshSample("max_re_abs2", "max(re(z1), abs2(z1))",
                  "max of two certified samples", unit),
        PshSample("sum_abs2_re", "abs2(z1)+re(z1)",
                  "sum of two certified samples", unit),
        PshSample("log_abs", "log(abs(z1))", "log modulus of z",
                  Annulus([0], 0.1, 1.0)),
        PshSample("norm2", "abs2(z1)+abs2(z2)", "squared norm in C^2",
                  Ball([0, 0], 1.0)),
    ]
    return dict((s.name, s) for s in samples)


PSH_LIBRARY = _library()


def _region_samples(region, count, rng):
    box = np.array(region.bounding_box())
    n = region.dimension
    found = []
    total = 0
    while total < count:
        real = rng.uniform(box[:, 0], box[:, 1], (4 * count, 2 * n))
        pts = real[:, 0::2] + 1j * real[:, 1::2]
        pts = pts[np.asarray(region.contains(pts), dtype=bool)]
        found.append(pts)
        total += len(pts)
    return np.concatenate(found)[:count]


def check_sub_mean(sample, region=None, count=1000, seed=0, lines=8):
    """
    Check u(p) <= mean of u over circles p + r e^{it} a, at ``count``
    random points p of ``region`` with radii up to half the margin. In
    C^2 each point is tested along ``lines`` random complex directions.

    :raises PshCertificationError: on the first violation
    """
    region = region or sample.certified_on
    rng = derived_rng("sub-mean", sample.name, seed)
    pts = _region_samples(region, count, rng)
    n = region.dimension
    radii = 0.5 * rng.random(count) * np.asarray(region.signed_margin(pts))
    theta = 2 * np.pi * np.arange(SUB_MEAN_NODES) / SUB_MEAN_NODES
    circle = np.exp(1j * theta)
    if n == 1:
        dirs = np.ones((1, 1), dtype=complex)
    else:
        dirs = unit_sphere_samples(rng, lines, n)
        dirs /= norm(dirs)[:, None]
    centre = sample(pts)
    for a in dirs:
        ring = pts[:, None, :] + (radii[:, None] * circle)[..., None] * a
        mean = np.mean(sample(ring), axis=1)
        bad = centre > mean + SUB_MEAN_TOL
        if np.any(bad):
            i = int(np.argmax(bad))
            msg = "{0} fails the sub-mean test at {1}: {2} > {3}".format(
                sample.name, pts[i].tolist(), centre[i], mean[i])
            raise PshCertificationError(msg)
    return True


@attr.s(frozen=True)
class SupComparison(object):
    sup_interior = attr.ib()
    sup_boundary = attr.ib()
    defect       = attr.ib()


def _check_compact(U, X, boundary_k):
    edge = boundary_sample(U, boundary_k)
    if not (X.contains(U.anchor) and np.all(X.signed_margin(edge) > 0)):
        msg = "{0} is not compactly contained in {1}".format(
            U.label or U.kind, X.label or X.kind)
        raise DomainError(msg)
    return edge


def sup_compare(u, U, X, resolution=257, boundary_k=1024):
    """
    (sup over interior grid nodes of U, sup over boundary samples of U,
    their difference). For U non-thin at its boundary the defect is close
    to 0 and never meaningfully positive.
    """
    edge = _check_compact(U, X, boundary_k)
    grid = make_grid(GridSpec.around(U, resolution))
    inner = grid.points[grid.interior]
    sup_u = float(np.max(u(inner)))
    sup_b = float(np.max(u(edge)))
    return SupComparison(sup_u, sup_b, sup_u - sup_b)


@attr.s(frozen=True)
class SuiteRow(object):
    sample       = attr.ib()
    set_label    = attr.ib()
    sup_interior = attr.ib()
    sup_boundary = attr.ib()
    defect       = attr.ib()
    passed       = attr.ib()
    error        = attr.ib(default=None)


def default_catalog():
    """Built-in (sample, set) pairs inside the unit disc."""
    lib = PSH_LIBRARY
    return [
        (lib["abs2"], Annulus([0], 0.3, 0.8, "annulus(0,0.3,0.8)")),
        (lib["re"], Ball([0.1], 0.5, "ball(0.1,0.5)")),
        (lib["log_dist"], Ball([0], 0.5, "ball(0,0.5)")),
        (lib["im"], Ball([-0.2], 0.4, "ball(-0.2,0.4)")),
        (lib["max_re_abs2"],
         Union([Ball([-0.5], 0.25), Ball([0.5], 0.25)],
               "two disjoint balls")),
        (lib["sum_abs2_re"],
         Difference(Ball([0], 0.7), Ball([0.2], 0.2),
                    "ball(0,0.7) minus ball(0.2,0.2)")),
        (lib["log_abs"], Annulus([0], 0.2, 0.6, "annulus(0,0.2,0.6)")),
    ]


@attr.s(frozen=True)
class SuiteResult(object):
    rows = attr.ib()

    @property
    def passed(self):
        return all(r.passed for r in self.rows)


def run_suite(catalog, X, resolution=257, boundary_k=1024, tol=DEFECT_TOL):
    """
    Compare sups for every pair; the suite passes when every defect is at
    most ``tol`` in absolute value. Errors are recorded per pair.
    """
    rows = []
    for sample, U in catalog:
        label = U.label or U.kind
        try:
            cmp = sup_compare(sample, U, X, resolution, boundary_k)
        except BaseDiscError as e:
            log.warning("%s on %s: %s", sample.name, label, e)
            rows.append(SuiteRow(sample.name, label, None, None, None, False,
                                 str(e)))
            continue
        passed = abs(cmp.defect) <= tol
        rows.append(SuiteRow(sample.name, label, cmp.sup_interior,
                             cmp.sup_boundary, cmp.defect, passed))
        log.info("%s on %s: defect %.3g", sample.name, label, cmp.defect)
    return SuiteResult(rows)
