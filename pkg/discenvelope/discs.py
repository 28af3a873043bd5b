# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Closed analytic discs as polynomial maps of the closed unit disc, the
uniform circle quadrature, disc classification and the Poisson functional.
"""

import attr
import numpy as np

from .config import MU, PROBE, QUADRATURE
from .errors import (
    DomainError, InfeasibleDiscError, QuadratureError
)
from .utils import parse_point, point_to_list

B1 = "B1"
B2 = "B2"
GENERAL = "GeneralFeasible"
INFEASIBLE = "Infeasible"
LABELS = (B1, B2, GENERAL, INFEASIBLE)

#: Radii of the concentric probe circles used for the range check.
RANGE_RADII = tuple(np.linspace(1.0, 0.125, 8))


def _center(value):
    return np.atleast_1d(np.asarray(value, dtype=complex)).copy()


def _coeffs(value):
    arr = np.asarray(value, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr.copy()


@attr.s(eq=False)
class AnalyticDisc(object):
    """
    f(z) = center + sum_{k=1..d} coeffs[:, k-1] z^k, so f(0) == center.

    :param center: point of C^n, shape ``(n,)``
    :param coeffs: complex table of shape ``(n, d)``
    """
    center = attr.ib(converter=_center)
    coeffs = attr.ib(converter=_coeffs)

    @coeffs.validator
    def _one_row_per_coordinate(self, attribute, value):
        if value.shape[0] != self.center.shape[0]:
            msg = "Disc coefficients have {0} rows for a point of C^{1}"
            raise DomainError(msg.format(value.shape[0],
                                         self.center.shape[0]))

    @classmethod
    def constant(cls, center, degree=0):
        center = _center(center)
        return cls(center, np.zeros((len(center), degree), dtype=complex))

    @classmethod
    def from_vector(cls, center, vector, degree):
        """Inverse of :py:meth:`to_vector`."""
        center = _center(center)
        real = np.asarray(vector, dtype=float).reshape(len(center), degree, 2)
        return cls(center, real[..., 0] + 1j * real[..., 1])

    @classmethod
    def from_dict(cls, data):
        center = parse_point(data["center"])
        degree = int(data["degree"])
        rows = [[complex(re, im) for re, im in row] for row in data["coeffs"]]
        coeffs = np.array(rows, dtype=complex).reshape(len(center), degree)
        return cls(center, coeffs)

    @property
    def dimension(self):
        return self.center.shape[0]

    @property
    def degree(self):
        return self.coeffs.shape[1]

    def to_vector(self):
        """Real coefficient vector of length 2*n*d."""
        return np.stack([self.coeffs.real, self.coeffs.imag], axis=-1).ravel()

    def padded(self, degree):
        if degree < self.degree:
            raise DomainError("Cannot pad a degree {0} disc to {1}".format(
                self.degree, degree))
        extra = np.zeros((self.dimension, degree - self.degree), dtype=complex)
        return AnalyticDisc(self.center, np.hstack([self.coeffs, extra]))

    def rotated(self, alpha):
        """f(e^{i alpha} z)."""
        k = np.arange(1, self.degree + 1)
        return AnalyticDisc(self.center, self.coeffs * np.exp(1j * alpha * k))

    def evaluate(self, z):
        """Horner evaluation; returns shape ``z.shape + (n,)``."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape + (self.dimension,), dtype=complex)
        zz = z[..., None]
        for k in range(self.degree - 1, -1, -1):
            acc = (acc + self.coeffs[:, k]) * zz
        return acc + self.center

    def to_dict(self):
        return {
            "center": point_to_list(self.center),
            "degree": self.degree,
            "coeffs": [[[c.real, c.imag] for c in row] for row in self.coeffs],
        }


def eval_disc(f, z):
    """
    Evaluate ``f`` at ``z`` in the closed unit disc.

    :raises DomainError: if ``|z| > 1 + 1e-12``
    """
    if np.any(np.abs(z) > 1 + 1e-12):
        raise DomainError("Discs are evaluated on the closed unit disc only")
    return f.evaluate(z)


def disc_from_boundary(center, values, degree):
    """
    Truncated Fourier synthesis: the disc of degree ``degree`` whose
    positive Fourier modes match ``values`` sampled at equally spaced
    angles on the circle. The constant term is forced to ``center``.
    """
    values = np.asarray(values, dtype=complex)
    if values.ndim == 1:
        values = values[:, None]
    m = values.shape[0]
    if degree >= m // 2:
        raise QuadratureError("Need more than 2*degree boundary samples")
    modes = np.fft.fft(values, axis=0) / m
    return AnalyticDisc(center, modes[1:degree + 1].T)


def _power_of_two(inst, attribute, value):
    if value < 256 or value & (value - 1):
        msg = "Quadrature size must be a power of two >= 256, got {0}"
        raise QuadratureError(msg.format(value))


@attr.s(frozen=True, eq=False)
class CircleQuadrature(object):
    """Equal-weight trapezoidal rule on the unit circle."""
    M = attr.ib(default=QUADRATURE, converter=int, validator=_power_of_two)

    @property
    def nodes(self):
        return np.exp(2j * np.pi * np.arange(self.M) / self.M)

    @property
    def weights(self):
        return np.full(self.M, 1.0 / self.M)

    def mean(self, values):
        """Weighted mean; ``-inf`` absorbs."""
        values = np.asarray(values, dtype=float)
        if np.any(values == -np.inf):
            return -np.inf
        return float(np.sum(values) / self.M)

    def refined(self, factor=2):
        return CircleQuadrature(self.M * factor)


@attr.s(frozen=True)
class DiscClass(object):
    """
    A classification label with its margins: the range margin in X, and
    the boundary margins in W and in X minus the closure of W.
    """
    label        = attr.ib(validator=attr.validators.in_(LABELS))
    range_margin = attr.ib(converter=float)
    inner_margin = attr.ib(converter=float)
    outer_margin = attr.ib(converter=float)

    @property
    def feasible(self):
        return self.label != INFEASIBLE

    @property
    def in_b(self):
        return self.label in (B1, B2)

    @property
    def boundary_margin(self):
        if self.label == B1:
            return self.inner_margin
        if self.label == B2:
            return self.outer_margin
        return max(self.inner_margin, self.outer_margin)

    def to_dict(self):
        return attr.asdict(self)


def probe_points(probe):
    """
    ``probe`` angles on the unit circle followed by concentric circles of
    ``probe / 8`` angles each and the origin.
    """
    edge = np.exp(2j * np.pi * np.arange(probe) / probe)
    per_circle = max(probe // len(RANGE_RADII), 8)
    theta = 2 * np.pi * np.arange(per_circle) / per_circle
    circles = [r * np.exp(1j * theta) for r in RANGE_RADII[1:]]
    return np.concatenate([edge] + circles + [np.zeros(1)])


def range_margin(f, X, probe=PROBE):
    """Min signed margin in ``X`` over probe circles of the closed disc."""
    pts = f.evaluate(probe_points(probe))
    return float(np.min(X.signed_margin(pts)))


def boundary_margins(f, obj, probe=PROBE):
    """(margin in W, margin in X minus closure of W) over f(T)."""
    pts = f.evaluate(np.exp(2j * np.pi * np.arange(probe) / probe))
    m_w = obj.W.signed_margin(pts)
    m_x = obj.X.signed_margin(pts)
    return float(np.min(m_w)), float(np.min(np.minimum(m_x, -m_w)))


def label_for(range_m, inner_m, outer_m, mu=MU):
    if range_m < mu:
        return INFEASIBLE
    if inner_m >= mu:
        return B1
    if outer_m >= mu:
        return B2
    return GENERAL


def classify(f, obj, probe=PROBE, mu=MU):
    """
    Classify ``f`` into B1 (f(T) in W), B2 (f(T) in X minus the closure of
    W), GeneralFeasible or Infeasible, with safety gap ``mu``.
    """
    if probe < 1024:
        raise QuadratureError("classify needs probe >= 1024")
    range_m = range_margin(f, obj.X, probe)
    inner_m, outer_m = boundary_margins(f, obj, probe)
    return DiscClass(label_for(range_m, inner_m, outer_m, mu),
                     range_m, inner_m, outer_m)


def poisson_mean(f, obj, q=None, mu=MU, probe=PROBE):
    """
    Mean of the objective over f(T) at the quadrature nodes.

    :raises InfeasibleDiscError: if f leaves X (range margin below ``mu``)
    :raises ObjectiveError: if the objective is +inf at a boundary node
    """
    q = q or CircleQuadrature()
    margin = range_margin(f, obj.X, probe)
    if margin < mu:
        msg = "Disc is infeasible (range margin {0:.3g} < {1:g})".format(
            margin, mu)
        raise InfeasibleDiscError(msg)
    pts = f.evaluate(q.nodes)
    if not np.all(obj.X.contains(pts)):
        raise InfeasibleDiscError("Disc leaves X between probe nodes")
    return q.mean(obj.phi(pts))


def boundary_measure(f, target, q=None):
    """Fraction of quadrature nodes whose image lies in ``target``."""
    q = q or CircleQuadrature()
    inside = np.asarray(target.contains(f.evaluate(q.nodes)), dtype=bool)
    return float(np.count_nonzero(inside)) / q.M
