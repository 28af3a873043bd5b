# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Domains of C^n (n = 1, 2) from a fixed constructor catalog, with exact or
conservative signed margins, boundary samples and grids.
"""

import attr
import numpy as np

from .errors import DimensionMismatchError, DomainError, GridError
from .utils import (
    as_points, complex_pair, derived_rng, norm, parse_complex, parse_point,
    point_to_list, to_real, unit_sphere_samples
)

__all__ = [
    "Ball", "Annulus", "Polydisc", "SlitDisc", "CuspRegion", "Difference",
    "Intersection", "Union", "BallUnion", "GridSpec", "Grid", "contains",
    "signed_margin", "boundary_sample", "make_grid", "domain_from_dict",
]

#: Composite domains nested deeper than this have no boundary sampler.
MAX_DEPTH = 2
_ON_BOUNDARY = 1e-9


def _coords(value):
    return tuple(complex(c) for c in np.atleast_1d(np.asarray(value,
                                                               dtype=complex)))


def _positive(inst, attribute, value):
    if not np.all(np.asarray(value, dtype=float) > 0):
        msg = "{0} must be positive, got {1!r}".format(attribute.name, value)
        raise DomainError(msg)


def _circle(center, radius, k, phase=0.0):
    theta = phase + 2.0 * np.pi * np.arange(k) / k
    return center + radius * np.exp(1j * theta)


def _split(k, parts):
    base, extra = divmod(k, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _sphere(center, radius, k, key):
    """k points on the sphere of C^n around ``center``."""
    center = np.asarray(center, dtype=complex)
    if center.shape[-1] == 1:
        return _circle(center[0], radius, k)[:, None]
    rng = derived_rng("sphere", key, k)
    return center + radius * unit_sphere_samples(rng, k, center.shape[-1])


class Domain(object):
    """
    Base class of the domain catalog. Every domain is open and
    ``contains(p)`` holds exactly when ``signed_margin(p) > 0``.
    """
    kind = None
    depth = 0

    @property
    def dimension(self):
        raise NotImplementedError

    def _margin(self, points):
        raise NotImplementedError

    def _boundary(self, k):
        raise NotImplementedError

    def bounding_box(self):
        raise NotImplementedError

    @property
    def anchor(self):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    def signed_margin(self, p):
        pts = as_points(p, self.dimension)
        out = self._margin(pts)
        if pts.ndim == 1:
            return float(out)
        return out

    def contains(self, p):
        m = self.signed_margin(p)
        return m > 0

    def closure_contains(self, p, tol=0.0):
        return self.signed_margin(p) >= -tol

    def boundary_points(self, k):
        if k < 4:
            msg = "boundary_sample needs k >= 4, got {0}".format(k)
            raise DomainError(msg)
        if self.depth > MAX_DEPTH:
            msg = "Composite nesting depth {0} exceeds {1}".format(
                self.depth, MAX_DEPTH)
            raise DomainError(msg)
        return self._boundary(k)


@attr.s(frozen=True)
class Ball(Domain):
    """Open Euclidean ball B(center, radius)."""
    kind = "ball"

    center = attr.ib(converter=_coords)
    radius = attr.ib(converter=float, validator=_positive)
    label  = attr.ib(default="", repr=False)

    @property
    def dimension(self):
        return len(self.center)

    @property
    def anchor(self):
        return np.array(self.center)

    def _margin(self, points):
        return self.radius - norm(points - np.array(self.center))

    def _boundary(self, k):
        return _sphere(self.center, self.radius, k, ("ball", self.center))

    def bounding_box(self):
        box = []
        for c in self.center:
            box.append((c.real - self.radius, c.real + self.radius))
            box.append((c.imag - self.radius, c.imag + self.radius))
        return box

    def to_dict(self):
        return {"kind": self.kind, "center": point_to_list(self.center),
                "radius": self.radius, "label": self.label}


@attr.s(frozen=True)
class Annulus(Domain):
    """Spherical shell inner < |p - center| < outer."""
    kind = "annulus"

    center = attr.ib(converter=_coords)
    inner  = attr.ib(converter=float, validator=_positive)
    outer  = attr.ib(converter=float, validator=_positive)
    label  = attr.ib(default="", repr=False)

    @outer.validator
    def _outer_exceeds_inner(self, attribute, value):
        if value <= self.inner:
            raise DomainError("Annulus needs inner < outer")

    @property
    def dimension(self):
        return len(self.center)

    @property
    def anchor(self):
        return np.array(self.center)

    def _margin(self, points):
        r = norm(points - np.array(self.center))
        return np.minimum(r - self.inner, self.outer - r)

    def _boundary(self, k):
        k_in, k_out = _split(k, 2)
        key = ("annulus", self.center)
        return np.concatenate([_sphere(self.center, self.inner, k_in, key),
                               _sphere(self.center, self.outer, k_out, key)])

    def bounding_box(self):
        return Ball(self.center, self.outer).bounding_box()

    def to_dict(self):
        return {"kind": self.kind, "center": point_to_list(self.center),
                "inner": self.inner, "outer": self.outer, "label": self.label}


@attr.s(frozen=True)
class Polydisc(Domain):
    """Product of discs |p_j - center_j| < radii_j."""
    kind = "polydisc"

    center = attr.ib(converter=_coords)
    radii  = attr.ib(converter=lambda r: tuple(float(x) for x in
                                               np.atleast_1d(r)),
                     validator=_positive)
    label  = attr.ib(default="", repr=False)

    @radii.validator
    def _one_radius_per_coordinate(self, attribute, value):
        if len(value) != len(self.center):
            raise DimensionMismatchError(
                "Polydisc needs one radius per coordinate")

    @property
    def dimension(self):
        return len(self.center)

    @property
    def anchor(self):
        return np.array(self.center)

    def _margin(self, points):
        gaps = np.array(self.radii) - np.abs(points - np.array(self.center))
        return np.min(gaps, axis=-1)

    def _boundary(self, k):
        c = np.array(self.center)
        if self.dimension == 1:
            return _circle(c[0], self.radii[0], k)[:, None]
        rng = derived_rng("polydisc", self.center, self.radii, k)
        faces = []
        for j, count in enumerate(_split(k, 2)):
            pts = np.empty((count, 2), dtype=complex)
            other = 1 - j
            pts[:, j] = _circle(c[j], self.radii[j], count)
            rad = self.radii[other] * np.sqrt(rng.random(count))
            pts[:, other] = c[other] + rad * np.exp(
                2j * np.pi * rng.random(count))
            faces.append(pts)
        return np.concatenate(faces)

    def bounding_box(self):
        box = []
        for c, r in zip(self.center, self.radii):
            box.append((c.real - r, c.real + r))
            box.append((c.imag - r, c.imag + r))
        return box

    def to_dict(self):
        return {"kind": self.kind, "center": point_to_list(self.center),
                "radii": list(self.radii), "label": self.label}


@attr.s(frozen=True)
class SlitDisc(Domain):
    """
    Disc of C minus the closed segment [start, end]; ``start == end``
    gives a punctured disc.
    """
    kind = "slit_disc"

    center = attr.ib(converter=complex)
    radius = attr.ib(converter=float, validator=_positive)
    start  = attr.ib(converter=complex)
    end    = attr.ib(converter=complex)
    label  = attr.ib(default="", repr=False)

    @property
    def dimension(self):
        return 1

    @property
    def anchor(self):
        return np.array([self.center])

    def _segment_distance(self, z):
        a, b = self.start, self.end
        d = b - a
        if d == 0:
            return np.abs(z - a)
        t = np.clip(((z - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
        return np.abs(z - (a + t * d))

    def _margin(self, points):
        z = points[..., 0]
        disc = self.radius - np.abs(z - self.center)
        return np.where(disc > 0,
                        np.minimum(disc, self._segment_distance(z)), disc)

    def _boundary(self, k):
        k_circle, k_slit = _split(k, 2)
        t = np.linspace(0.0, 1.0, k_slit)
        slit = self.start + t * (self.end - self.start)
        return np.concatenate([_circle(self.center, self.radius, k_circle),
                               slit])[:, None]

    def bounding_box(self):
        return Ball([self.center], self.radius).bounding_box()

    def to_dict(self):
        return {"kind": self.kind, "center": [complex_pair(self.center)],
                "radius": self.radius, "slit": [complex_pair(self.start),
                                                complex_pair(self.end)],
                "label": self.label}


@attr.s(frozen=True)
class CuspRegion(Domain):
    """
    {vertex + x + iy : 0 < x < x_max, |y| < g(x)} with g(x) = exp(-1/x)
    (``profile="exp"``) or g(x) = x**exponent (``profile="power"``).
    """
    kind = "cusp_region"

    vertex   = attr.ib(converter=complex)
    x_max    = attr.ib(converter=float, validator=_positive)
    profile  = attr.ib(default="exp",
                       validator=attr.validators.in_(["exp", "power"]))
    exponent = attr.ib(default=2.0, converter=float)
    label    = attr.ib(default="", repr=False)

    @exponent.validator
    def _exponent_above_one(self, attribute, value):
        if self.profile == "power" and value <= 1:
            raise DomainError("Power cusps need exponent > 1")

    @property
    def dimension(self):
        return 1

    @property
    def anchor(self):
        return np.array([self.vertex])

    def width(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.where(x > 0, x, 1.0)
        if self.profile == "exp":
            g = np.exp(-1.0 / safe)
        else:
            g = safe ** self.exponent
        return np.where(x > 0, g, 0.0)

    @property
    def lipschitz(self):
        if self.profile == "exp":
            x = min(0.5, self.x_max)
            return float(np.exp(-1.0 / x) / x ** 2)
        return self.exponent * self.x_max ** (self.exponent - 1.0)

    def _margin(self, points):
        w = points[..., 0] - self.vertex
        x, y = w.real, w.imag
        gap = (self.width(np.clip(x, 0.0, self.x_max)) - np.abs(y)) / \
            np.sqrt(1.0 + self.lipschitz ** 2)
        return np.minimum(np.minimum(x, self.x_max - x), gap)

    def _boundary(self, k):
        k_up, k_down, k_side = _split(k, 3)
        up = self.x_max * np.linspace(0.0, 1.0, k_up)
        down = self.x_max * np.linspace(0.0, 1.0, k_down)
        side = self.width(self.x_max) * np.linspace(-1.0, 1.0, k_side)
        pts = np.concatenate([up + 1j * self.width(up),
                              down - 1j * self.width(down),
                              self.x_max + 1j * side])
        return (self.vertex + pts)[:, None]

    def bounding_box(self):
        h = float(self.width(self.x_max))
        v = self.vertex
        return [(v.real, v.real + self.x_max), (v.imag - h, v.imag + h)]

    def to_dict(self):
        return {"kind": self.kind, "vertex": complex_pair(self.vertex),
                "x_max": self.x_max, "profile": self.profile,
                "exponent": self.exponent, "label": self.label}


def _same_dimension(parts):
    dims = set(p.dimension for p in parts)
    if len(dims) != 1:
        raise DimensionMismatchError(
            "Composite domain mixes dimensions {0}".format(sorted(dims)))


class _Composite(Domain):

    @property
    def dimension(self):
        return self.parts[0].dimension

    @property
    def depth(self):
        return 1 + max(p.depth for p in self.parts)

    @property
    def anchor(self):
        return self.parts[0].anchor

    def _boundary(self, k):
        oversample = 4 * k
        counts = _split(oversample, len(self.parts))
        pts = np.concatenate([p._boundary(max(c, 4))
                              for p, c in zip(self.parts, counts)])
        keep = np.abs(self._margin(pts)) <= _ON_BOUNDARY
        pts = pts[keep]
        if len(pts) > k:
            idx = np.linspace(0, len(pts) - 1, k).round().astype(int)
            pts = pts[idx]
        return pts


@attr.s(frozen=True)
class Difference(_Composite):
    """outer minus the closure of inner."""
    kind = "difference"

    outer = attr.ib(validator=attr.validators.instance_of(Domain))
    inner = attr.ib(validator=attr.validators.instance_of(Domain))
    label = attr.ib(default="", repr=False)

    def __attrs_post_init__(self):
        _same_dimension(self.parts)

    @property
    def parts(self):
        return (self.outer, self.inner)

    def _margin(self, points):
        return np.minimum(self.outer._margin(points),
                          -self.inner._margin(points))

    def bounding_box(self):
        return self.outer.bounding_box()

    def to_dict(self):
        return {"kind": self.kind, "outer": self.outer.to_dict(),
                "inner": self.inner.to_dict(), "label": self.label}


@attr.s(frozen=True)
class Intersection(_Composite):
    kind = "intersection"

    parts = attr.ib(converter=tuple)
    label = attr.ib(default="", repr=False)

    def __attrs_post_init__(self):
        if not self.parts:
            raise DomainError("Intersection needs at least one part")
        _same_dimension(self.parts)

    def _margin(self, points):
        return np.min([p._margin(points) for p in self.parts], axis=0)

    def bounding_box(self):
        boxes = np.array([p.bounding_box() for p in self.parts])
        return [(lo, hi) for lo, hi in zip(boxes[:, :, 0].max(axis=0),
                                           boxes[:, :, 1].min(axis=0))]

    def to_dict(self):
        return {"kind": self.kind,
                "parts": [p.to_dict() for p in self.parts],
                "label": self.label}


@attr.s(frozen=True)
class Union(_Composite):
    kind = "union"

    parts = attr.ib(converter=tuple)
    label = attr.ib(default="", repr=False)

    def __attrs_post_init__(self):
        if not self.parts:
            raise DomainError("Union needs at least one part")
        _same_dimension(self.parts)

    def _margin(self, points):
        return np.max([p._margin(points) for p in self.parts], axis=0)

    def bounding_box(self):
        boxes = np.array([p.bounding_box() for p in self.parts])
        return [(lo, hi) for lo, hi in zip(boxes[:, :, 0].min(axis=0),
                                           boxes[:, :, 1].max(axis=0))]

    def to_dict(self):
        return {"kind": self.kind,
                "parts": [p.to_dict() for p in self.parts],
                "label": self.label}


@attr.s(frozen=True, eq=False)
class BallUnion(Domain):
    """
    Union of the open balls of one radius around a point cloud, the
    open neighbourhood U(rho) of a set sampled by ``centers``.
    """
    kind = "ball_union"

    centers = attr.ib(converter=lambda c: np.atleast_2d(
        np.asarray(c, dtype=complex)))
    radius  = attr.ib(converter=float, validator=_positive)
    label   = attr.ib(default="", repr=False)

    @centers.validator
    def _nonempty(self, attribute, value):
        if value.shape[0] == 0:
            raise DomainError("BallUnion needs at least one center")

    @property
    def dimension(self):
        return self.centers.shape[1]

    @property
    def anchor(self):
        return self.centers[0].copy()

    def _margin(self, points):
        flat = points.reshape(-1, self.dimension)
        out = np.empty(flat.shape[0])
        # chunked to keep the pairwise distance table small
        step = max(1, 2 ** 20 // len(self.centers))
        for i in range(0, flat.shape[0], step):
            block = flat[i:i + step]
            d = norm(block[:, None, :] - self.centers[None, :, :])
            out[i:i + step] = self.radius - d.min(axis=1)
        return out.reshape(points.shape[:-1])

    def _boundary(self, k):
        counts = _split(4 * k, len(self.centers))
        pts = np.concatenate([
            _sphere(c, self.radius, max(m, 4), ("ball_union", i))
            for i, (c, m) in enumerate(zip(self.centers, counts)) if m > 0])
        pts = pts[np.abs(self._margin(pts)) <= _ON_BOUNDARY]
        if len(pts) > k:
            idx = np.linspace(0, len(pts) - 1, k).round().astype(int)
            pts = pts[idx]
        return pts

    def bounding_box(self):
        re = to_real(self.centers)
        return [(lo - self.radius, hi + self.radius)
                for lo, hi in zip(re.min(axis=0), re.max(axis=0))]

    def to_dict(self):
        return {"kind": self.kind,
                "centers": [point_to_list(c) for c in self.centers],
                "radius": self.radius, "label": self.label}


def contains(d, p):
    """``True`` iff ``p`` lies in the open set ``d`` (vectorized)."""
    return d.contains(p)


def signed_margin(d, p):
    """
    Positive inside, negative outside. Exact distance to the boundary for
    balls, annuli and polydiscs (min-coordinate distance); a conservative
    lower bound for composite kinds.
    """
    return d.signed_margin(p)


def boundary_sample(d, k):
    """``k`` points on the boundary of ``d``, covering every component."""
    return d.boundary_points(k)


#####
# Grids
#####

def _box(value):
    return tuple((float(lo), float(hi)) for lo, hi in value)


@attr.s(frozen=True)
class GridSpec(object):
    """
    :param box: one (lo, hi) interval per real axis, ordered
        ``re z1, im z1, re z2, im z2``
    :param resolution: node count per real axis
    :param restriction: only nodes inside this domain carry values
    :param bool slice: grid only the z1-plane, other coordinates are 0
    """
    box         = attr.ib(converter=_box)
    resolution  = attr.ib(converter=lambda r: tuple(int(x) for x in r))
    restriction = attr.ib(validator=attr.validators.instance_of(Domain))
    slice       = attr.ib(default=False, converter=bool)

    @box.validator
    def _ordered(self, attribute, value):
        for lo, hi in value:
            if not lo < hi:
                raise GridError("Grid interval ({0}, {1}) is empty".format(
                    lo, hi))

    @resolution.validator
    def _matches_axes(self, attribute, value):
        axes = 2 if self.slice else 2 * self.restriction.dimension
        if len(self.box) != axes or len(value) != axes:
            msg = "Grid needs {0} intervals and resolutions, got {1}/{2}"
            msg = msg.format(axes, len(self.box), len(value))
            raise GridError(msg)
        if min(value) < 2:
            raise GridError("Grid resolution must be >= 2 per axis")

    @property
    def dimension(self):
        return self.restriction.dimension

    @classmethod
    def around(cls, domain, resolution, pad=0.0, slice=False):
        box = domain.bounding_box()
        if slice:
            box = box[:2]
        box = [(lo - pad, hi + pad) for lo, hi in box]
        if np.isscalar(resolution):
            resolution = [int(resolution)] * len(box)
        return cls(box, resolution, domain, slice)


@attr.s(frozen=True, eq=False)
class Grid(object):
    """Enumerated grid: row-major nodes over the real axes of a GridSpec."""
    spec     = attr.ib()
    axes     = attr.ib(repr=False)
    points   = attr.ib(repr=False)
    interior = attr.ib(repr=False)

    @property
    def shape(self):
        return tuple(len(a) for a in self.axes)

    @property
    def steps(self):
        return np.array([a[1] - a[0] for a in self.axes])

    @property
    def step(self):
        return float(self.steps.max())

    def nodes(self):
        """Yield ``(index, point, interior)`` in row-major order."""
        for flat, (p, flag) in enumerate(zip(self.points, self.interior)):
            yield np.unravel_index(flat, self.shape), p, bool(flag)

    def to_index(self, coords):
        """Real coordinates -> fractional grid indices (per axis)."""
        lo = np.array([a[0] for a in self.axes])
        return (np.asarray(coords) - lo) / self.steps

    def nearest(self, point):
        """Flat index and distance of the interior node nearest ``point``."""
        p = as_points(point, self.spec.dimension)
        d = norm(self.points - p)
        d = np.where(self.interior, d, np.inf)
        i = int(np.argmin(d))
        return i, float(d[i])


def make_grid(g):
    """
    Enumerate the nodes of ``g`` row-major; nodes inside the restriction
    are interior.

    :raises GridError: when no node lies inside the restriction
    """
    axes = [np.linspace(lo, hi, res) for (lo, hi), res in
            zip(g.box, g.resolution)]
    mesh = np.meshgrid(*axes, indexing="ij")
    real = np.stack([m.ravel() for m in mesh], axis=-1)
    n = g.dimension
    if g.slice:
        points = np.zeros((real.shape[0], n), dtype=complex)
        points[:, 0] = real[:, 0] + 1j * real[:, 1]
    else:
        points = real[:, 0::2] + 1j * real[:, 1::2]
    interior = np.asarray(g.restriction.contains(points), dtype=bool)
    if not interior.any():
        raise GridError("No grid node lies inside {0}".format(
            g.restriction.label or g.restriction.kind))
    return Grid(g, axes, points, interior)


#####
# Scenario data
#####

def _center(data, n):
    p = parse_point(data["center"])
    if n is not None and len(p) != n:
        raise DimensionMismatchError(
            "Domain center has {0} coordinates, scenario has n={1}".format(
                len(p), n))
    return p


def domain_from_dict(data, n=None):
    """
    Build a Domain from its scenario description, e.g.
    ``{"kind": "ball", "center": [0], "radius": 1}``.
    """
    kind = data.get("kind")
    label = data.get("label", "")
    if kind == "ball":
        return Ball(_center(data, n), data["radius"], label)
    if kind == "annulus":
        return Annulus(_center(data, n), data["inner"], data["outer"], label)
    if kind == "polydisc":
        return Polydisc(_center(data, n), data["radii"], label)
    if kind == "slit_disc":
        if n not in (None, 1):
            raise DimensionMismatchError("slit_disc lives in C^1")
        start, end = data.get("slit", [0, 0])
        return SlitDisc(_center(data, 1)[0], data["radius"],
                        parse_complex(start), parse_complex(end), label)
    if kind == "cusp_region":
        if n not in (None, 1):
            raise DimensionMismatchError("cusp_region lives in C^1")
        return CuspRegion(parse_complex(data.get("vertex", 0)),
                          data.get("x_max", 0.5),
                          data.get("profile", "exp"),
                          data.get("exponent", 2.0), label)
    if kind == "difference":
        return Difference(domain_from_dict(data["outer"], n),
                          domain_from_dict(data["inner"], n), label)
    if kind in ("intersection", "union"):
        parts = [domain_from_dict(p, n) for p in data["parts"]]
        cls = Intersection if kind == "intersection" else Union
        return cls(parts, label)
    if kind == "ball_union":
        centers = [parse_point(c) for c in data["centers"]]
        return BallUnion(np.array(centers), data["radius"], label)
    raise DomainError("Unknown domain kind: '{0}'".format(kind))
