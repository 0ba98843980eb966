"""Closed-form beam fields.

All evaluators accept scalar or ndarray coordinates and return numpy
complex values of the matching shape. The carrier wave is always
exp[i(k*x3 - omega*t)]; the envelope families differ in how the
longitudinal coordinate enters:

* exact family: envelope argument s = (x3 + v*t)/2, an exact solution
  of the full wave equation;
* paraxial family: envelope argument x3, the standard beam-optics
  solution of the parabolic equation;
* alternate exact family: spherical wave from a source displaced by
  i*L_R along the axis, a second exact solution with a Gaussian
  paraxial limit;
* rational Gaussian form: the (0,0) exact field written with rational
  complex prefactors instead of spot radius and Gouy factors.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BranchCutWarning, ConstraintViolationError
from .numerics import hermite

#: Library guard on the total transverse order m + n.
MAX_MODE_SUM = 20

#: Points closer than this (in units of L_R) to the branch cut of the
#: displaced-source complex radius get a BranchCutWarning.
BRANCH_CUT_TOL = 1e-6


@dataclass(frozen=True)
class BeamParams:
    """Physical beam description.

    Parameters
    ----------
    k : float
        Longitudinal wavenumber (rad/length), > 0.
    w0 : float
        Waist radius (length), > 0.
    v : float
        Propagation speed (length/time), > 0.

    The angular frequency ``omega = k*v``, the Rayleigh range
    ``rayleigh_range = k*w0**2/2`` and the axial displacement constant
    ``a`` (equal to the Rayleigh range for this mode family) are derived.
    """

    k: float
    w0: float
    v: float = 1.0

    def __post_init__(self):
        for name in ("k", "w0", "v"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be finite and positive, got {val!r}")

    @property
    def omega(self) -> float:
        return self.k * self.v

    @property
    def rayleigh_range(self) -> float:
        return 0.5 * self.k * self.w0**2

    @property
    def a(self) -> float:
        return self.rayleigh_range


@dataclass(frozen=True)
class ModeIndex:
    """Transverse Hermite-Gaussian mode pair (m, n), both >= 0, m + n <= 20."""

    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            val = getattr(self, name)
            if val != int(val) or val < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {val!r}")
        if self.m + self.n > MAX_MODE_SUM:
            raise ValueError(
                f"mode order m + n = {self.m + self.n} exceeds the library guard {MAX_MODE_SUM}"
            )

    @property
    def total_order(self) -> int:
        return self.m + self.n


@dataclass(frozen=True, eq=False)
class SpaceTimePoint:
    """Cartesian space-time evaluation coordinate.

    Fields may be scalars or broadcasting ndarrays. The spherical view
    (``r``, ``theta``, ``phi``) and the co-moving longitudinal
    coordinate ``s`` are derived.
    """

    x1: float
    x2: float
    x3: float
    t: float = 0.0

    @property
    def rho(self):
        return np.hypot(self.x1, self.x2)

    @property
    def r(self):
        return np.sqrt(np.asarray(self.x1) ** 2 + np.asarray(self.x2) ** 2 + np.asarray(self.x3) ** 2)

    @property
    def theta(self):
        return np.arctan2(self.rho, self.x3)

    @property
    def phi(self):
        return np.arctan2(self.x2, self.x1)

    def s(self, params: BeamParams):
        """Mean of the forward and backward light-cone coordinates, (x3 + v*t)/2."""
        return 0.5 * (np.asarray(self.x3) + params.v * np.asarray(self.t))

    @classmethod
    def from_spherical(cls, r, theta, phi, t=0.0) -> "SpaceTimePoint":
        r = np.asarray(r, dtype=float)
        st = np.sin(theta)
        return cls(
            x1=r * st * np.cos(phi),
            x2=r * st * np.sin(phi),
            x3=r * np.cos(theta),
            t=t,
        )


@dataclass(frozen=True)
class ComplexAmplitude:
    """A single complex field value with polar accessors."""

    value: complex

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @property
    def phase(self) -> float:
        return math.atan2(self.value.imag, self.value.real)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def normalization_constant(params: BeamParams, mode: ModeIndex) -> float:
    """Transverse-norm constant C_mn = sqrt(2 / (pi 2**(m+n) m! n!)) / w0.

    Fixes the envelope to unit L2 norm over any transverse plane.
    """
    m, n = mode.m, mode.n
    return math.sqrt(2.0 / (math.pi * 2.0 ** (m + n) * math.factorial(m) * math.factorial(n))) / params.w0


@dataclass(frozen=True)
class NormalizationTable:
    """Immutable per-mode table of normalization constants C_mn (C_mn = C_nm > 0)."""

    constants: dict

    def __post_init__(self):
        table = {}
        for (m, n), c in self.constants.items():
            if not c > 0:
                raise ValueError(f"C_{m}{n} must be positive, got {c!r}")
            table[(m, n)] = float(c)
            table.setdefault((n, m), float(c))
        object.__setattr__(self, "constants", table)

    @classmethod
    def closed_form(cls, params: BeamParams, max_total_order: int = 6) -> "NormalizationTable":
        table = {
            (m, n): normalization_constant(params, ModeIndex(m, n))
            for m in range(max_total_order + 1)
            for n in range(max_total_order + 1 - m)
        }
        return cls(table)

    def __getitem__(self, mode) -> float:
        key = (mode.m, mode.n) if isinstance(mode, ModeIndex) else tuple(mode)
        return self.constants[key]

    def __contains__(self, mode) -> bool:
        key = (mode.m, mode.n) if isinstance(mode, ModeIndex) else tuple(mode)
        return key in self.constants


# ---------------------------------------------------------------------------
# envelope and field evaluators
# ---------------------------------------------------------------------------


def spot_radius(params: BeamParams, s):
    """Beam spot radius w(s) = w0 * sqrt(1 + (s/L_R)**2)."""
    return params.w0 * np.sqrt(1.0 + (np.asarray(s) / params.rayleigh_range) ** 2)


def gouy_phase(params: BeamParams, mode: ModeIndex, s):
    """Axial phase retardation g_mn(s) = (1 + m + n) * arctan(s/L_R)."""
    return (1 + mode.total_order) * np.arctan(np.asarray(s) / params.rayleigh_range)


def envelope_phi(params: BeamParams, mode: ModeIndex, x1, x2, s, c_mn=None):
    """Hermite-Gaussian envelope of the exact field family.

    Phi_mn(x1, x2, s) = C_mn * (w0/w(s)) * H_m(sqrt(2) x1 / w(s))
    * H_n(sqrt(2) x2 / w(s)) * exp[i k rho^2 / (2 (s - i L_R))]
    * exp[-i g_mn(s)]

    The complex-Lorentzian exponent carries both the Gaussian transverse
    decay and the wavefront curvature; the denominator never vanishes
    for real s since L_R > 0.

    Parameters
    ----------
    x1, x2, s : float or ndarray
        Transverse coordinates and longitudinal envelope argument.
    c_mn : float, optional
        Normalization override; defaults to the closed-form constant.
    """
    if c_mn is None:
        c_mn = normalization_constant(params, mode)
    lr = params.rayleigh_range
    s = np.asarray(s, dtype=float)
    w = spot_radius(params, s)
    rho2 = np.asarray(x1) ** 2 + np.asarray(x2) ** 2
    herm = hermite(mode.m, np.sqrt(2.0) * np.asarray(x1) / w) * hermite(
        mode.n, np.sqrt(2.0) * np.asarray(x2) / w
    )
    exponent = 1j * params.k * rho2 / (2.0 * (s - 1j * lr)) - 1j * gouy_phase(params, mode, s)
    return c_mn * (params.w0 / w) * herm * np.exp(exponent)


def _carrier(params: BeamParams, p: SpaceTimePoint):
    return np.exp(1j * (params.k * np.asarray(p.x3) - params.omega * np.asarray(p.t)))


def exact_psi(params: BeamParams, mode: ModeIndex, p: SpaceTimePoint, c_mn=None):
    """Exact Hermite-Gaussian solution of the full wave equation.

    Psi_mn = Phi_mn(x1, x2, (x3 + v t)/2) * exp[i(k x3 - omega t)].
    The half-sum argument makes the envelope constant along backward
    light rays, which is what promotes the paraxial profile to an exact
    solution.
    """
    return envelope_phi(params, mode, p.x1, p.x2, p.s(params), c_mn=c_mn) * _carrier(params, p)


def paraxial_psi(params: BeamParams, mode: ModeIndex, p: SpaceTimePoint, c_mn=None):
    """Standard paraxial Hermite-Gaussian beam: envelope argument x3 instead of s.

    Coincides with :func:`exact_psi` exactly on the co-moving surface
    t = x3/v and differs elsewhere.
    """
    return envelope_phi(params, mode, p.x1, p.x2, p.x3, c_mn=c_mn) * _carrier(params, p)


def paraxial_schrodinger_psi(params: BeamParams, mode: ModeIndex, p: SpaceTimePoint,
                             tolerance: float = 1e-9, c_mn=None):
    """Schroedinger-form evaluation of the paraxial beam on t = x3/v.

    The paraxial envelope equation is a free Schroedinger equation in the
    transverse plane with x3 playing the role of time; its solution is
    only identified with the beam field on the co-moving surface
    t = x3/v. Points farther than ``tolerance * L_R`` (measured as
    |x3 - v t|) from that surface are rejected.
    """
    gap = np.abs(np.asarray(p.x3) - params.v * np.asarray(p.t))
    if np.any(gap > tolerance * params.rayleigh_range):
        worst = float(np.max(gap))
        raise ConstraintViolationError(
            f"point lies off the t = x3/v surface by |x3 - v t| = {worst:.3e} "
            f"(allowed {tolerance:.1e} * L_R = {tolerance * params.rayleigh_range:.3e})"
        )
    return paraxial_psi(params, mode, p, c_mn=c_mn)


def complex_source_radius(params: BeamParams, x1, x2, x3, warn: bool = True):
    """Complex distance R = sqrt(x1^2 + x2^2 + (x3 - i L_R)^2) from the displaced source.

    Principal square root; for rho -> 0 with x3 > 0 this reduces to
    x3 - i*L_R exactly. The branch cut of the principal root lies on
    {x3 = 0, rho <= L_R}; points within ``BRANCH_CUT_TOL * L_R`` of it
    trigger a :class:`BranchCutWarning` (the field jumps across the cut
    and 1/R diverges at its edge rho = L_R).
    """
    lr = params.rayleigh_range
    rho2 = np.asarray(x1) ** 2 + np.asarray(x2) ** 2
    x3 = np.asarray(x3, dtype=float)
    if warn:
        near_cut = (np.abs(x3) <= BRANCH_CUT_TOL * lr) & (rho2 <= (lr * (1.0 + BRANCH_CUT_TOL)) ** 2)
        if np.any(near_cut):
            warnings.warn(
                "evaluation point within 1e-6 * L_R of the complex-radius branch cut "
                "{x3 = 0, rho <= L_R}; field value is branch-sensitive there",
                BranchCutWarning,
                stacklevel=2,
            )
    return np.sqrt(rho2 + (x3 - 1j * lr) ** 2)


def alternate_exact_psi(params: BeamParams, p: SpaceTimePoint, scaled_amplitude=1.0):
    """Second exact Gaussian solution: spherical wave from a complex source point.

    Evaluates (L_R/R) * exp[i k R - i omega t] for the complex radius
    R of :func:`complex_source_radius`, in the overflow-safe rescaled
    form

        scaled_amplitude * (L_R/R) * exp[i k (R + i L_R)] * exp(-i omega t).

    The raw source-strength constant of the unscaled form is smaller by
    exp(k*L_R), a factor that overflows double precision for realistic
    beams (k*L_R is ~1e3 for optical parameters), so the product
    ``scaled_amplitude = raw_constant * exp(k*L_R)`` is the user-facing
    amplitude. For x3 > 0 the exponent ik(R + i L_R) has non-positive
    real part, so the evaluation never overflows there.
    """
    lr = params.rayleigh_range
    R = complex_source_radius(params, p.x1, p.x2, p.x3)
    phase = 1j * params.k * (R + 1j * lr) - 1j * params.omega * np.asarray(p.t)
    return scaled_amplitude * (lr / R) * np.exp(phase)


def bateman_gaussian_psi(params: BeamParams, p: SpaceTimePoint, c00=None):
    """Exact (0,0) Gaussian field in rational form.

    C_00 * L_R / (L_R + i u/2) * exp[i k rho^2 / (u - 2 i L_R)]
    * exp[i(k x3 - omega t)], with u = x3 + v*t. Algebraically identical
    to :func:`exact_psi` at mode (0,0): the rational prefactor folds the
    w0/w(s) amplitude decay and the Gouy factor into one complex
    Lorentzian.
    """
    if c00 is None:
        c00 = normalization_constant(params, ModeIndex(0, 0))
    lr = params.rayleigh_range
    u = np.asarray(p.x3) + params.v * np.asarray(p.t)
    rho2 = np.asarray(p.x1) ** 2 + np.asarray(p.x2) ** 2
    envelope = c00 * lr / (lr + 0.5j * u) * np.exp(1j * params.k * rho2 / (u - 2j * lr))
    return envelope * _carrier(params, p)


# ---------------------------------------------------------------------------
# field family dispatch (verifier and CLI plumbing)
# ---------------------------------------------------------------------------

FIELD_FAMILIES = ("exact", "paraxial", "alternate", "gaussian")


def field_function(family: str, params: BeamParams, mode: ModeIndex = None):
    """Return ``psi(p: SpaceTimePoint) -> complex`` for a named solution family.

    ``mode`` is required for the "exact" and "paraxial" families and
    ignored by the single-mode "alternate" and "gaussian" ones.
    """
    if family == "exact":
        if mode is None:
            raise ValueError("the exact family needs a mode index")
        return lambda p: exact_psi(params, mode, p)
    if family == "paraxial":
        if mode is None:
            raise ValueError("the paraxial family needs a mode index")
        return lambda p: paraxial_psi(params, mode, p)
    if family == "alternate":
        return lambda p: alternate_exact_psi(params, p)
    if family == "gaussian":
        return lambda p: bateman_gaussian_psi(params, p)
    raise ValueError(f"unknown field family {family!r}; choose from {FIELD_FAMILIES}")
