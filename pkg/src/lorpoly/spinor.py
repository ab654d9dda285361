"""Single-face phase space: one complex pair (z, w) and its quadratic observables.

The su(1,1) generators are the Schwinger quadratics

    J3 = (|z|^2 - |w|^2) / 2,   K- = (z^2 - conj(w)^2) / 2,   K+ = conj(K-),

and the space-like 3-vector is (J3, K1, K2) with K1 = Re K-, K2 = -Im K-.
The "energy" E = (i/2)(conj(z w) - z w) = Im(u conj(t)) is the signed
Lorentzian norm: J3^2 - K1^2 - K2^2 = -E^2.

Every function comes in two flavours: a ``*_arrays`` form that broadcasts
over numpy arrays, and a thin wrapper on the small value types below.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, ZeroVector

SQRT2 = np.sqrt(2.0)
TWO_PI = 2.0 * np.pi

# Lorentzian Pauli matrices
TAU3 = np.array([[1, 0], [0, -1]], dtype=complex)
TAU1 = np.array([[0, 1], [-1, 0]], dtype=complex)
TAU2 = np.array([[0, -1j], [-1j, 0]], dtype=complex)

NULL_TOL = 1e-12
EXP_SERIES_TOL = 1e-8


@dataclass(frozen=True)
class SpinorPair:
    z: complex
    w: complex

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.z) ** 2 + abs(self.w) ** 2)


@dataclass(frozen=True)
class UTPair:
    u: complex
    t: complex

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.u) ** 2 + abs(self.t) ** 2)


@dataclass(frozen=True)
class MinkVector3:
    """Components in the (J3, K1, K2) basis of R^{1,2}, signature (+,-,-)."""

    j3: float
    k1: float
    k2: float

    @property
    def norm2(self) -> float:
        return self.j3 ** 2 - self.k1 ** 2 - self.k2 ** 2

    @property
    def is_spacelike(self) -> bool:
        return self.norm2 <= 0.0

    @property
    def k_minus(self) -> complex:
        return complex(self.k1, -self.k2)

    def as_array(self) -> np.ndarray:
        return np.array([self.j3, self.k1, self.k2])

    def __add__(self, other: "MinkVector3") -> "MinkVector3":
        return MinkVector3(self.j3 + other.j3, self.k1 + other.k1, self.k2 + other.k2)

    def __neg__(self) -> "MinkVector3":
        return MinkVector3(-self.j3, -self.k1, -self.k2)


@dataclass(frozen=True)
class GeomData:
    vec: MinkVector3
    lam: float
    eps: int
    sigma: int

    @property
    def norm(self) -> float:
        """|J| = sqrt(-J^2), clamped at zero."""
        return float(np.sqrt(max(0.0, -self.vec.norm2)))


@dataclass(frozen=True)
class SU11Element:
    """The matrix [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1."""

    a: complex
    b: complex

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [np.conj(self.b), np.conj(self.a)]], dtype=complex)

    @classmethod
    def from_matrix(cls, g: np.ndarray) -> "SU11Element":
        return cls(complex(g[0, 0]), complex(g[0, 1]))

    @classmethod
    def identity(cls) -> "SU11Element":
        return cls(1.0 + 0j, 0j)

    @property
    def det(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    def __matmul__(self, other: "SU11Element") -> "SU11Element":
        return SU11Element.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "SU11Element":
        return SU11Element(np.conj(self.a), -self.b)


@dataclass(frozen=True)
class SO32Generators:
    jvec: tuple[float, float, float]
    kvec: tuple[float, float, float]
    lvec: tuple[float, float, float]
    e_dil: float

    def triad(self) -> np.ndarray:
        """Rows J, K, L; divided by E this matrix is orthogonal."""
        return np.array([self.jvec, self.kvec, self.lvec])


# ---------------------------------------------------------------- array layer

def su11_arrays(z, w):
    """Return (J3, K1, K2, E) for broadcastable complex arrays z, w."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    j3 = 0.5 * (np.abs(z) ** 2 - np.abs(w) ** 2)
    km = 0.5 * (z * z - np.conj(w) ** 2)
    # (i/2)(conj(zw) - zw) = Im(zw)
    energy = np.imag(z * w)
    return j3, km.real, -km.imag, energy


def ut_from_zw_arrays(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    wb = np.conj(w)
    return (z - wb) / SQRT2, (z + wb) / SQRT2


def zw_from_ut_arrays(u, t):
    u = np.asarray(u, dtype=complex)
    t = np.asarray(t, dtype=complex)
    return (t + u) / SQRT2, np.conj((t - u) / SQRT2)


def observables_from_ut_arrays(u, t):
    """(J3, K1, K2, E) from u t = K- and u conj(t) = J3 + iE."""
    u = np.asarray(u, dtype=complex)
    t = np.asarray(t, dtype=complex)
    km = u * t
    p = u * np.conj(t)
    return p.real, km.real, -km.imag, p.imag


def arg_2pi(x):
    """Argument in [0, 2pi)."""
    a = np.angle(x)
    a = np.where(a < 0.0, a + TWO_PI, a)
    return np.where(a >= TWO_PI, a - TWO_PI, a)


def _half_phases(j3, k1, k2, eps):
    """Phases (phi + theta)/2 and (phi - theta)/2 used by the inverse map.

    phi = Arg(K-), theta = Arg(J3 + i eps |J|), both in [0, 2pi).
    """
    km = k1 - 1j * k2
    absj = np.sqrt(np.maximum(0.0, k1 * k1 + k2 * k2 - j3 * j3))
    phi = arg_2pi(km)
    theta = arg_2pi(j3 + 1j * eps * absj)
    return 0.5 * (phi + theta), 0.5 * (phi - theta), np.abs(km), absj


def geom_from_ut_arrays(u, t):
    """Vectorized map (u, t) -> (J3, K1, K2, lam, eps, sigma).

    sigma is +1 when u lies on the branch that ``ut_from_geom_arrays`` returns
    for sigma = +1 and -1 otherwise.  This agrees with
    sign(Arg u - Arg t) whenever Arg u + Arg t < 2pi and makes the map a
    bijection on the rest of the torus as well.
    """
    u = np.asarray(u, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if np.any(u == 0) or np.any(t == 0):
        raise DegeneratePair("u = 0 or t = 0: lambda is infinite")
    j3, k1, k2, energy = observables_from_ut_arrays(u, t)
    scale = np.maximum(1.0, np.abs(u) ** 2 + np.abs(t) ** 2)
    absj = np.sqrt(np.maximum(0.0, k1 * k1 + k2 * k2 - j3 * j3))
    eps = np.where(energy < 0.0, -1, 1)
    eps = np.where(absj < NULL_TOL * scale, 1, eps)
    lam = np.log(np.abs(u) / np.abs(t))
    hu, _, _, _ = _half_phases(j3, k1, k2, eps)
    sigma = np.where(np.real(u * np.exp(-1j * hu)) >= 0.0, 1, -1)
    return j3, k1, k2, lam, eps, sigma


def ut_from_geom_arrays(j3, k1, k2, lam, eps, sigma):
    j3 = np.asarray(j3, dtype=float)
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    hu, ht, abskm, _ = _half_phases(j3, k1, k2, eps)
    if np.any(abskm == 0):
        raise ZeroVector("the 3-vector vanishes; (u, t) is undetermined")
    root = np.sqrt(abskm)
    half = 0.5 * np.asarray(lam, dtype=float)
    u = sigma * root * np.exp(half) * np.exp(1j * hu)
    t = sigma * root * np.exp(-half) * np.exp(1j * ht)
    return u, t


def so32_arrays(z, w):
    """All ten so(3,2) generators; returns dict of real arrays."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    zb, wb = np.conj(z), np.conj(w)
    jp = zb * w
    kp = 0.5 * (zb * zb - w * w)
    lp = -0.5j * (zb * zb + w * w)
    return {
        "J1": jp.real, "J2": jp.imag, "J3": 0.5 * (np.abs(z) ** 2 - np.abs(w) ** 2),
        "K1": kp.real, "K2": kp.imag, "K3": np.real(-0.5 * (zb * wb + z * w)),
        "L1": lp.real, "L2": lp.imag, "L3": np.real(0.5j * (zb * wb - z * w)),
        "E": 0.5 * (np.abs(z) ** 2 + np.abs(w) ** 2),
    }


def su11_exp_matrix(eta) -> np.ndarray:
    """exp((i/2) eta.tau) with eta.tau = eta3 tau3 - eta1 tau1 - eta2 tau2.

    (eta.tau)^2 = q I with q = eta3^2 - eta1^2 - eta2^2, so the exponential
    is c(q) I + s(q) X with X = (i/2) eta.tau.
    """
    e1, e2, e3 = (float(x) for x in eta)
    x = 0.5j * (e3 * TAU3 - e1 * TAU1 - e2 * TAU2)
    q = e3 * e3 - e1 * e1 - e2 * e2
    if abs(q) < EXP_SERIES_TOL:
        c = 1.0 - q / 8.0 + q * q / 384.0
        s = 1.0 - q / 24.0 + q * q / 1920.0
    elif q > 0:
        r = 0.5 * np.sqrt(q)
        c, s = np.cos(r), np.sin(r) / r
    else:
        r = 0.5 * np.sqrt(-q)
        c, s = np.cosh(r), np.sinh(r) / r
    return c * np.eye(2, dtype=complex) + s * x


# ----------------------------------------------------------------- value API

def su11_from_zw(p: SpinorPair) -> tuple[MinkVector3, float]:
    j3, k1, k2, e = su11_arrays(p.z, p.w)
    return MinkVector3(float(j3), float(k1), float(k2)), float(e)


def ut_from_zw(p: SpinorPair) -> UTPair:
    u, t = ut_from_zw_arrays(p.z, p.w)
    return UTPair(complex(u), complex(t))


def zw_from_ut(q: UTPair) -> SpinorPair:
    z, w = zw_from_ut_arrays(q.u, q.t)
    return SpinorPair(complex(z), complex(w))


def observables_from_ut(q: UTPair) -> tuple[MinkVector3, float]:
    j3, k1, k2, e = observables_from_ut_arrays(q.u, q.t)
    return MinkVector3(float(j3), float(k1), float(k2)), float(e)


def geom_from_ut(q: UTPair) -> GeomData:
    j3, k1, k2, lam, eps, sigma = geom_from_ut_arrays(q.u, q.t)
    return GeomData(MinkVector3(float(j3), float(k1), float(k2)), float(lam), int(eps), int(sigma))


def ut_from_geom(g: GeomData) -> UTPair:
    v = g.vec
    if v.j3 == 0 and v.k1 == 0 and v.k2 == 0:
        raise ZeroVector("the 3-vector vanishes; (u, t) is undetermined")
    if v.norm2 > NULL_TOL * max(1.0, v.k1 ** 2 + v.k2 ** 2):
        raise ValueError("vector is time-like; only space-like or null vectors are allowed")
    u, t = ut_from_geom_arrays(v.j3, v.k1, v.k2, g.lam, g.eps, g.sigma)
    return UTPair(complex(u), complex(t))


def so32_from_zw(p: SpinorPair) -> SO32Generators:
    g = {k: float(v) for k, v in so32_arrays(p.z, p.w).items()}
    return SO32Generators(
        (g["J1"], g["J2"], g["J3"]),
        (g["K1"], g["K2"], g["K3"]),
        (g["L1"], g["L2"], g["L3"]),
        g["E"],
    )


def su11_exp(eta) -> SU11Element:
    return SU11Element.from_matrix(su11_exp_matrix(eta))


def act_on_spinor(g: SU11Element, p: SpinorPair) -> SpinorPair:
    """(z, zbar) -> G (z, zbar) and (wbar, w) -> G (wbar, w)."""
    z = g.a * p.z + g.b * np.conj(p.z)
    wb = g.a * np.conj(p.w) + g.b * p.w
    return SpinorPair(complex(z), complex(np.conj(wb)))


def null_parts(z, w) -> tuple[np.ndarray, np.ndarray]:
    """Future and past null contributions (M^z, M^w), each half an outer product.

    Arrays z, w of any shape are summed over.
    """
    z = np.ravel(np.asarray(z, dtype=complex))
    w = np.ravel(np.asarray(w, dtype=complex))
    vz = np.stack([z, np.conj(z)])
    vw = np.stack([np.conj(w), w])
    return 0.5 * (vz @ vz.conj().T), 0.5 * (vw @ vw.conj().T)


def m_matrix(p: SpinorPair) -> np.ndarray:
    """Hermitian [[J3, K-], [K+, J3]]; det equals the signed squared norm."""
    mz, mw = null_parts(p.z, p.w)
    return mz - mw
