"""N-face configurations: closure, invariant observables and the GL_N(R) action.

A configuration is N spinor pairs (z_i, w_i), equivalently N pairs
(u_i, t_i).  It is closed when the space-like vectors sum to zero, which in
(u, t) form reads  sum u_i t_i = 0 = Re sum conj(u_i) t_i.

Closed configurations with non-zero total area form a single GL_N(R) orbit
through the squashed configuration, where GL_N(R) acts by t -> M t and
u -> M~ u with M~ the transpose-inverse of M.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BadSize,
    DegenerateNullSum,
    DimensionMismatch,
    NotClosed,
    ZeroArea,
    ZeroTotalArea,
)
from .spinor import (
    MinkVector3,
    SpinorPair,
    SU11Element,
    null_parts,
    su11_arrays,
    ut_from_zw_arrays,
    zw_from_ut_arrays,
)

CLOSURE_TOL = 1e-9
GL_INVERSE_TOL = 1e-10
NULL_SUM_TOL = 1e-12
MAX_SAMPLE_COND = 1e6


def _frozen(x) -> np.ndarray:
    a = np.array(x, dtype=complex).ravel()
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Configuration:
    """N spinor pairs stored as two read-only complex arrays."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        z, w = _frozen(self.z), _frozen(self.w)
        if z.shape != w.shape:
            raise DimensionMismatch(f"z has {z.size} entries, w has {w.size}")
        if z.size < 1:
            raise BadSize("a configuration needs at least one pair")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)

    @classmethod
    def from_ut(cls, u, t) -> "Configuration":
        z, w = zw_from_ut_arrays(np.ravel(u), np.ravel(t))
        return cls(z, w)

    @classmethod
    def from_pairs(cls, pairs) -> "Configuration":
        return cls([p.z for p in pairs], [p.w for p in pairs])

    @property
    def n(self) -> int:
        return self.z.size

    @property
    def u(self) -> np.ndarray:
        return ut_from_zw_arrays(self.z, self.w)[0]

    @property
    def t(self) -> np.ndarray:
        return ut_from_zw_arrays(self.z, self.w)[1]

    @property
    def pairs(self) -> list[SpinorPair]:
        return [SpinorPair(complex(a), complex(b)) for a, b in zip(self.z, self.w)]

    @property
    def scale(self) -> float:
        return float(max(1.0, np.sum(np.abs(self.z) ** 2 + np.abs(self.w) ** 2)))

    def vectors(self) -> np.ndarray:
        """(N, 3) array of per-face (J3, K1, K2)."""
        j3, k1, k2, _ = su11_arrays(self.z, self.w)
        return np.stack([j3, k1, k2], axis=1)

    def areas(self) -> np.ndarray:
        return su11_arrays(self.z, self.w)[3]

    def total_area(self) -> float:
        return float(np.sum(self.areas()))

    def allclose(self, other: "Configuration", atol: float) -> bool:
        return self.n == other.n and max_pair_distance(self, other) <= atol


def max_pair_distance(a: Configuration, b: Configuration) -> float:
    return float(max(np.max(np.abs(a.z - b.z)), np.max(np.abs(a.w - b.w))))


@dataclass(frozen=True, eq=False)
class GLElement:
    """A real invertible M together with M~ = inverse(M)^T."""

    m: np.ndarray
    mtilde: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        mt = np.array(self.mtilde, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or mt.shape != m.shape:
            raise DimensionMismatch(f"expected two square matrices, got {m.shape} and {mt.shape}")
        err = np.max(np.abs(mt.T @ m - np.eye(m.shape[0])))
        if not err <= GL_INVERSE_TOL * max(1.0, np.linalg.cond(m)):
            raise ValueError(f"mtilde is not the transpose-inverse of m (error {err:.2e})")
        m.setflags(write=False)
        mt.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mtilde", mt)

    @classmethod
    def from_matrix(cls, m) -> "GLElement":
        m = np.asarray(m, dtype=float)
        return cls(m, np.linalg.inv(m).T)

    @classmethod
    def identity(cls, n: int) -> "GLElement":
        return cls(np.eye(n), np.eye(n))

    @property
    def n(self) -> int:
        return self.m.shape[0]

    @property
    def cond(self) -> float:
        return float(np.linalg.cond(self.m))

    def compose(self, other: "GLElement") -> "GLElement":
        """self . other, i.e. apply other first."""
        return GLElement(self.m @ other.m, self.mtilde @ other.mtilde)

    __matmul__ = compose


@dataclass(frozen=True, eq=False)
class InvariantObservables:
    """alpha^z, alpha^w (antisymmetric) and beta; the rest are derived.

    theta holds 4 Re(conj(u_i) t_j), the real-part companion of delta.  It is
    carried along for the matrix identities it satisfies with delta, but unlike
    the other entries it is not SU(1,1)-invariant.
    """

    alpha_z: np.ndarray
    alpha_w: np.ndarray
    beta: np.ndarray
    theta: np.ndarray

    @property
    def alpha_plus(self) -> np.ndarray:
        return self.alpha_z + self.alpha_w

    @property
    def alpha_minus(self) -> np.ndarray:
        return self.alpha_z - self.alpha_w

    @property
    def beta_sym(self) -> np.ndarray:
        return self.beta + self.beta.T

    @property
    def beta_anti(self) -> np.ndarray:
        return self.beta - self.beta.T

    @property
    def delta(self) -> np.ndarray:
        return self.alpha_plus + self.beta_sym

    @property
    def areas(self) -> np.ndarray:
        return 0.5 * np.diag(self.beta)


# ------------------------------------------------------------------ closure

def closure_residual(c: Configuration) -> tuple[MinkVector3, float]:
    """Summed 3-vector and max |.| of (sum u t, Re sum conj(u) t)."""
    v = c.vectors().sum(axis=0)
    u, t = c.u, c.t
    s1 = np.sum(u * t)
    s2 = np.sum(np.conj(u) * t).real
    return MinkVector3(*(float(x) for x in v)), float(max(abs(s1), abs(s2)))


def is_closed(c: Configuration, tol: float = CLOSURE_TOL) -> bool:
    return closure_residual(c)[1] < tol * c.scale


# ------------------------------------------------------ invariant observables

def invariant_observables(c: Configuration) -> InvariantObservables:
    z, w = c.z, c.w
    zz = np.conj(z)[:, None] * z[None, :]
    ww = np.conj(w)[:, None] * w[None, :]
    # i (x - conj x) = -2 Im x
    alpha_z = -2.0 * zz.imag
    alpha_w = -2.0 * ww.imag
    beta = 2.0 * (z[:, None] * w[None, :]).imag
    return InvariantObservables(alpha_z, alpha_w, beta, theta_matrix(c))


def delta_matrix(c: Configuration) -> np.ndarray:
    """Delta_ij = 2i(conj(u_i) t_j - u_i conj(t_j)) = -4 Im(conj(u_i) t_j)."""
    u, t = c.u, c.t
    return -4.0 * (np.conj(u)[:, None] * t[None, :]).imag


def theta_matrix(c: Configuration) -> np.ndarray:
    """Theta_ij = 2(conj(u_i) t_j + u_i conj(t_j)) = 4 Re(conj(u_i) t_j)."""
    u, t = c.u, c.t
    return 4.0 * (np.conj(u)[:, None] * t[None, :]).real


# ---------------------------------------------------------------- GL_N action

def squashed(n: int, area: float) -> Configuration:
    """Flattened configuration: two back-to-back faces, the rest zero.

    For area < 0 the t's flip sign so each face keeps energy area/2.
    """
    if n < 2:
        raise BadSize(f"squashed configuration needs N >= 2, got {n}")
    if area == 0:
        raise ZeroArea("total area must be non-zero")
    r = np.sqrt(abs(area) / 2.0)
    sgn = np.sign(area)
    u = np.zeros(n, dtype=complex)
    t = np.zeros(n, dtype=complex)
    u[0], t[0] = r, -1j * sgn * r
    u[1], t[1] = 1j * r, sgn * r
    return Configuration.from_ut(u, t)


def _check_dims(g: GLElement, c: Configuration):
    if g.n != c.n:
        raise DimensionMismatch(f"GL element is {g.n}x{g.n} but configuration has {c.n} pairs")


def gl_apply(g: GLElement, c: Configuration) -> Configuration:
    """t -> M t, u -> M~ u."""
    _check_dims(g, c)
    return Configuration.from_ut(g.mtilde @ c.u, g.m @ c.t)


def bogoliubov_zw(g: GLElement, c: Configuration) -> Configuration:
    """The same action written on (z, conj w): it mixes the two unless M is orthogonal."""
    _check_dims(g, c)
    plus = 0.5 * (g.m + g.mtilde)
    minus = 0.5 * (g.m - g.mtilde)
    wb = np.conj(c.w)
    z = plus @ c.z + minus @ wb
    wb_new = plus @ wb + minus @ c.z
    return Configuration(z, np.conj(wb_new))


def act_global(g: SU11Element, c: Configuration) -> Configuration:
    """Same SU(1,1) element on every pair: (z, zbar) -> G(z, zbar), (wbar, w) -> G(wbar, w)."""
    z = g.a * c.z + g.b * np.conj(c.z)
    wb = g.a * np.conj(c.w) + g.b * c.w
    return Configuration(z, np.conj(wb))


def act_split(gz: SU11Element, gw: SU11Element, c: Configuration) -> Configuration:
    """Independent SU(1,1) elements on the z-sector and the w-sector."""
    z = gz.a * c.z + gz.b * np.conj(c.z)
    wb = gw.a * np.conj(c.w) + gw.b * c.w
    return Configuration(z, np.conj(wb))


def frame_vectors(c: Configuration) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    """Real vectors with u = r(A + iB), t = sgn r(C - iD), r = sqrt(|area|/2).

    On a closed configuration A.D = B.C = 1 and A.C = B.D = 0.
    """
    area = c.total_area()
    r = np.sqrt(abs(area) / 2.0)
    sgn = 1.0 if area > 0 else -1.0
    u, t = c.u / r, sgn * c.t / r
    return u.real, u.imag, t.real, -t.imag, area


def _orthogonal_complement(vecs: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the complement of span(vecs columns), signs fixed."""
    n = vecs.shape[0]
    q, _ = np.linalg.qr(vecs)
    proj = np.eye(n) - q @ q.T
    basis, r, _ = scipy.linalg.qr(proj, pivoting=True)
    k = n - vecs.shape[1]
    basis = basis[:, :k]
    # make the first non-negligible entry of each column positive, independent of pivoting
    signs = np.sign(np.diag(r)[:k])
    signs[signs == 0] = 1.0
    return basis * signs


def decompose(c: Configuration) -> GLElement:
    """GL_N(R) element mapping squashed(N, area) onto the closed configuration c."""
    scale = c.scale
    _, res = closure_residual(c)
    if not res < CLOSURE_TOL * scale:
        raise NotClosed(f"closure residual {res:.3e} exceeds {CLOSURE_TOL:.0e} x scale")
    area = c.total_area()
    if abs(area) <= CLOSURE_TOL * scale:
        raise ZeroTotalArea("total area vanishes; the orbit is not covered by this construction")
    if c.n < 2:
        raise BadSize("closed configuration with non-zero area needs N >= 2")
    a, b, cc, d, _ = frame_vectors(c)
    rest = _orthogonal_complement(np.stack([cc, d], axis=1))
    mtilde = np.column_stack([a, b, rest])
    m = np.linalg.inv(mtilde).T
    return GLElement(m, mtilde)


def orbit_dimension(n: int, area: float = 2.0, tol: float = 1e-9) -> int:
    """Rank of the linearized GL_N action at the squashed configuration."""
    c0 = squashed(n, area)
    u0, t0 = c0.u, c0.t
    cols = []
    for a in range(n):
        for b in range(n):
            x = np.zeros((n, n))
            x[a, b] = 1.0
            du = -x.T @ u0
            dt = x @ t0
            cols.append(np.concatenate([du.real, du.imag, dt.real, dt.imag]))
    jac = np.array(cols).T
    s = np.linalg.svd(jac, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def sample_polyhedron(n: int, area: float, seed: int) -> Configuration:
    """gl_apply of a Gaussian random matrix to squashed(n, area).

    Matrices with condition number above 1e6 are re-drawn from the same stream.
    """
    c0 = squashed(n, area)
    rng = np.random.default_rng(seed)
    while True:
        m = rng.standard_normal((n, n))
        if np.linalg.cond(m) <= MAX_SAMPLE_COND:
            break
    return gl_apply(GLElement.from_matrix(m), c0)


# ------------------------------------------------------------ boost to rest

def _sqrt_psd2(m: np.ndarray) -> np.ndarray:
    """Principal square root of a 2x2 positive-definite Hermitian matrix."""
    sd = np.sqrt(np.linalg.det(m).real)
    return (m + sd * np.eye(2)) / np.sqrt(np.trace(m).real + 2.0 * sd)


def _rest_boost(m: np.ndarray) -> np.ndarray:
    """G = det^(1/4) m^(-1/2), so that G m G^dagger = sqrt(det) I and det G = 1."""
    root = _sqrt_psd2(m)
    return np.linalg.det(m).real ** 0.25 * np.linalg.inv(root)


def close_configuration(c: Configuration) -> tuple[float, SU11Element, Configuration]:
    """Rescale z vs w, then boost the w-sector so the two null sums coincide."""
    mz, mw = null_parts(c.z, c.w)
    dz, dw = np.linalg.det(mz).real, np.linalg.det(mw).real
    tol = NULL_SUM_TOL * c.scale ** 2
    if dz <= tol or dw <= tol:
        raise DegenerateNullSum(f"det M^z = {dz:.3e}, det M^w = {dw:.3e}; both must exceed {tol:.1e}")
    tau = 0.25 * np.log(dw / dz)
    z = np.exp(0.5 * tau) * c.z
    w = np.exp(-0.5 * tau) * c.w
    mz, mw = np.exp(tau) * mz, np.exp(-tau) * mw
    lam = np.linalg.inv(_rest_boost(mz)) @ _rest_boost(mw)
    g = SU11Element.from_matrix(lam)
    closed = act_split(SU11Element.identity(), g, Configuration(z, w))
    return float(tau), g, closed
