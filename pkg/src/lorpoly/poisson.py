"""Exact Poisson brackets of quadratic observables.

A quadratic observable on n spinor pairs is stored as a symmetric complex
matrix A over the ordered variable vector

    xi = (z_1..z_n, w_1..w_n, zbar_1..zbar_n, wbar_1..wbar_n),

representing f(xi) = xi^T A xi.  With {z_i, zbar_i} = {w_i, wbar_i} = -i the
bracket of two quadratics is again quadratic, with coefficient matrix
2 (A Omega B - B Omega A).  All the generator coefficients are dyadic
rationals times 1 or i, so bracket tables close with deviation exactly 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveStep, UnknownGenerator
from .spinor import SpinorPair, ut_from_zw_arrays


def _index(n_pairs: int):
    """Positions of z_i, w_i, zbar_i, wbar_i in xi."""
    return {
        "z": list(range(0, n_pairs)),
        "w": list(range(n_pairs, 2 * n_pairs)),
        "zb": list(range(2 * n_pairs, 3 * n_pairs)),
        "wb": list(range(3 * n_pairs, 4 * n_pairs)),
    }


def omega(n_pairs: int = 1) -> np.ndarray:
    """Matrix of canonical brackets {xi_a, xi_b}."""
    d = 4 * n_pairs
    om = np.zeros((d, d), dtype=complex)
    idx = _index(n_pairs)
    for a, b in zip(idx["z"] + idx["w"], idx["zb"] + idx["wb"]):
        om[a, b] = -1j
        om[b, a] = 1j
    return om


def conj_swap(n_pairs: int = 1) -> np.ndarray:
    """Permutation exchanging the holomorphic and antiholomorphic halves of xi."""
    h = 2 * n_pairs
    s = np.zeros((2 * h, 2 * h))
    s[:h, h:] = np.eye(h)
    s[h:, :h] = np.eye(h)
    return s


@dataclass(frozen=True)
class QuadObservable:
    coeff: np.ndarray
    label: str = ""
    n_pairs: int = field(default=1)

    def __post_init__(self):
        c = np.asarray(self.coeff, dtype=complex)
        if c.shape != (4 * self.n_pairs, 4 * self.n_pairs):
            raise ValueError(f"coefficient matrix must be {4 * self.n_pairs}x{4 * self.n_pairs}")
        if not np.array_equal(c, c.T):
            raise ValueError("coefficient matrix must be symmetric")
        object.__setattr__(self, "coeff", c)

    @classmethod
    def from_monomials(cls, terms, n_pairs: int = 1, label: str = "") -> "QuadObservable":
        """Build from [(coefficient, var_a, var_b), ...] where var = ('z', i) etc.

        Each term contributes coefficient * var_a * var_b.
        """
        idx = _index(n_pairs)
        c = np.zeros((4 * n_pairs, 4 * n_pairs), dtype=complex)
        for coef, (na, ia), (nb, ib) in terms:
            a, b = idx[na][ia], idx[nb][ib]
            if a == b:
                c[a, a] += coef
            else:
                c[a, b] += coef / 2
                c[b, a] += coef / 2
        return cls(c, label, n_pairs)

    @classmethod
    def zero(cls, n_pairs: int = 1) -> "QuadObservable":
        return cls(np.zeros((4 * n_pairs, 4 * n_pairs), dtype=complex), "0", n_pairs)

    def _check(self, other: "QuadObservable"):
        if self.n_pairs != other.n_pairs:
            raise ValueError("observables live on different numbers of pairs")

    def __add__(self, other):
        self._check(other)
        return QuadObservable(self.coeff + other.coeff, "", self.n_pairs)

    def __sub__(self, other):
        self._check(other)
        return QuadObservable(self.coeff - other.coeff, "", self.n_pairs)

    def __neg__(self):
        return QuadObservable(-self.coeff, "", self.n_pairs)

    def __mul__(self, scalar):
        return QuadObservable(scalar * self.coeff, "", self.n_pairs)

    __rmul__ = __mul__

    def is_real(self) -> bool:
        s = conj_swap(self.n_pairs)
        return np.array_equal(self.coeff, s @ self.coeff.conj() @ s)

    def __call__(self, z, w):
        """Evaluate at z, w (scalars for one pair, length-n arrays otherwise)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        xi = np.concatenate([z, w, z.conj(), w.conj()])
        return complex(xi @ self.coeff @ xi)

    def gradient(self, z, w) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        xi = np.concatenate([z, w, z.conj(), w.conj()])
        return 2.0 * self.coeff @ xi


def bracket(f: QuadObservable, g: QuadObservable) -> QuadObservable:
    f._check(g)
    om = omega(f.n_pairs)
    c = 2.0 * (f.coeff @ om @ g.coeff - g.coeff @ om @ f.coeff)
    return QuadObservable(c, f"{{{f.label},{g.label}}}", f.n_pairs)


# ------------------------------------------------------------- generator set

def _gens_for_pair(i: int, n_pairs: int) -> dict[str, QuadObservable]:
    z, w, zb, wb = ("z", i), ("w", i), ("zb", i), ("wb", i)
    h = 0.5
    q = lambda terms, name: QuadObservable.from_monomials(terms, n_pairs, name)
    g = {
        "J3": q([(h, z, zb), (-h, w, wb)], "J3"),
        "K+": q([(h, zb, zb), (-h, w, w)], "K+"),
        "K-": q([(h, z, z), (-h, wb, wb)], "K-"),
        "J+": q([(1, zb, w)], "J+"),
        "J-": q([(1, z, wb)], "J-"),
        "K3": q([(-h, zb, wb), (-h, z, w)], "K3"),
        "L3": q([(0.5j, zb, wb), (-0.5j, z, w)], "L3"),
        "L+": q([(-0.5j, zb, zb), (-0.5j, w, w)], "L+"),
        "L-": q([(0.5j, z, z), (0.5j, wb, wb)], "L-"),
        "E": q([(h, z, zb), (h, w, wb)], "E"),
    }
    for x in "JKL":
        p, m = g[x + "+"], g[x + "-"]
        g[x + "1"] = QuadObservable(0.5 * (p.coeff + m.coeff), x + "1", n_pairs)
        g[x + "2"] = QuadObservable(-0.5j * (p.coeff - m.coeff), x + "2", n_pairs)
    g["Ecal"] = QuadObservable(g["L3"].coeff, "Ecal", n_pairs)
    g["K3+E"] = QuadObservable(g["K3"].coeff + g["E"].coeff, "K3+E", n_pairs)
    # null halves: j(z) and jtilde(w)
    g["j3"] = q([(h, z, zb)], "j3")
    g["k+"] = q([(h, zb, zb)], "k+")
    g["k-"] = q([(h, z, z)], "k-")
    g["jt3"] = q([(-h, w, wb)], "jt3")
    g["kt+"] = q([(-h, w, w)], "kt+")
    g["kt-"] = q([(-h, wb, wb)], "kt-")
    return g


def standard_generators() -> dict[str, QuadObservable]:
    """The ten so(3,2) generators in the +/- and 1,2,3 bases, plus aliases.

    Keys: J3 J+ J- K3 K+ K- L3 L+ L- E, their real components J1 J2 K1 K2
    L1 L2, Ecal (= L3), the shift combination K3+E, and the null halves
    j3 k+ k- jt3 kt+ kt-.
    """
    return _gens_for_pair(0, 1)


def pair_generators(i: int, n_pairs: int) -> dict[str, QuadObservable]:
    """Generators of face i embedded in the n-pair phase space."""
    return _gens_for_pair(i, n_pairs)


def deformation_generators(n_pairs: int):
    """Classical alpha^z, alpha^w, beta as dicts keyed by (i, j)."""
    az, aw, be = {}, {}, {}
    for i, j in itertools.product(range(n_pairs), repeat=2):
        az[i, j] = QuadObservable.from_monomials(
            [(1j, ("zb", i), ("z", j)), (-1j, ("z", i), ("zb", j))], n_pairs, f"az{i}{j}")
        aw[i, j] = QuadObservable.from_monomials(
            [(1j, ("wb", i), ("w", j)), (-1j, ("w", i), ("wb", j))], n_pairs, f"aw{i}{j}")
        be[i, j] = QuadObservable.from_monomials(
            [(1j, ("zb", i), ("wb", j)), (-1j, ("z", i), ("w", j))], n_pairs, f"b{i}{j}")
    return az, aw, be


# ------------------------------------------------------------ bracket tables

@dataclass(frozen=True)
class BracketEntry:
    lhs: str
    rhs: str
    expected: tuple  # ((coefficient, generator name), ...)
    group: str = ""


BracketTable = list


def _e(lhs, rhs, *terms, group=""):
    return BracketEntry(lhs, rhs, tuple(terms), group)


I = 1j


def su11_table() -> BracketTable:
    g = "su(1,1)"
    return [
        _e("J3", "K+", (-I, "K+"), group=g),
        _e("J3", "K-", (I, "K-"), group=g),
        _e("K+", "K-", (2 * I, "J3"), group=g),
        _e("K1", "K2", (-1, "J3"), group=g),
        _e("J3", "K1", (1, "K2"), group=g),
        _e("J3", "K2", (-1, "K1"), group=g),
        _e("Ecal", "J3", group="casimir"),
        _e("Ecal", "K1", group="casimir"),
        _e("Ecal", "K2", group="casimir"),
        _e("j3", "k+", (-I, "k+"), group="null halves"),
        _e("j3", "k-", (I, "k-"), group="null halves"),
        _e("k+", "k-", (2 * I, "j3"), group="null halves"),
        _e("jt3", "kt+", (-I, "kt+"), group="null halves"),
        _e("jt3", "kt-", (I, "kt-"), group="null halves"),
        _e("kt+", "kt-", (2 * I, "jt3"), group="null halves"),
    ]


def sl2c_table() -> BracketTable:
    g = "sl(2,C)"
    return [
        _e("J3", "J+", (-I, "J+"), group=g),
        _e("J3", "J-", (I, "J-"), group=g),
        _e("J+", "J-", (-2 * I, "J3"), group=g),
        _e("K3", "K+", (I, "J+"), group=g),
        _e("K3", "K-", (-I, "J-"), group=g),
        _e("K+", "K-", (2 * I, "J3"), group=g),
        _e("J3", "K+", (-I, "K+"), group=g),
        _e("J3", "K-", (I, "K-"), group=g),
        _e("K3", "J+", (-I, "K+"), group=g),
        _e("K3", "J-", (I, "K-"), group=g),
        _e("J+", "K-", (-2 * I, "K3"), group=g),
        _e("J-", "K+", (2 * I, "K3"), group=g),
        _e("J3", "K3", group=g),
        _e("J+", "K+", group=g),
        _e("J-", "K-", group=g),
    ]


def so32_table() -> BracketTable:
    g = "so(3,2)"
    return [
        _e("L3", "L+", (I, "J+"), group=g),
        _e("L3", "L-", (-I, "J-"), group=g),
        _e("L+", "L-", (2 * I, "J3"), group=g),
        _e("K3", "L3", (-1, "E"), group=g),
        _e("K+", "L-", (-2, "E"), group=g),
        _e("K-", "L+", (-2, "E"), group=g),
        _e("J3", "L+", (-I, "L+"), group=g),
        _e("J3", "L-", (I, "L-"), group=g),
        _e("L3", "J+", (-I, "L+"), group=g),
        _e("L3", "J-", (I, "L-"), group=g),
        _e("J+", "L-", (-2 * I, "L3"), group=g),
        _e("J-", "L+", (2 * I, "L3"), group=g),
        _e("K3", "L+", group=g),
        _e("K3", "L-", group=g),
        _e("L3", "K+", group=g),
        _e("L3", "K-", group=g),
        _e("K+", "L+", group=g),
        _e("K-", "L-", group=g),
        _e("J+", "L+", group=g),
        _e("J-", "L-", group=g),
    ] + [
        _e("E", f"J{a}", group=g) for a in "123"
    ] + [
        _e("E", f"K{a}", (1, f"L{a}"), group=g) for a in "123"
    ] + [
        _e("E", f"L{a}", (-1, f"K{a}"), group=g) for a in "123"
    ] + [
        _e("E", "K3", (1, "L3"), group="time-like su(1,1)"),
        _e("E", "L3", (-1, "K3"), group="time-like su(1,1)"),
        _e("L3", "K3", (1, "E"), group="time-like su(1,1)"),
    ]


def shift_table() -> BracketTable:
    """Brackets with Ecal, the three sl2 triples and the (K3 + E) shift."""
    g = "norm shifts"
    t = [
        _e("Ecal", "L+", (I, "J+"), group=g),
        _e("Ecal", "L-", (-I, "J-"), group=g),
        _e("Ecal", "J+", (-I, "L+"), group=g),
        _e("Ecal", "J-", (I, "L-"), group=g),
        _e("Ecal", "K3", (1, "E"), group=g),
        _e("Ecal", "E", (1, "K3"), group=g),
    ]
    s = "sl2 triples"
    t += [
        _e("Ecal", "J1", (1, "L2"), group=s),
        _e("Ecal", "L2", (1, "J1"), group=s),
        _e("J1", "L2", (1, "Ecal"), group=s),
        _e("K1", "J1", group=s),
        _e("K1", "L2", group=s),
        _e("K1", "Ecal", group=s),
        _e("Ecal", "J2", (-1, "L1"), group=s),
        _e("Ecal", "L1", (-1, "J2"), group=s),
        _e("J2", "L1", (-1, "Ecal"), group=s),
        _e("K2", "J2", group=s),
        _e("K2", "L1", group=s),
        _e("K2", "Ecal", group=s),
        _e("Ecal", "K3", (1, "E"), group=s),
        _e("Ecal", "E", (1, "K3"), group=s),
        _e("E", "K3", (1, "Ecal"), group=s),
        _e("J3", "K3", group=s),
        _e("J3", "E", group=s),
        _e("J3", "Ecal", group=s),
    ]
    t.append(_e("Ecal", "K3+E", (1, "K3"), (1, "E"), group="shift"))
    return t


def full_table() -> BracketTable:
    return su11_table() + sl2c_table() + so32_table() + shift_table()


def _lookup(gens, name):
    try:
        return gens[name]
    except KeyError:
        raise UnknownGenerator(name) from None


def verify_table(table: BracketTable, gens: dict | None = None) -> list[tuple[BracketEntry, float]]:
    """Max-abs coefficient deviation of {lhs, rhs} - expected for every entry."""
    gens = standard_generators() if gens is None else gens
    report = []
    for entry in table:
        lhs = _lookup(gens, entry.lhs)
        rhs = _lookup(gens, entry.rhs)
        expected = np.zeros_like(lhs.coeff)
        for coef, name in entry.expected:
            expected = expected + coef * _lookup(gens, name).coeff
        dev = bracket(lhs, rhs).coeff - expected
        report.append((entry, float(np.max(np.abs(dev)))))
    return report


def jacobi_deviation(f: QuadObservable, g: QuadObservable, h: QuadObservable) -> float:
    s = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))
    return float(np.max(np.abs(s.coeff)))


# ----------------------------------------------------------- gl_N relations

def gln_table_deviations(n_pairs: int) -> dict[str, float]:
    """Classical alpha/beta algebra, area split and Delta structure constants.

    Returns the max deviation for each named family of relations.
    """
    az, aw, be = deformation_generators(n_pairs)
    idx = range(n_pairs)
    d = lambda a, b: 1.0 if a == b else 0.0
    ap = {k: az[k] + aw[k] for k in az}
    am = {k: az[k] - aw[k] for k in az}
    bs = {(i, j): be[i, j] + be[j, i] for i in idx for j in idx}
    ba = {(i, j): be[i, j] - be[j, i] for i in idx for j in idx}
    delta = {k: ap[k] + bs[k] for k in ap}
    zero = QuadObservable.zero(n_pairs)
    area = zero
    for i in idx:
        area = area + 0.5 * be[i, i]
    su11_total = {}
    for name in ("J3", "K+", "K-"):
        tot = zero
        for i in idx:
            tot = tot + pair_generators(i, n_pairs)[name]
        su11_total[name] = tot

    def dev(a, b):
        return float(np.max(np.abs(a.coeff - b.coeff)))

    out = {}

    def record(name, value):
        out[name] = max(out.get(name, 0.0), value)

    for i, j, k, l in itertools.product(idx, repeat=4):
        so_n = lambda x: (d(j, k) * x[i, l] - d(i, k) * x[j, l] - d(j, l) * x[i, k] + d(i, l) * x[j, k])
        record("{az,az}", dev(bracket(az[i, j], az[k, l]), so_n(az)))
        record("{aw,aw}", dev(bracket(aw[i, j], aw[k, l]), so_n(aw)))
        record("{az,aw}=0", dev(bracket(az[i, j], aw[k, l]), zero))
        record("{b,b}", dev(bracket(be[i, j], be[k, l]), d(i, k) * aw[j, l] + d(j, l) * az[i, k]))
        record("{az,b}", dev(bracket(az[i, j], be[k, l]), d(j, k) * be[i, l] - d(i, k) * be[j, l]))
        record("{aw,b}", dev(bracket(aw[i, j], be[k, l]), d(j, l) * be[k, i] - d(i, l) * be[k, j]))
        record("{a+,a+}", dev(bracket(ap[i, j], ap[k, l]), so_n(ap)))
        record("{a+,bS}", dev(bracket(ap[i, j], bs[k, l]),
                              d(j, k) * bs[i, l] - d(i, k) * bs[j, l] + d(j, l) * bs[i, k] - d(i, l) * bs[j, k]))
        record("{bS,bS}", dev(bracket(bs[i, j], bs[k, l]),
                              d(j, k) * ap[i, l] + d(i, k) * ap[j, l] + d(j, l) * ap[i, k] + d(i, l) * ap[j, k]))
        record("{D,D}=2(djk Dil - dil Dkj)", dev(bracket(delta[i, j], delta[k, l]),
                                                  2 * (d(j, k) * delta[i, l] - d(i, l) * delta[k, j])))
    for i, j in itertools.product(idx, repeat=2):
        record("{E,a+}=0", dev(bracket(area, ap[i, j]), zero))
        record("{E,bS}=0", dev(bracket(area, bs[i, j]), zero))
        record("{E,bA}=-a-", dev(bracket(area, ba[i, j]), -1 * am[i, j]))
        record("{E,a-}=-bA", dev(bracket(area, am[i, j]), -1 * ba[i, j]))
        for name, tot in su11_total.items():
            record("{J,invariants}=0", dev(bracket(tot, az[i, j]), zero))
            record("{J,invariants}=0", dev(bracket(tot, aw[i, j]), zero))
            record("{J,invariants}=0", dev(bracket(tot, be[i, j]), zero))
    return out


# ---------------------------------------------------------------- flow check

def _state(p):
    if isinstance(p, SpinorPair):
        return np.atleast_1d(complex(p.z)), np.atleast_1d(complex(p.w))
    z, w = p
    return np.atleast_1d(np.asarray(z, dtype=complex)), np.atleast_1d(np.asarray(w, dtype=complex))


def flow_velocity(f: QuadObservable, z, w):
    """d(z, w)/dtau = ({f, z}, {f, w}) along the Hamiltonian flow of f."""
    grad = f.gradient(z, w)
    vel = -(omega(f.n_pairs) @ grad)
    n = f.n_pairs
    return vel[:n], vel[n:2 * n]


def flow_check(f: QuadObservable, p, step: float, observables: dict | None = None) -> float:
    """One Euler step of the flow of f compared with the bracket {f, g}.

    ``observables`` defaults to the standard generators; returns the max
    residual |(g(p') - g(p))/step - {f, g}(p)|, which is O(step).
    """
    if not step > 0:
        raise NonPositiveStep(step)
    z, w = _state(p)
    if observables is None:
        observables = standard_generators() if f.n_pairs == 1 else pair_generators(0, f.n_pairs)
    dz, dw = flow_velocity(f, z, w)
    z1, w1 = z + step * dz, w + step * dw
    worst = 0.0
    for g in observables.values():
        fd = (g(z1, w1) - g(z, w)) / step
        exact = bracket(f, g)(z, w)
        worst = max(worst, abs(fd - exact))
    return worst


def lambda_drift(f: QuadObservable, p, step: float) -> float:
    """Central-difference rate of lambda = ln|u/t| along the flow of f."""
    if not step > 0:
        raise NonPositiveStep(step)
    z, w = _state(p)
    dz, dw = flow_velocity(f, z, w)

    def lam(zz, ww):
        u, t = ut_from_zw_arrays(zz, ww)
        return float(np.log(np.abs(u[0]) / np.abs(t[0])))

    return (lam(z + step * dz, w + step * dw) - lam(z - step * dz, w - step * dw)) / (2 * step)
