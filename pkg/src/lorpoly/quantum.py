"""Truncated Fock-space quantization of the spinor phase space.

Each face carries two oscillators a (from z) and b (from w).  On N faces
the modes are ordered a_0, b_0, a_1, b_1, ... and the product basis is
lexicographic with mode 0 most significant.  Every oscillator is cut off at
occupation n_max, so identities hold exactly only between basis states with
all occupations <= n_max - 2 (quadratic operators move at most two quanta);
all checks below are asserted on that interior block.

Operators are scipy CSR matrices.  Quadratic observables from
``poisson`` are quantized with the symmetric (Weyl) ordering, under which
[Q(f), Q(g)] = i Q({f, g}) holds exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from . import kernels
from .errors import BudgetExceeded, CutoffTooSmall, NegativeM
from .poisson import QuadObservable, _index, deformation_generators, full_table, pair_generators

INTERIOR_TOL = 1e-13
DEFAULT_BUDGET = 1_000_000  # basis states
FIT_MIN_CUTOFF = 200


@dataclass(frozen=True)
class FockCutoff:
    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"n_max must be a non-negative integer, got {self.n_max}")

    @property
    def levels(self) -> int:
        return self.n_max + 1

    def require(self, minimum: int, what: str):
        if self.n_max < minimum:
            raise CutoffTooSmall(f"{what} needs n_max >= {minimum}, got {self.n_max}")


def _parse_word(word: str) -> tuple[list[int], list[bool]]:
    """'a0+ b0' -> modes [0, 1], daggers [True, False]."""
    modes, daggers = [], []
    for tok in word.split():
        dag = tok.endswith("+")
        core = tok.rstrip("+")
        kind, face = core[0], int(core[1:] or 0)
        if kind not in "ab":
            raise ValueError(f"bad ladder token {tok!r}")
        modes.append(2 * face + (kind == "b"))
        daggers.append(dag)
    return modes, daggers


class FockSpace:
    """Product basis of 2 * n_faces truncated oscillators."""

    def __init__(self, n_faces: int, cut: FockCutoff, budget: int = DEFAULT_BUDGET):
        self.n_faces = n_faces
        self.n_modes = 2 * n_faces
        self.cut = cut
        self.dim = cut.levels ** self.n_modes
        if self.dim > budget:
            raise BudgetExceeded(f"{self.n_modes} modes at n_max={cut.n_max} give dimension "
                                 f"{self.dim} > budget {budget}")
        self._words: dict[str, sp.csr_matrix] = {}

    def word(self, text: str) -> sp.csr_matrix:
        """Product of ladder operators, e.g. 'a0+ a0+' or 'a1 b0+'; '' is the identity."""
        if text not in self._words:
            if not text.strip():
                mat = sp.identity(self.dim, dtype=complex, format="csr")
            else:
                modes, daggers = _parse_word(text)
                if max(modes) >= self.n_modes:
                    raise ValueError(f"word {text!r} uses a face outside 0..{self.n_faces - 1}")
                rows, cols, vals = kernels.ladder_word_coo(
                    self.cut.levels, self.n_modes,
                    np.asarray(modes, dtype=np.int64), np.asarray(daggers, dtype=np.int64))
                mat = sp.csr_matrix((vals.astype(complex), (rows, cols)), shape=(self.dim, self.dim))
            self._words[text] = mat
        return self._words[text]

    def poly(self, *terms) -> sp.csr_matrix:
        """Sum of coefficient * word over (coefficient, word) terms."""
        out = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for coef, text in terms:
            out = out + coef * self.word(text)
        return out.tocsr()

    @cached_property
    def occupations(self) -> np.ndarray:
        idx = np.arange(self.dim)
        occ = np.empty((self.dim, self.n_modes), dtype=np.int64)
        for k in range(self.n_modes - 1, -1, -1):
            idx, occ[:, k] = np.divmod(idx, self.cut.levels)
        return occ

    def interior(self, margin: int = 2) -> np.ndarray:
        """Basis indices with every occupation <= n_max - margin."""
        return np.flatnonzero(np.all(self.occupations <= self.cut.n_max - margin, axis=1))

    def basis_index(self, occ) -> int:
        i = 0
        for n in occ:
            i = i * self.cut.levels + int(n)
        return i

    def quantize(self, f: QuadObservable) -> sp.csr_matrix:
        """Weyl-ordered operator of a quadratic observable on these faces."""
        if f.n_pairs != self.n_faces:
            raise ValueError("observable and Fock space have different numbers of faces")
        idx = _index(f.n_pairs)
        token = {}
        for i in range(f.n_pairs):
            token[idx["z"][i]] = f"a{i}"
            token[idx["w"][i]] = f"b{i}"
            token[idx["zb"][i]] = f"a{i}+"
            token[idx["wb"][i]] = f"b{i}+"
        terms = [(f.coeff[a, b], f"{token[a]} {token[b]}") for a, b in zip(*np.nonzero(f.coeff))]
        return self.poly(*terms)


# -------------------------------------------------------------------- checks

def _maxabs(m) -> float:
    m = sp.csr_matrix(m)
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


def comm(x, y):
    return (x @ y - y @ x).tocsr()


@dataclass
class Relation:
    """One operator identity lhs = rhs, measured as max |lhs - rhs| entries."""

    name: str
    family: str
    interior: float
    full: float
    display: str = ""
    display_interior: float | None = None

    def ok(self, tol: float = INTERIOR_TOL) -> bool:
        return self.interior < tol

    def as_dict(self) -> dict:
        d = {"name": self.name, "family": self.family,
             "interior_residual": self.interior, "full_residual": self.full}
        if self.display:
            d["literature_display"] = self.display
            d["literature_display_interior_residual"] = self.display_interior
        return d


@dataclass
class Report:
    relations: list[Relation] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def max_interior(self) -> float:
        return max((r.interior for r in self.relations), default=0.0)

    def families(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r in self.relations:
            out[r.family] = max(out.get(r.family, 0.0), r.interior)
        return out

    def discrepancies(self) -> list[Relation]:
        return [r for r in self.relations if r.display]

    def ok(self, tol: float = INTERIOR_TOL) -> bool:
        return all(r.ok(tol) for r in self.relations)

    def as_dict(self, tol: float = INTERIOR_TOL) -> dict:
        return {
            **self.info,
            "tolerance": tol,
            "max_interior_residual": self.max_interior(),
            "ok": self.ok(tol),
            "families": self.families(),
            "literature_discrepancies": [r.as_dict() for r in self.discrepancies()],
            "relations": [r.as_dict() for r in self.relations],
        }


class _Checker:
    def __init__(self, space: FockSpace, report: Report):
        self.idx = space.interior()
        self.report = report

    def interior(self, m) -> float:
        m = sp.csr_matrix(m)
        return _maxabs(m[self.idx][:, self.idx])

    def add(self, name, family, lhs, rhs, display="", display_rhs=None):
        diff = (lhs - rhs).tocsr() if sp.issparse(lhs - rhs) else sp.csr_matrix(lhs - rhs)
        rel = Relation(name, family, self.interior(diff), _maxabs(diff))
        if display:
            rel.display = display
            rel.display_interior = self.interior(lhs - display_rhs)
        self.report.relations.append(rel)
        return rel


# ------------------------------------------------------------- single face

def build_su11_ops(cut: FockCutoff, space: FockSpace | None = None, face: int = 0) -> dict:
    """J3, K+, K-, and the squeezing operator E_cas for one face."""
    cut.require(2, "su(1,1) operators")
    fs = space or FockSpace(1, cut)
    a, b = f"a{face}", f"b{face}"
    return {
        "J3": fs.poly((0.5, f"{a}+ {a}"), (-0.5, f"{b}+ {b}")),
        "K+": fs.poly((0.5, f"{a}+ {a}+"), (-0.5, f"{b} {b}")),
        "K-": fs.poly((0.5, f"{a} {a}"), (-0.5, f"{b}+ {b}+")),
        "E_cas": fs.poly((0.5j, f"{a}+ {b}+"), (-0.5j, f"{a} {b}")),
    }


def build_so32_ops(cut: FockCutoff, space: FockSpace | None = None, face: int = 0) -> dict:
    """The ten so(3,2) generators (J, K, L triplets and E_dil) for one face."""
    fs = space or FockSpace(1, cut)
    a, b = f"a{face}", f"b{face}"
    ops = build_su11_ops(cut, fs, face)
    ops.update({
        "J+": fs.poly((1.0, f"{a}+ {b}")),
        "J-": fs.poly((1.0, f"{a} {b}+")),
        "K3": fs.poly((-0.5, f"{a}+ {b}+"), (-0.5, f"{a} {b}")),
        "L3": ops["E_cas"],
        "L+": fs.poly((-0.5j, f"{a}+ {a}+"), (-0.5j, f"{b} {b}")),
        "L-": fs.poly((0.5j, f"{a} {a}"), (0.5j, f"{b}+ {b}+")),
        "E_dil": fs.poly((0.5, f"{a}+ {a}"), (0.5, f"{b}+ {b}"), (0.5, "")),
    })
    return ops


def commutator_check(cut: FockCutoff) -> Report:
    """su(1,1), Casimir, shift identity and the quantized so(3,2) table on one face."""
    cut.require(4, "commutator_check")
    fs = FockSpace(1, cut)
    ops = build_so32_ops(cut, fs)
    j3, kp, km, ecas = ops["J3"], ops["K+"], ops["K-"], ops["E_cas"]
    ident = fs.word("")
    rep = Report(info={"check": "su11", "n_max": cut.n_max, "dimension": fs.dim,
                       "interior_dimension": int(fs.interior().size), "backend": kernels.BACKEND})
    ck = _Checker(fs, rep)
    g = "su(1,1)"
    ck.add("[J3,K+] = K+", g, comm(j3, kp), kp)
    ck.add("[J3,K-] = -K-", g, comm(j3, km), -km)
    ck.add("[K+,K-] = -2 J3", g, comm(kp, km), -2 * j3,
           display="[K+,K-] = 2 J3", display_rhs=2 * j3)
    ck.add("K- = K+^dagger", "hermiticity", km, kp.conj().T)
    ck.add("J3 hermitian", "hermiticity", j3, j3.conj().T)
    ck.add("E_cas hermitian", "hermiticity", ecas, ecas.conj().T)
    cas = (j3 @ j3 - 0.5 * (kp @ km + km @ kp)).tocsr()
    ck.add("C = -(E_cas^2 + 1/4)", "casimir", cas, -(ecas @ ecas) - 0.25 * ident)
    for name, x in (("J3", j3), ("K+", kp), ("K-", km)):
        ck.add(f"[C,{name}] = 0", "casimir", comm(cas, x), 0 * x)
        ck.add(f"[E_cas,{name}] = 0", "casimir", comm(ecas, x), 0 * x)
    shift = (ops["K3"] + ops["E_dil"]).tocsr()
    ck.add("[E_cas, K3+E_dil] = i (K3+E_dil)", "shift", comm(ecas, shift), 1j * shift)

    # hand-built operators against the Weyl quantization of the classical generators
    classical = pair_generators(0, 1)
    for name in ("J3", "K+", "K-", "J+", "J-", "K3", "L3", "L+", "L-"):
        ck.add(f"{name} = Q({name})", "ordering", ops[name], fs.quantize(classical[name]))
    ck.add("E_dil = Q(E)", "ordering", ops["E_dil"], fs.quantize(classical["E"]))

    # every classical bracket {A,B} = C becomes [Q(A),Q(B)] = i Q(C)
    for entry in full_table():
        qa, qb = fs.quantize(classical[entry.lhs]), fs.quantize(classical[entry.rhs])
        rhs = sp.csr_matrix((fs.dim, fs.dim), dtype=complex)
        for coef, name in entry.expected:
            rhs = rhs + 1j * coef * fs.quantize(classical[name])
        ck.add(f"[{entry.lhs},{entry.rhs}]", f"so(3,2) {entry.group}", comm(qa, qb), rhs)

    rep.info["grading"] = grading_audit(fs, ops)
    return rep


def grading_audit(fs: FockSpace, ops: dict) -> dict:
    """m = (n1 - n2)/2 sectors: dimensions, E_cas block-diagonality and parity."""
    occ = fs.occupations
    two_m = occ[:, 0] - occ[:, 1]
    sectors = {int(k): int(np.sum(two_m == k)) for k in np.unique(two_m)}
    e = sp.coo_matrix(ops["E_cas"])
    keeps_m = bool(np.all(two_m[e.row] == two_m[e.col]))
    parity_ok = True
    for name in ("J3", "K+", "K-", "E_cas"):
        o = sp.coo_matrix(ops[name])
        parity_ok &= bool(np.all((two_m[o.row] - two_m[o.col]) % 2 == 0))
    return {
        "sector_dimensions": sectors,
        "even_dimension": int(sum(v for k, v in sectors.items() if k % 2 == 0)),
        "odd_dimension": int(sum(v for k, v in sectors.items() if k % 2)),
        "E_cas_preserves_m": keeps_m,
        "parity_preserved": parity_ok,
    }


# ---------------------------------------------------- Casimir eigenvectors

def _two_m(m: float) -> int:
    tm = 2.0 * m
    if abs(tm - round(tm)) > 1e-12:
        raise ValueError(f"m must be a half-integer, got {m}")
    return int(round(tm))


@dataclass(frozen=True)
class CasimirEigenvector:
    """Coefficients of sum_n alpha_n |n + 2m, n> with alpha_0 = 1.

    ``swapped`` marks m < 0 handled by exchanging the oscillators, in which
    case the states are |n, n + 2|m|>.
    """

    s: float
    m: float
    coeffs: np.ndarray
    normalization: str = "alpha0=1"
    swapped: bool = False

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1


def casimir_recursion(s: float, m: float, cut: FockCutoff) -> CasimirEigenvector:
    tm = _two_m(m)
    if tm < 0:
        raise NegativeM("m < 0: use casimir_eigenvector, which swaps the oscillators")
    coeffs = kernels.casimir_coefficients(float(s), tm, cut.n_max)
    coeffs.setflags(write=False)
    return CasimirEigenvector(float(s), tm / 2.0, coeffs)


def casimir_eigenvector(s: float, m: float, cut: FockCutoff) -> CasimirEigenvector:
    """Any sign of m; m < 0 reuses the |m| coefficients with a and b exchanged."""
    tm = _two_m(m)
    v = casimir_recursion(s, abs(tm) / 2.0, cut)
    if tm >= 0:
        return v
    return CasimirEigenvector(v.s, tm / 2.0, v.coeffs, v.normalization, swapped=True)


def squeezing_sector_matrix(m: float, n_max: int) -> sp.csr_matrix:
    """E_cas restricted to span{|n+2m, n>, n = 0..n_max} (m >= 0)."""
    tm = _two_m(m)
    n = np.arange(n_max)
    up = 0.5j * np.sqrt((n + 1.0) * (n + tm + 1.0))  # |n> -> |n+1>
    return sp.diags([up, -up], [-1, 1], shape=(n_max + 1, n_max + 1), format="csr", dtype=complex)


def eigen_residual(v: CasimirEigenvector) -> np.ndarray:
    """(E_cas - s) alpha in the m-sector; non-zero only in the last slot."""
    mat = squeezing_sector_matrix(abs(v.m), v.n_max)
    return mat @ v.coeffs - v.s * v.coeffs


def asymptotic_check(v: CasimirEigenvector) -> tuple[float, float]:
    """Fit alpha_n ~ n^(is - 1/2) over the top decade of n.

    The recursion has a second, alternating solution ~ (-1)^n n^(-is-1/2);
    averaging neighbours removes it, leaving the smooth branch.  Returns the
    slope of ln|.| and of the unwrapped phase against ln n.
    """
    if v.n_max < FIT_MIN_CUTOFF:
        raise CutoffTooSmall(f"asymptotic fit needs n_max >= {FIT_MIN_CUTOFF}, got {v.n_max}")
    a = np.asarray(v.coeffs)
    smooth = 0.5 * (a[:-1] + a[1:])
    n = np.arange(smooth.size)
    sel = n >= max(1, v.n_max // 10)
    x = np.log(n[sel] + 0.5)
    slope = np.polyfit(x, np.log(np.abs(smooth[sel])), 1)[0]
    rate = np.polyfit(x, np.unwrap(np.angle(smooth[sel])), 1)[0]
    return float(slope), float(rate)


def double_factorial_ratio(n: int) -> float:
    """(n-1)!!/n!! for even n, 0 for odd n: the s = 0, m = 0 coefficients."""
    if n % 2:
        return 0.0
    out = 1.0
    for k in range(1, n // 2 + 1):
        out *= (2 * k - 1) / (2 * k)
    return out


def embed_eigenvector(v: CasimirEigenvector, cut: FockCutoff) -> np.ndarray:
    """Single-face Fock vector sum_n alpha_n |n+2m, n> up to the cutoff."""
    fs = FockSpace(1, cut)
    out = np.zeros(fs.dim, dtype=complex)
    tm = abs(_two_m(v.m))
    for n in range(min(v.n_max, cut.n_max - tm) + 1):
        occ = (n, n + tm) if v.swapped else (n + tm, n)
        out[fs.basis_index(occ)] = v.coeffs[n]
    return out


def area_shift_apply(state, cut: FockCutoff) -> np.ndarray:
    """Apply the Hermitian shift K3 + E_dil, which moves the E_cas eigenvalue by i."""
    cut.require(2, "area_shift_apply")
    if isinstance(state, CasimirEigenvector):
        state = embed_eigenvector(state, cut)
    fs = FockSpace(1, cut)
    ops = build_so32_ops(cut, fs)
    shift = ops["K3"] + ops["E_dil"]
    return shift @ np.asarray(state, dtype=complex)


def shifted_residual(out: np.ndarray, s: float, cut: FockCutoff) -> float:
    """Relative |(E_cas - (s + i)) out| on states with occupations <= n_max/2."""
    fs = FockSpace(1, cut)
    ecas = build_su11_ops(cut, fs)["E_cas"]
    res = ecas @ out - (s + 1j) * out
    idx = np.flatnonzero(np.all(fs.occupations <= cut.n_max // 2, axis=1))
    norm = np.linalg.norm(out[idx])
    return float(np.linalg.norm(res[idx]) / norm) if norm else 0.0


# -------------------------------------------------- N faces: deformations

def build_deformation_ops(n_faces: int, cut: FockCutoff, budget: int = DEFAULT_BUDGET,
                          space: FockSpace | None = None) -> dict:
    """alpha^z_ij, alpha^w_ij and beta_ij as dicts keyed by (i, j)."""
    if n_faces < 1:
        raise ValueError("need at least one face")
    fs = space or FockSpace(n_faces, cut, budget)
    az, aw, be = {}, {}, {}
    for i, j in itertools.product(range(n_faces), repeat=2):
        if i == j:
            # i(a+a - a a+) + i vanishes identically; the truncated words would not
            az[i, j] = aw[i, j] = sp.csr_matrix((fs.dim, fs.dim), dtype=complex)
        else:
            az[i, j] = fs.poly((1j, f"a{i}+ a{j}"), (-1j, f"a{i} a{j}+"))
            aw[i, j] = fs.poly((1j, f"b{i}+ b{j}"), (-1j, f"b{i} b{j}+"))
        be[i, j] = fs.poly((1j, f"a{i}+ b{j}+"), (-1j, f"a{i} b{j}"))
    return {"alpha_z": az, "alpha_w": aw, "beta": be}


def gl_n_quantum_check(n_faces: int, cut: FockCutoff, budget: int = DEFAULT_BUDGET) -> Report:
    """Deformation algebra, area split and Delta structure constants on N faces."""
    if n_faces < 2:
        raise ValueError("gl_N check needs N >= 2")
    cut.require(2, "gl_n_quantum_check")
    fs = FockSpace(n_faces, cut, budget)
    ops = build_deformation_ops(n_faces, cut, space=fs)
    az, aw, be = ops["alpha_z"], ops["alpha_w"], ops["beta"]
    idx = range(n_faces)
    d = lambda x, y: 1.0 if x == y else 0.0
    rep = Report(info={"check": "gl_N", "n_faces": n_faces, "n_max": cut.n_max,
                       "dimension": fs.dim, "interior_dimension": int(fs.interior().size),
                       "backend": kernels.BACKEND})
    ck = _Checker(fs, rep)

    faces = [build_su11_ops(cut, fs, i) for i in idx]
    total = {name: sum((f[name] for f in faces[1:]), faces[0][name]).tocsr()
             for name in ("J3", "K+", "K-")}
    area = sum((f["E_cas"] for f in faces[1:]), faces[0]["E_cas"]).tocsr()
    ap = {k: az[k] + aw[k] for k in az}
    am = {k: az[k] - aw[k] for k in az}
    bs = {(i, j): be[i, j] + be[j, i] for i in idx for j in idx}
    ba = {(i, j): be[i, j] - be[j, i] for i in idx for j in idx}
    delta = {k: ap[k] + bs[k] for k in ap}
    zero = 0 * area

    classical_az, classical_aw, classical_be = deformation_generators(n_faces)
    for i, j in itertools.product(idx, repeat=2):
        tag = f"{i}{j}"
        ck.add(f"alpha_z_{tag} hermitian", "hermiticity", az[i, j], az[i, j].conj().T)
        ck.add(f"alpha_w_{tag} hermitian", "hermiticity", aw[i, j], aw[i, j].conj().T)
        ck.add(f"beta_{tag} hermitian", "hermiticity", be[i, j], be[i, j].conj().T)
        ck.add(f"alpha_z_{tag} = -alpha_z_{j}{i}", "antisymmetry", az[i, j], -az[j, i])
        ck.add(f"alpha_w_{tag} = -alpha_w_{j}{i}", "antisymmetry", aw[i, j], -aw[j, i])
        ck.add(f"alpha_z_{tag} = Q(alpha_z_{tag})", "ordering", az[i, j], fs.quantize(classical_az[i, j]))
        ck.add(f"alpha_w_{tag} = Q(alpha_w_{tag})", "ordering", aw[i, j], fs.quantize(classical_aw[i, j]))
        ck.add(f"beta_{tag} = Q(beta_{tag})", "ordering", be[i, j], fs.quantize(classical_be[i, j]))
        for name, g in total.items():
            for lab, x in (("alpha_z", az), ("alpha_w", aw), ("beta", be)):
                ck.add(f"[{name},{lab}_{tag}] = 0", "su(1,1) invariance", comm(g, x[i, j]), zero)
    for i in idx:
        ck.add(f"beta_{i}{i} = 2 E_{i}", "diagonal", be[i, i], 2 * faces[i]["E_cas"])

    for i, j, k, l in itertools.product(idx, repeat=4):
        def so_n(x):
            return 1j * (d(j, k) * x[i, l] - d(i, k) * x[j, l] - d(j, l) * x[i, k] + d(i, l) * x[j, k])

        ck.add(f"[az_{i}{j},az_{k}{l}]", "[az,az]", comm(az[i, j], az[k, l]), so_n(az))
        ck.add(f"[aw_{i}{j},aw_{k}{l}]", "[aw,aw]", comm(aw[i, j], aw[k, l]), so_n(aw))
        ck.add(f"[az_{i}{j},aw_{k}{l}] = 0", "[az,aw]", comm(az[i, j], aw[k, l]), zero)
        ck.add(f"[b_{i}{j},b_{k}{l}]", "[b,b]", comm(be[i, j], be[k, l]),
               1j * (d(j, l) * az[i, k] + d(i, k) * aw[j, l]))
        ck.add(f"[az_{i}{j},b_{k}{l}]", "[az,b]", comm(az[i, j], be[k, l]),
               1j * (d(j, k) * be[i, l] - d(i, k) * be[j, l]))
        lhs = comm(aw[i, j], be[k, l])
        rhs = 1j * (d(j, l) * be[k, i] - d(i, l) * be[k, j])
        if d(i, k) != d(i, l):
            ck.add(f"[aw_{i}{j},b_{k}{l}]", "[aw,b]", lhs, rhs,
                   display=f"[aw_{i}{j},b_{k}{l}] = i(d_jl b_ki - d_ik b_kj)",
                   display_rhs=1j * (d(j, l) * be[k, i] - d(i, k) * be[k, j]))
        else:
            ck.add(f"[aw_{i}{j},b_{k}{l}]", "[aw,b]", lhs, rhs)
        ck.add(f"[D_{i}{j},D_{k}{l}]", "[D,D] gl_N", comm(delta[i, j], delta[k, l]),
               2j * (d(j, k) * delta[i, l] - d(i, l) * delta[k, j]))

    for i, j in itertools.product(idx, repeat=2):
        tag = f"{i}{j}"
        lhs = comm(area, az[i, j])
        if i != j:
            ck.add(f"[E,az_{tag}] = -(i/2) bA_{tag}", "area split", lhs, -0.5j * ba[i, j],
                   display=f"[E,az_{tag}] = -i bA_{tag}", display_rhs=-1j * ba[i, j])
            ck.add(f"[E,aw_{tag}] = (i/2) bA_{tag}", "area split", comm(area, aw[i, j]), 0.5j * ba[i, j],
                   display=f"[E,aw_{tag}] = i bA_{tag}", display_rhs=1j * ba[i, j])
            ck.add(f"[E,b_{tag}] = -(i/2) a-_{tag}", "area split", comm(area, be[i, j]), -0.5j * am[i, j],
                   display=f"[E,b_{tag}] = -i a-_{tag}", display_rhs=-1j * am[i, j])
            ck.add(f"[E,a+_{tag}] = 0", "area preserving", comm(area, ap[i, j]), zero,
                   display=f"[E, az_{tag} + aw_{j}{i}] = 0",
                   display_rhs=comm(area, az[i, j] + aw[j, i]))
        else:
            ck.add(f"[E,b_{tag}] = 0", "area split", comm(area, be[i, j]), zero)
            ck.add(f"[E,a+_{tag}] = 0", "area preserving", comm(area, ap[i, j]), zero)
        ck.add(f"[E,bS_{tag}] = 0", "area preserving", comm(area, bs[i, j]), zero)
        ck.add(f"[E,a-_{tag}] = -i bA_{tag}", "area changing", comm(area, am[i, j]), -1j * ba[i, j])
        ck.add(f"[E,bA_{tag}] = -i a-_{tag}", "area changing", comm(area, ba[i, j]), -1j * am[i, j])
        ck.add(f"[E,D_{tag}] = 0", "area preserving", comm(area, delta[i, j]), zero)
    return rep

