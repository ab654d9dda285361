import numpy as np
import pytest
import scipy.sparse as sp

from lorpoly.errors import BudgetExceeded, CutoffTooSmall, NegativeM
from lorpoly.quantum import (
    FockCutoff, FockSpace, area_shift_apply, asymptotic_check, build_deformation_ops,
    build_so32_ops, build_su11_ops, casimir_eigenvector, casimir_recursion, comm,
    commutator_check, double_factorial_ratio, eigen_residual, embed_eigenvector,
    gl_n_quantum_check, shifted_residual, squeezing_sector_matrix,
)


def ket(fs, *occ):
    v = np.zeros(fs.dim, dtype=complex)
    v[fs.basis_index(occ)] = 1
    return v


def displayed_action(n_max):
    """K+ and K- assembled directly from their action on |n1, n2>."""
    lv = n_max + 1
    kp = np.zeros((lv * lv, lv * lv))
    km = np.zeros((lv * lv, lv * lv))
    idx = lambda a, b: a * lv + b
    for n1 in range(lv):
        for n2 in range(lv):
            c = idx(n1, n2)
            if n1 + 2 <= n_max:
                kp[idx(n1 + 2, n2), c] += 0.5 * np.sqrt((n1 + 1) * (n1 + 2))
            if n2 >= 2:
                kp[idx(n1, n2 - 2), c] -= 0.5 * np.sqrt(n2 * (n2 - 1))
            if n2 + 2 <= n_max:
                km[idx(n1, n2 + 2), c] -= 0.5 * np.sqrt((n2 + 1) * (n2 + 2))
            if n1 >= 2:
                km[idx(n1 - 2, n2), c] += 0.5 * np.sqrt(n1 * (n1 - 1))
    return kp, km


def test_cutoff_validation():
    with pytest.raises(ValueError):
        FockCutoff(-1)
    with pytest.raises(CutoffTooSmall):
        build_su11_ops(FockCutoff(1))
    with pytest.raises(CutoffTooSmall):
        commutator_check(FockCutoff(3))


def test_su11_examples():
    cut = FockCutoff(5)
    fs = FockSpace(1, cut)
    ops = build_su11_ops(cut, fs)
    assert np.allclose(ops["J3"] @ ket(fs, 3, 1), ket(fs, 3, 1))
    assert np.allclose(ops["K+"] @ ket(fs, 0, 0), ket(fs, 2, 0) / np.sqrt(2))
    assert np.allclose(ops["E_cas"] @ ket(fs, 0, 0), 0.5j * ket(fs, 1, 1))
    kp, km = displayed_action(5)
    assert np.allclose(ops["K+"].toarray(), kp) and np.allclose(ops["K-"].toarray(), km)


def test_commutator_check_interior_exact():
    rep = commutator_check(FockCutoff(6))
    assert rep.ok(1e-13), rep.families()
    names = {r.name for r in rep.relations}
    assert "[E_cas, K3+E_dil] = i (K3+E_dil)" in names and "C = -(E_cas^2 + 1/4)" in names
    full = [r.full for r in rep.relations if r.family in ("su(1,1)", "casimir")]
    assert max(full) > 1e-3  # truncation shows up at the boundary only
    grading = rep.info["grading"]
    assert grading["E_cas_preserves_m"] and grading["parity_preserved"]
    assert grading["sector_dimensions"][0] == 7 and grading["even_dimension"] + grading["odd_dimension"] == 49


def test_literature_sign_is_reported():
    rep = commutator_check(FockCutoff(4))
    (d,) = [r for r in rep.discrepancies() if r.family == "su(1,1)"]
    assert d.display == "[K+,K-] = 2 J3" and d.display_interior > 1 and d.interior < 1e-13


def test_weyl_quantization_preserves_brackets():
    from lorpoly.poisson import standard_generators
    cut = FockCutoff(6)
    fs = FockSpace(1, cut)
    g = standard_generators()
    idx = fs.interior()
    x = comm(fs.quantize(g["K3"]), fs.quantize(g["L3"]))
    ref = 1j * fs.quantize(-1 * g["E"])
    assert np.max(np.abs((x - ref).toarray()[np.ix_(idx, idx)])) < 1e-13


def test_edil_ordering():
    cut = FockCutoff(4)
    fs = FockSpace(1, cut)
    ops = build_so32_ops(cut, fs)
    assert np.allclose(ops["E_dil"] @ ket(fs, 0, 0), 0.5 * ket(fs, 0, 0))


# ----------------------------------------------------------- recursion

def test_recursion_examples():
    v = casimir_recursion(0, 0, FockCutoff(100))
    assert np.allclose(v.coeffs[:7], [1, 0, 0.5, 0, 0.375, 0, 0.3125])
    for n in range(1, 100):
        assert v.coeffs[n + 1] == pytest.approx(n * v.coeffs[n - 1] / (n + 1), abs=1e-15)
    ref = np.array([double_factorial_ratio(n) for n in range(101)])
    assert np.max(np.abs(v.coeffs - ref)) < 1e-14
    assert casimir_recursion(1, 0, FockCutoff(4)).coeffs[1] == pytest.approx(2j)
    with pytest.raises(NegativeM):
        casimir_recursion(1, -0.5, FockCutoff(4))
    with pytest.raises(ValueError):
        casimir_recursion(1, 0.3, FockCutoff(4))


@pytest.mark.parametrize("s,m", [(0, 0), (1.3, 1.5), (-0.4, 2), (2, 0.5)])
def test_eigen_residual_confined_to_last_slot(s, m):
    v = casimir_recursion(s, m, FockCutoff(40))
    r = eigen_residual(v)
    assert np.max(np.abs(r[:-1])) < 1e-12 * np.max(np.abs(v.coeffs))
    if s != 0:  # for s=0 the truncated neighbour vanishes by parity
        assert abs(r[-1]) > 0


def test_sector_matrix_matches_fock_operator():
    cut = FockCutoff(10)
    fs = FockSpace(1, cut)
    ecas = build_su11_ops(cut, fs)["E_cas"].toarray()
    for tm in (0, 1, 3):
        states = [fs.basis_index((n + tm, n)) for n in range(cut.n_max - tm + 1)]
        block = ecas[np.ix_(states, states)]
        assert np.allclose(block, squeezing_sector_matrix(tm / 2, cut.n_max - tm).toarray())


def test_embedded_eigenvector_in_fock_space():
    cut = FockCutoff(30)
    fs = FockSpace(1, cut)
    ecas = build_su11_ops(cut, fs)["E_cas"]
    for s, m in ((0.7, 1), (0.7, -1)):
        vec = embed_eigenvector(casimir_eigenvector(s, m, cut), cut)
        res = ecas @ vec - s * vec
        inner = np.all(fs.occupations <= cut.n_max - 3, axis=1)
        assert np.max(np.abs(res[inner])) < 1e-12


def test_negative_m_swap_symmetry():
    cut = FockCutoff(50)
    a, b = casimir_eigenvector(1.2, 0.5, cut), casimir_eigenvector(1.2, -0.5, cut)
    assert b.swapped and not a.swapped
    assert np.array_equal(np.abs(a.coeffs), np.abs(b.coeffs))


@pytest.mark.parametrize("s", [0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("m", [0, 0.5, 3])
def test_asymptotic_fit(s, m):
    slope, rate = asymptotic_check(casimir_recursion(s, m, FockCutoff(1024)))
    assert slope == pytest.approx(-0.5, abs=0.05)
    assert rate == pytest.approx(s, abs=0.05)


def test_asymptotic_fit_needs_cutoff():
    with pytest.raises(CutoffTooSmall):
        asymptotic_check(casimir_recursion(1, 0, FockCutoff(100)))


def test_sqrt_n_bounded():
    v = casimir_recursion(1.5, 1, FockCutoff(4000))
    n = np.arange(1, v.n_max + 1)
    scaled = np.abs(v.coeffs[1:]) * np.sqrt(n)
    assert scaled.max() < 10 * scaled[-1000:].mean()


# ------------------------------------------------------------ area shift

@pytest.mark.parametrize("s,m", [(0, 0), (1.0, 0.5), (2.0, -1)])
def test_area_shift(s, m):
    cut = FockCutoff(40)
    v = casimir_eigenvector(s, m, cut)
    out = area_shift_apply(v, cut)
    assert shifted_residual(out, s, cut) < 1e-8
    vin = embed_eigenvector(v, cut)
    assert abs(np.linalg.norm(out) - np.linalg.norm(vin)) > 1e-3


def test_area_shift_zero_and_hermitian():
    cut = FockCutoff(6)
    fs = FockSpace(1, cut)
    assert np.all(area_shift_apply(np.zeros(fs.dim), cut) == 0)
    ops = build_so32_ops(cut, fs)
    x = (ops["K3"] + ops["E_dil"]).toarray()
    assert np.allclose(x, x.conj().T)
    assert not np.allclose(x @ x.conj().T, np.eye(fs.dim))


# ------------------------------------------------------- deformation ops

def test_deformation_ops_basic():
    ops = build_deformation_ops(1, FockCutoff(3))
    assert ops["alpha_z"][0, 0].count_nonzero() == 0 and ops["alpha_w"][0, 0].count_nonzero() == 0
    ops = build_deformation_ops(2, FockCutoff(3))
    for key in ("alpha_z", "alpha_w"):
        a = ops[key]
        assert (a[0, 1] + a[1, 0]).count_nonzero() == 0
        assert abs(a[0, 1] - a[0, 1].conj().T).max() < 1e-15
    with pytest.raises(BudgetExceeded):
        build_deformation_ops(4, FockCutoff(6), budget=10_000)


def test_deformation_table_example():
    cut = FockCutoff(3)
    fs = FockSpace(2, cut)
    ops = build_deformation_ops(2, cut, space=fs)
    az, be = ops["alpha_z"], ops["beta"]
    idx = fs.interior()
    diff = comm(az[0, 1], be[1, 0]) - 1j * be[0, 0]
    assert np.max(np.abs(diff.toarray()[np.ix_(idx, idx)]), initial=0) < 1e-13


def test_beta_diagonal_expectation_vanishes():
    cut = FockCutoff(4)
    fs = FockSpace(2, cut)
    be = build_deformation_ops(2, cut, space=fs)["beta"]
    for n in range(3):
        v = ket(fs, n, n, 1, 1)
        assert abs(np.vdot(v, be[0, 0] @ v)) == 0


def test_gl_n_check_n2():
    rep = gl_n_quantum_check(2, FockCutoff(4))
    assert rep.ok(1e-13), rep.families()
    fam = rep.families()
    for f in ("[az,aw]", "[D,D] gl_N", "area preserving", "area changing", "su(1,1) invariance"):
        assert f in fam
    assert all(r.display_interior > 0.1 for r in rep.discrepancies())


def test_gl_n_check_n3_small_cutoff():
    rep = gl_n_quantum_check(3, FockCutoff(2))
    assert rep.ok(1e-13)


def test_operators_are_sparse():
    ops = build_su11_ops(FockCutoff(6))
    assert all(sp.issparse(o) for o in ops.values())
