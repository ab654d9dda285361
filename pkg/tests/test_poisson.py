import itertools

import numpy as np
import pytest
import sympy as sy

from lorpoly.errors import NonPositiveStep, UnknownGenerator
from lorpoly.poisson import (
    BracketEntry, QuadObservable, bracket, flow_check, full_table, gln_table_deviations,
    jacobi_deviation, lambda_drift, pair_generators, standard_generators, verify_table,
)
from lorpoly.spinor import SpinorPair, so32_arrays, su11_arrays

GENS = standard_generators()
TEN = ["J3", "J+", "J-", "K3", "K+", "K-", "L3", "L+", "L-", "E"]


# ---- independent symbolic oracle: z, zb, w, wb treated as independent symbols
z, zb, w, wb = sy.symbols("z zb w wb")
I = sy.I
SYMBOLIC = {
    "J3": (z * zb - w * wb) / 2, "K+": (zb ** 2 - w ** 2) / 2, "K-": (z ** 2 - wb ** 2) / 2,
    "J+": zb * w, "J-": z * wb, "K3": -(zb * wb + z * w) / 2,
    "L3": I / 2 * (zb * wb - z * w), "L+": -I / 2 * (zb ** 2 + w ** 2), "L-": I / 2 * (z ** 2 + wb ** 2),
    "E": (z * zb + w * wb) / 2,
}


def pb(f, g):
    return sy.expand(-I * (sy.diff(f, z) * sy.diff(g, zb) - sy.diff(f, zb) * sy.diff(g, z))
                     - I * (sy.diff(f, w) * sy.diff(g, wb) - sy.diff(f, wb) * sy.diff(g, w)))


def as_symbolic(q: QuadObservable):
    xi = [z, w, zb, wb]
    return sy.expand(sum(sy.nsimplify(complex(q.coeff[a, b]).real) * xi[a] * xi[b]
                         + I * sy.nsimplify(complex(q.coeff[a, b]).imag) * xi[a] * xi[b]
                         for a in range(4) for b in range(4)))


@pytest.mark.parametrize("name", TEN)
def test_generators_match_symbolic_definitions(name):
    assert sy.expand(as_symbolic(GENS[name]) - SYMBOLIC[name]) == 0


@pytest.mark.parametrize("a,b", list(itertools.combinations(TEN, 2)))
def test_bracket_matches_symbolic_oracle(a, b):
    assert sy.expand(as_symbolic(bracket(GENS[a], GENS[b])) - pb(SYMBOLIC[a], SYMBOLIC[b])) == 0


def test_bracket_examples():
    assert np.array_equal(bracket(GENS["J3"], GENS["K+"]).coeff, -1j * GENS["K+"].coeff)
    f = GENS["K3"] + 2 * GENS["L+"]
    assert not np.any(bracket(f, f).coeff)
    for a in "123":
        assert np.array_equal(bracket(GENS["E"], GENS[f"K{a}"]).coeff, GENS[f"L{a}"].coeff)


def test_full_table_exact():
    res = verify_table(full_table())
    assert len(res) == len(full_table())
    assert all(dev == 0.0 for _, dev in res)
    groups = {e.group for e in full_table()}
    for g in ("su(1,1)", "sl(2,C)", "so(3,2)", "sl2 triples", "shift", "norm shifts"):
        assert g in groups


def test_required_displays_present():
    present = {(e.lhs, e.rhs) for e in full_table()}
    for pair in [("Ecal", "L+"), ("Ecal", "L-"), ("Ecal", "J+"), ("Ecal", "J-"),
                 ("Ecal", "K3"), ("Ecal", "E"), ("K3", "L3"), ("Ecal", "K3+E")]:
        assert pair in present


def test_wrong_table_entry_is_detected():
    bad = [BracketEntry("K+", "K-", ((-2j, "J3"),))]
    assert verify_table(bad)[0][1] > 0


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        verify_table([BracketEntry("J3", "Q7", ())])


def test_generator_values_match_spinor_module():
    rng = np.random.default_rng(5)
    for _ in range(50):
        zz, ww = rng.standard_normal(2) @ [1, 1j], rng.standard_normal(2) @ [1, 1j]
        ref = so32_arrays(zz, ww)
        for k in ("J1", "J2", "J3", "K1", "K2", "K3", "L1", "L2", "L3", "E"):
            assert abs(GENS[k](zz, ww) - ref[k]) < 1e-14 * max(1, abs(zz) ** 2 + abs(ww) ** 2)
        assert abs(GENS["Ecal"](zz, ww) - su11_arrays(zz, ww)[3]) < 1e-14 * 10
    assert GENS["J3"](1, 1j) == 0 and GENS["L3"](1, 1j) == 1 and GENS["E"](1, 1j) == 1


def test_all_generators_real():
    for k in ["J1", "J2", "J3", "K1", "K2", "K3", "L1", "L2", "L3", "E", "Ecal"]:
        assert GENS[k].is_real(), k
    assert not GENS["J+"].is_real()


def test_reality_preserved_by_bracket():
    for a, b in itertools.combinations(["J1", "K2", "L3", "E", "K3"], 2):
        assert bracket(GENS[a], GENS[b]).is_real()


def test_jacobi_exact():
    for a, b, c in itertools.combinations(TEN, 3):
        assert jacobi_deviation(GENS[a], GENS[b], GENS[c]) == 0.0


def test_symmetry_enforced():
    with pytest.raises(ValueError):
        QuadObservable(np.triu(np.ones((4, 4))))


def test_flow_check():
    assert flow_check(GENS["J3"], SpinorPair(1, 1j), 1e-6) < 1e-5
    assert flow_check(QuadObservable.zero(), SpinorPair(0.3, -2j), 1e-3) == 0.0
    with pytest.raises(NonPositiveStep):
        flow_check(GENS["J3"], SpinorPair(1, 1j), 0.0)
    # the residual is O(step)
    p = SpinorPair(0.7 - 0.2j, -0.4 + 1.1j)
    r1 = flow_check(GENS["K3"], p, 1e-3)
    r2 = flow_check(GENS["K3"], p, 1e-4)
    assert r2 < r1 / 5


def test_lambda_is_conjugate_to_energy():
    for p in (SpinorPair(1, 1j), SpinorPair(0.3 - 0.9j, 1.2 + 0.5j)):
        assert lambda_drift(GENS["Ecal"], p, 1e-5) == pytest.approx(1.0, abs=1e-7)


def test_gln_relations_exact():
    for n in (2, 3):
        devs = gln_table_deviations(n)
        assert devs and all(v == 0.0 for v in devs.values()), devs


def test_pair_generators_embed():
    g = pair_generators(1, 3)
    zz = np.array([0.1, 2 - 1j, 0.5j])
    ww = np.array([1.0, -0.3j, 0.2])
    assert g["J3"](zz, ww) == pytest.approx(0.5 * (abs(zz[1]) ** 2 - abs(ww[1]) ** 2))
