import importlib

import numpy as np
import pytest

from lorpoly import _kernels_py, kernels

try:
    _ext = importlib.import_module("lorpoly._kernels")
except ImportError:  # extension not built
    _ext = None

needs_ext = pytest.mark.skipif(_ext is None, reason="compiled extension not built")


def dense_word(levels, n_modes, modes, daggers):
    """Oracle: product of Kronecker-embedded truncated ladder matrices."""
    a = np.diag(np.sqrt(np.arange(1, levels)), 1)
    out = np.eye(levels ** n_modes)
    for m, dag in zip(modes, daggers):
        op = a.T if dag else a
        mats = [op if k == m else np.eye(levels) for k in range(n_modes)]
        full = mats[0]
        for x in mats[1:]:
            full = np.kron(full, x)
        out = out @ full
    return out


def to_dense(coo, dim):
    rows, cols, vals = coo
    m = np.zeros((dim, dim))
    np.add.at(m, (rows, cols), vals)
    return m


WORDS = [
    (3, 2, [0], [1]),
    (4, 2, [0, 0], [1, 1]),
    (4, 2, [1, 0], [0, 1]),
    (3, 4, [2, 3, 0], [1, 0, 1]),
    (5, 2, [0, 0, 1, 1], [0, 1, 1, 0]),
]


@pytest.mark.parametrize("levels,n_modes,modes,daggers", WORDS)
def test_python_kernel_matches_dense_oracle(levels, n_modes, modes, daggers):
    coo = _kernels_py.ladder_word_coo(levels, n_modes, np.array(modes), np.array(daggers))
    assert np.allclose(to_dense(coo, levels ** n_modes), dense_word(levels, n_modes, modes, daggers),
                       atol=1e-14)


@needs_ext
@pytest.mark.parametrize("levels,n_modes,modes,daggers", WORDS)
def test_backends_agree_on_words(levels, n_modes, modes, daggers):
    m, d = np.array(modes, dtype=np.int64), np.array(daggers, dtype=np.int64)
    a = _kernels_py.ladder_word_coo(levels, n_modes, m, d)
    b = _ext.ladder_word_coo(levels, n_modes, m, d)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


@needs_ext
@pytest.mark.parametrize("s,two_m", [(0.0, 0), (0.5, 1), (1.0, 0), (2.0, 6), (-1.3, 3)])
def test_backends_agree_on_recursion(s, two_m):
    a = _kernels_py.casimir_coefficients(s, two_m, 300)
    b = _ext.casimir_coefficients(s, two_m, 300)
    assert np.array_equal(a, b)


def test_recursion_small_cases():
    a = kernels.casimir_coefficients(0.0, 0, 8)
    assert np.allclose(a, [1, 0, 0.5, 0, 0.375, 0, 0.3125, 0, 0.2734375], atol=0)
    assert kernels.casimir_coefficients(1.0, 0, 1)[1] == 2j
    assert kernels.casimir_coefficients(0.3, 0, 0).tolist() == [1]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch():
    import subprocess
    import sys
    env = dict(__import__("os").environ, LORPOLY_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import lorpoly.kernels as k; print(k.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
