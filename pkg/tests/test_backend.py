"""The two kernel backends must agree entry-for-entry."""

import pytest

from bicohom import _core_py

try:
    from bicohom import _core_cy
except ImportError:
    _core_cy = None

from helpers import seeded

needs_cython = pytest.mark.skipif(_core_cy is None,
                                  reason="compiled kernel not built")


def random_rows(rng, m, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


@needs_cython
def test_snf_parity():
    rng = seeded(1)
    for _ in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = random_rows(rng, m, n)
        assert _core_py.snf_transforms(a) == _core_cy.snf_transforms(a)


@needs_cython
def test_echelon_parity():
    rng = seeded(2)
    for _ in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = random_rows(rng, m, n)
        py = _core_py.col_echelon(a, True)
        cy = _core_cy.col_echelon(a, True)
        assert py[0] == cy[0] and py[1] == cy[1]
        assert list(py[2]) == [tuple(p) for p in cy[2]]


@needs_cython
def test_scalar_kernels_parity():
    rng = seeded(3)
    for _ in range(40):
        n = rng.randint(1, 6)
        a = random_rows(rng, n, n)
        assert _core_py.det(a) == _core_cy.det(a)
        assert _core_py.minor_gcds(a) == _core_cy.minor_gcds(a)
        b = random_rows(rng, n, rng.randint(1, 6))
        assert _core_py.mat_mul(a, b) == _core_cy.mat_mul(a, b)
    for pair in [(0, 0), (12, 0), (0, -18), (-48, 36), (35, 49)]:
        assert _core_py.xgcd(*pair) == _core_cy.xgcd(*pair)


def test_backend_env_override(monkeypatch):
    import importlib

    import bicohom.backend as bk
    monkeypatch.setenv("BICOHOM_PURE_PYTHON", "1")
    mod = importlib.reload(bk)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("BICOHOM_PURE_PYTHON")
        importlib.reload(bk)
