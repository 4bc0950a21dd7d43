import numpy as np
import pytest

import pipestab


def test_spectrum_matches_reference():
    s = pipestab.spectrum(1.0, 0, 3000.0)
    w = s["omega"][0]
    assert abs(w.real - 0.94836022205056) < 1e-9
    assert abs(w.imag + 0.051973111282766) < 1e-9
    assert len(s["omega"]) == 93
    assert max(s["residual"][:10]) < 1e-8


def test_symmetry_in_n():
    a = np.array(pipestab.spectrum(1.0, 2, 3000.0, refine=0)["omega"][:10])
    b = np.array(pipestab.spectrum(1.0, -2, 3000.0, refine=0)["omega"][:10])
    assert np.max(np.abs(a - b)) < 1e-10


def test_grid_derivatives():
    g = pipestab.grid(32)
    y = g["y"]
    assert np.allclose(g["D1"] @ y**2, 2 * y, atol=1e-11)
    assert abs(g["w"].sum() - 1.0) < 1e-14


def test_char_roots_give_stokes_decay():
    lam = pipestab.char_roots(1)[0]
    assert abs(pipestab.stokes_omega_i(lam, 3000.0) + 0.001927728654315596) < 1e-15


def test_optimal_growth():
    r = pipestab.optimal_growth(1, 50.0, N=30)
    assert abs(r["G"] - 683.106014362) < 1e-6
    assert r["max_imag_ratio"] < 1e-8


def test_bd_agrees_in_regular_regime():
    a = pipestab.spectrum(1.0, 1, 3000.0, refine=5)["omega"][:3]
    b = pipestab.bd_spectrum(1.0, 1, 3000.0, 60)["omega"][:3]
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-8


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        pipestab.spectrum(1.0, 1, 3000.0, N=4)
    with pytest.raises(ValueError):
        pipestab.spectrum(1.0, 1, -1.0)
    with pytest.raises(ValueError):
        pipestab.spectrum(1.0, 1, 3000.0, stretch="bogus")
