import math

import mpmath
import numpy as np
import pytest

from netavg.network import build_network, generate
from netavg.spectral_map import (cycle_spectrum_analytic, dl_point_spectrum, dl_rho,
                                 lambda_images, line_spectrum, mu, mu_image_set, omega_star,
                                 sinc_grid, spectral_radius_A, spectrum_A_finite, tan_root,
                                 tree_analysis)
from netavg.spectrum import eigendecompose

# tan w = w on (pi, 3pi/2) solved at 50 digits, an independent oracle
with mpmath.workdps(50):
    OMEGA_STAR = float(mpmath.findroot(lambda w: mpmath.tan(w) - w, 4.4934))
    RHO_A_Q2 = float(mpmath.mpf(1) / 3 / mpmath.asin(mpmath.mpf(1) / 3))


def test_mu_examples():
    assert mu(0, 0) == pytest.approx(2 / math.pi, abs=1e-15)
    assert mu(1, 0) == 1.0
    assert mu(0, 1) == pytest.approx(2 / (5 * math.pi), abs=1e-15)
    lam = math.cos(OMEGA_STAR)
    assert mu(lam, -1) == pytest.approx(lam, abs=1e-10)


@pytest.mark.parametrize("lam, n", [(1.0, 1), (-1.0, 0), (1.5, 0), (-1.2, 3)])
def test_mu_rejects(lam, n):
    with pytest.raises(ValueError):
        mu(lam, n)


def test_omega_star():
    w = omega_star(1e-12)
    assert w == pytest.approx(OMEGA_STAR, abs=1e-12)
    assert abs(w - 4.493409) <= 1e-6
    assert abs(math.sin(w) / w + 0.217233) <= 1e-6
    assert abs(math.tan(w) - w) <= 1e-9
    assert tan_root(1) == pytest.approx(OMEGA_STAR, abs=1e-12)


def test_line_spectrum():
    d = line_spectrum()
    lo, hi = d["intervals"][0]
    assert hi == 1.0
    assert lo == pytest.approx(math.cos(OMEGA_STAR), abs=1e-12)
    assert d["point_spectrum"] == []


def test_spectral_radius_A():
    assert spectral_radius_A(1.0) == 1.0
    assert spectral_radius_A(0.0) == pytest.approx(2 / math.pi)
    assert spectral_radius_A(2 * math.sqrt(2) / 3) == pytest.approx(RHO_A_Q2, abs=1e-14)
    assert abs(spectral_radius_A(1 - 1e-8) - 1) < 1e-3
    with pytest.raises(ValueError):
        spectral_radius_A(1.1)


def test_finite_atoms_k3():
    desc = spectrum_A_finite(eigendecompose(generate("cycle", 3)), n_max=2)
    target = 3 * math.sqrt(3) / (4 * math.pi)
    hit = [a for a in desc.atoms if abs(a.mu - target) < 1e-12]
    assert len(hit) == 1 and hit[0].multiplicity == 2
    assert desc.contains_one and desc.contains_zero


def test_single_edge_atoms():
    desc = spectrum_A_finite(eigendecompose(build_network([("a", "b", 1)])))
    assert sorted(a.mu for a in desc.atoms) == [0.0, 1.0]


def test_path_atoms():
    vals = spectrum_A_finite(eigendecompose(generate("path", 3))).values()
    for want in (2 / math.pi, 2 / (5 * math.pi)):
        assert np.min(np.abs(vals - want)) < 1e-12


def test_atoms_inside_mu_image():
    rng = np.random.default_rng(11)
    for _ in range(5):
        edges = [(str(i), str(j), float(rng.uniform(0.1, 10)))
                 for i in range(5) for j in range(i + 1, 5) if rng.random() < 0.7 or j == i + 1]
        sp = eigendecompose(build_network(edges))
        ref = mu_image_set(sp.values, 6)
        for a in spectrum_A_finite(sp, 6).atoms:
            assert abs(a.mu) <= 1.0
            assert np.min(np.abs(ref - a.mu)) <= 1e-10


def test_cycle_analytic_examples():
    vals = cycle_spectrum_analytic(4, 2).values()
    assert np.min(np.abs(vals - 2 / math.pi)) < 1e-15
    assert np.min(np.abs(vals)) < 1e-15
    assert np.max(vals) == 1.0


def test_tree_q2():
    ta = tree_analysis(2)
    assert ta.case_flag == "interior root"
    assert ta.n0 == 0
    assert ta.min_spec == pytest.approx(math.cos(OMEGA_STAR), abs=1e-12)
    assert ta.rho_A == pytest.approx(RHO_A_Q2, abs=1e-12)
    assert ta.M[0] == pytest.approx(RHO_A_Q2, abs=1e-12)
    assert ta.intervals == [[-ta.M[1], ta.M[0]]]
    assert math.pi + ta.omega_rho == pytest.approx(3.4814, abs=1e-4)


def test_tree_threshold():
    assert tree_analysis(82).case_flag == "interior root"
    assert tree_analysis(83).case_flag == "endpoint"


@pytest.mark.parametrize("q", [2, 3, 10, 50, 82, 83, 100])
def test_tree_invariants(q):
    ta = tree_analysis(q)
    assert all(a > b for a, b in zip(ta.M, ta.M[1:]))
    assert all(a > b for a, b in zip(ta.m, ta.m[1:]))
    assert ta.min_spec == pytest.approx(-ta.M[1], abs=1e-14)
    # case boundary in closed form
    rho = 2 * math.sqrt(q) / (q + 1)
    interior = (q - 1) / (2 * math.sqrt(q)) < math.pi + math.acos(rho)
    assert (ta.case_flag == "interior root") == interior


def test_dl():
    d = dl_point_spectrum(3, 3)
    assert d["rho_P"] == 1.0
    hit = [e for e in d["mu"] if (e["m"], e["n"], e["k"]) == (1, 2, 0)]
    assert hit[0]["mu"] == pytest.approx(2 / math.pi)
    for e in d["mu"]:
        assert e["mu"] == pytest.approx(e["mu_closed_form"], abs=1e-12)
    assert dl_rho(2, 3) == pytest.approx(0.9797959, abs=1e-7)
    assert "mu_closed_form" not in dl_point_spectrum(2, 3)["mu"][0]


def test_grids():
    rows = sinc_grid(0.0, 2 * math.pi, 5)
    assert rows[0] == (0.0, 1.0) and len(rows) == 5
    img = lambda_images([1.0, 0.0, -1.0], n_max=1)
    assert img[0] == (1.0, 0, 1.0)
    assert len(img) == 4
