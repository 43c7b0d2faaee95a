# Copyright 2026 The kerrcat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import kerrcat


def test_ladder_operators():
    a = kerrcat.annihilation(6)
    n = kerrcat.number_operator(6)
    assert np.allclose(a.conj().T @ a, n)
    assert np.allclose(np.diag(n).real, np.arange(6))


def test_coherent_state_mean_photon_number():
    psi = kerrcat.coherent_state(1.5, 30)
    n = kerrcat.number_operator(30)
    assert abs(np.vdot(psi, n @ psi).real - 2.25) < 1e-9


def test_thermal_population():
    n = kerrcat.bose_einstein(2 * math.pi * 5900.0, 73.5)
    assert abs(n - 0.022) < 0.001


def test_cat_frame_pauli_algebra():
    p = kerrcat.device_kerr_cat(4.0)
    f = kerrcat.cat_frame(p)
    x, y, z = f["x"], f["y"], f["z"]
    proj = np.outer(f["c_plus"], f["c_plus"].conj()) + np.outer(f["c_minus"], f["c_minus"].conj())
    assert np.allclose(x @ y, 1j * z @ proj, atol=1e-9)
    assert abs(p.cat_size - 4.0) < 1e-12


def test_cat_pair_is_eigenstate_of_hamiltonian():
    p = kerrcat.device_kerr_cat(4.0)
    h = kerrcat.kerr_cat_hamiltonian(p)
    dim = h.shape[0]
    psi = kerrcat.coherent_state(p.alpha, dim)
    e = abs(p.eps2) ** 2 / p.K
    assert np.linalg.norm(h @ psi - e * psi) / np.linalg.norm(h, 2) < 1e-6


def test_evolve_matches_liouvillian_exponential():
    import scipy.linalg

    rng = np.random.default_rng(3)
    dim = 4
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (m + m.conj().T) / 2
    a = kerrcat.annihilation(dim)
    rho0 = np.zeros((dim, dim), complex)
    rho0[1, 1] = 1.0
    rho_t, _ = kerrcat.evolve(rho0, h, [(a, 0.3)], [0.0, 0.7], [])
    lv = kerrcat.liouvillian(h, [(a, 0.3)])
    vec = scipy.linalg.expm(0.7 * lv) @ rho0.reshape(-1, order="F")
    assert np.max(np.abs(rho_t - vec.reshape(dim, dim, order="F"))) < 1e-7


def test_gate_fidelity_and_tomography():
    u = np.array([[1, -1j], [-1j, 1]]) / math.sqrt(2)
    ideal = kerrcat.ptm_from_unitary(u)
    assert kerrcat.gate_fidelity(ideal, ideal) == pytest.approx(1.0)
    est, fid = kerrcat.process_tomography(u)
    assert np.allclose(est, ideal, atol=1e-10)
    assert fid == pytest.approx(1.0)


def test_qndness_at_defaults():
    r = kerrcat.ReadoutParams.device()
    q = kerrcat.qndness(r, 2.0, 1 / 600.0, 20000, 1)
    assert 0.97 < q < 1.0


def test_filter_notch():
    f, s21, s11 = kerrcat.notch_filter_sweep()
    f = np.asarray(f)
    s21 = np.asarray(s21)
    assert s21[np.argmin(np.abs(f - 5.9))] < -30
    assert s21[np.argmin(np.abs(f - 11.8))] > -0.1


def test_run_and_validate(tmp_path):
    cfg = {"experiment": "filter-sweep", "seed": 1, "output_dir": str(tmp_path / "out")}
    assert not [d for d in kerrcat.validate(cfg) if d[0] == "error"]
    rec = kerrcat.run(cfg)
    assert rec["status"] == "ok"
    assert (tmp_path / "out" / "filter_sweep.csv").exists()
    assert "filter-sweep" in kerrcat.list_experiments()


def test_errors_map_to_exceptions():
    with pytest.raises(kerrcat.InputError):
        kerrcat.coherent_state(5.0, 4)
    with pytest.raises(kerrcat.InputError):
        kerrcat.run({"experiment": "nope"})
