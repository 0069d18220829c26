# Copyright 2026 The QRAN Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

# http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Tests for time grids, diabatic propagation and the adiabatic frame
"""
import math
import numpy as np
import pytest
import hypothesis as hyp
import hypothesis.strategies as st
from numpy.testing import assert_allclose

from qran import propagator, quantum, strategies, utils

def rabiPlant(omega: float):
	"""
	A constant coupling Omega sigma_x on [0, 1]
	"""
	spec = strategies.strategySpec("resonance", omega0=omega, grid=propagator.timeGrid(0, 1, 64))
	return spec, strategies.buildPlant(spec)


class TestTimeGrid:
	def test_valid(self):
		grid = propagator.timeGrid(-2, 2, 8)
		assert grid.steps == 8 and propagator.spacing(grid) == 0.5
		assert propagator.points(grid).tolist() == [-2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5, 2]
		assert_allclose(propagator.midpoints(grid), np.arange(-1.75, 2, 0.5))

	@pytest.mark.parametrize("start,end,steps", [(1, 0, 10), (0, 0, 10), (0, 1, 0), (0, 1, 2.5), (math.nan, 1, 4),
	                                             (0, math.inf, 4)])
	def test_invalid(self, start, end, steps):
		with pytest.raises(utils.InvalidInputError):
			propagator.timeGrid(start, end, steps)


class TestPropagate:
	@pytest.mark.parametrize("omega,T", [(1.0, 1.0), (0.3, 2.5), (2.0, 0.7)])
	def test_constant_coupling_is_exact(self, omega, T):
		spec, system = rabiPlant(omega)
		trajectory = propagator.propagate(system, (omega, 1.0), quantum.QuantumState.basis(0), spec.grid, T)
		s = propagator.points(spec.grid)
		assert_allclose(np.abs(trajectory.amplitudes[:, 1])**2, np.sin(omega * T * s)**2, rtol=0, atol=1e-12)

	def test_trajectory_shape(self):
		spec, system = rabiPlant(1.0)
		trajectory = propagator.propagate(system, (1.0, 1.0), quantum.QuantumState.basis(0), spec.grid, 1.0)
		assert len(trajectory) == spec.grid.steps + 1
		assert trajectory.frame is utils.Frame.DIABATIC
		assert trajectory[0] == quantum.QuantumState.basis(0)
		assert len(trajectory.states) == len(trajectory)
		with pytest.raises(ValueError):
			trajectory.amplitudes[0, 0] = 0

	def test_preserves_norm(self):
		spec = strategies.strategySpec("allen-eberly", delta0=1.5, omega0=0.7)
		psi0 = quantum.QuantumState.normalized([1, 1j])
		trajectory = propagator.propagate(strategies.buildPlant(spec), (1.5, 0.7), psi0, spec.grid, 3.0)
		assert trajectory.normDefect() <= 1e-10

	@pytest.mark.parametrize("kind", ["landau-zener", "allen-eberly", "resonance"])
	def test_final_state_matches_trajectory(self, kind):
		spec = strategies.strategySpec(kind, delta0=1.2, omega0=0.9, T=2.0)
		system, theta = strategies.buildPlant(spec), strategies.nominalTheta(spec)
		psi0 = quantum.QuantumState.basis(0)
		final = propagator.finalState(system, theta, psi0, spec.grid, 2.0)
		assert_allclose(final.amplitudes, propagator.propagate(system, theta, psi0, spec.grid, 2.0).final.amplitudes,
		                rtol=0, atol=1e-11)

	def test_ordered_product_odd_lengths(self):
		rng = np.random.default_rng(1)
		for count in (1, 2, 3, 7, 12):
			steps = quantum.pauliExponentials(rng.normal(size=(count, 4)), 0.3)
			assert_allclose(propagator.orderedProduct(steps), quantum.prefixProducts(steps)[-1], atol=1e-13)

	def test_rejects_bad_input(self):
		spec, system = rabiPlant(1.0)
		with pytest.raises(utils.InvalidInputError):
			propagator.propagate(system, (1.0, 1.0), quantum.QuantumState.basis(0, 3), spec.grid, 1.0)
		with pytest.raises(utils.InvalidInputError):
			propagator.finalState(system, (1.0, 1.0), quantum.QuantumState.basis(0), spec.grid, 0.0)

	def test_step_halving(self):
		"""
		The midpoint exponential rule converges at second order
		"""
		spec = strategies.strategySpec("allen-eberly", delta0=1, omega0=0.8)
		system = strategies.buildPlant(spec)
		psi0 = quantum.QuantumState.basis(0)
		finals = [propagator.finalState(system, (1, 0.8), psi0, propagator.timeGrid(-8, 8, N), 2.0).amplitudes
		          for N in (500, 1000, 2000)]
		ratio = np.linalg.norm(finals[0] - finals[1]) / np.linalg.norm(finals[1] - finals[2])
		assert 3 <= ratio <= 5


class TestAdiabaticFrame:
	def test_diagonalizes(self):
		frame = propagator.adiabaticFrameAt(3, 4)
		assert frame.energy == 5
		assert frame.mixingAngle == pytest.approx(0.5 * math.atan2(4, 3))
		U = frame.rotation.entries
		H = np.array([[3, 4], [4, -3]])
		assert_allclose(U.conj().T @ H @ U, np.diag([5, -5]), atol=1e-12)

	@pytest.mark.parametrize("delta,omega", [(1, 0), (-1, 0), (0, 2), (-0.5, 0.25), (2, -1)])
	def test_diagonalizes_everywhere(self, delta, omega):
		frame = propagator.adiabaticFrameAt(delta, omega)
		U = frame.rotation.entries
		H = np.array([[delta, omega], [omega, -delta]])
		assert_allclose(U.conj().T @ H @ U, np.diag([frame.energy, -frame.energy]), atol=1e-12)

	def test_axes(self):
		frame = propagator.adiabaticFrameAt(1, 0)
		assert frame.mixingAngle == 0 and frame.energy == 1
		assert_allclose(frame.rotation.entries, np.eye(2), atol=0)
		frame = propagator.adiabaticFrameAt(0, 1)
		assert frame.mixingAngle == pytest.approx(math.pi / 4) and frame.energy == 1

	def test_gamma_examples(self):
		assert propagator.gammaCoupling(1, 0, 0, 1) == 0.5
		assert propagator.gammaCoupling(2, 1, 4, 2) == 0

	def test_degenerate(self):
		with pytest.raises(utils.DegeneratePointError):
			propagator.adiabaticFrameAt(0, 0)
		with pytest.raises(utils.DegeneratePointError):
			propagator.gammaCoupling(0, 0, 1, 1)

	def test_gamma_at_allen_eberly_center(self):
		controls = strategies.aeControls(1, 1)
		args = [float(f(0.0)) for f in controls]
		assert propagator.gammaCoupling(*args) == pytest.approx(-0.5)

	@pytest.mark.parametrize("s", [-1.3, 0.0, 0.7, 2.5])
	def test_gamma_is_derivative_of_mixing_angle(self, s):
		controls = strategies.aeControls(2, 1)
		eta = lambda x: 0.5 * np.arctan2(controls.omega(x), controls.delta(x))
		h = 1e-5
		numeric = (eta(s + h) - eta(s - h)) / (2 * h)
		assert propagator.gammaCoupling(*[float(f(s)) for f in controls]) == pytest.approx(numeric, abs=1e-8)

	def test_degenerate_path(self):
		spec = strategies.strategySpec("custom", envelope="linear", detuningEnvelope="linear")
		controls = strategies.twoLevelControls(spec)
		with pytest.raises(utils.DegeneratePointError) as info:
			propagator.frameRotations(controls, [-1.0, 0.0, 1.0])
		assert info.value.s == 0
		with pytest.raises(utils.DegeneratePointError):
			propagator.propagateAdiabatic(controls, quantum.QuantumState.basis(0), propagator.timeGrid(-1, 1, 4), 1.0)

	def test_round_trip_at_start(self):
		controls = strategies.aeControls(1, 0.6)
		psi0 = quantum.QuantumState.normalized([1, 0.5j])
		trajectory = propagator.propagateAdiabatic(controls, psi0, propagator.timeGrid(-8, 8, 100), 1.0)
		assert trajectory.frame is utils.Frame.ADIABATIC
		diabatic = propagator.toDiabatic(trajectory, controls)
		assert_allclose(diabatic.amplitudes[0], psi0.amplitudes, atol=1e-14)
		assert propagator.toDiabatic(diabatic, controls) is diabatic

	def test_frozen_controls_only_change_phases(self):
		controls = strategies.twoLevelControls(strategies.strategySpec("custom", delta0=0.8, omega0=0.3,
		                                                               envelope="constant", detuningEnvelope="constant"))
		psi0 = quantum.QuantumState.normalized([2, 1j])
		trajectory = propagator.propagateAdiabatic(controls, psi0, propagator.timeGrid(-2, 2, 64), 3.0)
		magnitudes = np.abs(trajectory.amplitudes)
		assert_allclose(magnitudes, np.broadcast_to(magnitudes[0], magnitudes.shape), atol=1e-13)

	@hyp.settings(max_examples=30, deadline=None)
	@hyp.given(st.floats(min_value=0.2, max_value=3), st.floats(min_value=0.2, max_value=3),
	           st.floats(min_value=0.1, max_value=10))
	def test_adiabatic_norm(self, delta0, omega0, T):
		trajectory = propagator.propagateAdiabatic(strategies.aeControls(delta0, omega0), quantum.QuantumState.basis(0),
		                                           propagator.timeGrid(-8, 8, 400), T)
		assert trajectory.normDefect() <= 1e-12

	def test_leakage_vanishes_for_slow_sweeps(self):
		leakage = propagator.adiabaticLeakage(strategies.aeControls(1, 1), quantum.QuantumState.basis(0),
		                                      propagator.timeGrid(-12, 12, 12000), 20.0)
		assert leakage <= 1e-10
