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
Integrates the (scaled-time) Schroedinger equation  i d/ds |psi> = T H(s) |psi>  over a
uniform grid with the midpoint exponential rule (second-order Magnus):

	psi_{k+1} = exp(-i T H(s_k + h/2) h) psi_k

Every step is exactly unitary, so norm is preserved unconditionally; accuracy is bought
with steps.

For two-level strategies H(s) = Delta(s) sigma_z + Omega(s) sigma_x, this module also
provides the adiabatic frame: the rotation U(s) that diagonalizes H(s), the energy
epsilon(s) = sqrt(Delta^2 + Omega^2), the mixing angle eta(s) = atan2(Omega, Delta)/2, its
derivative gamma(s), and integration of |phi> = U^dagger |psi>, which obeys

	i d/ds |phi> = [[T eps, i gamma], [-i gamma, -T eps]] |phi>
"""

import typing
import numpy as np
from . import plant, quantum, utils

TimeGrid = typing.NamedTuple('TimeGrid', [('s_start', float), ('s_end', float), ('steps', int)])

# Detuning and coupling of a two-level strategy, with exact derivatives, as vectorized
# functions of scaled time
TwoLevelControls = typing.NamedTuple('TwoLevelControls',
                   [('delta', typing.Callable[[np.ndarray], np.ndarray]),
                    ('omega', typing.Callable[[np.ndarray], np.ndarray]),
                    ('ddelta', typing.Callable[[np.ndarray], np.ndarray]),
                    ('domega', typing.Callable[[np.ndarray], np.ndarray])])

AdiabaticFrame = typing.NamedTuple('AdiabaticFrame',
                 [('rotation', quantum.UnitaryOperator),
                  ('energy', float),
                  ('mixingAngle', float)])

def timeGrid(s_start: float, s_end: float, steps: int) -> TimeGrid:
	"""
	Builds a TimeGrid, raising an InvalidInputError unless s_start < s_end and steps >= 1
	"""
	if not utils.finite((s_start, s_end)) or not s_start < s_end:
		raise utils.InvalidInputError("grid needs finite s_start < s_end, got [%r, %r]" % (s_start, s_end))
	if int(steps) != steps or steps < 1:
		raise utils.InvalidInputError("grid needs a positive integer number of steps, got %r" % (steps,))
	return TimeGrid(float(s_start), float(s_end), int(steps))

def spacing(grid: TimeGrid) -> float:
	"""
	Returns the uniform step h of the grid
	"""
	return (grid.s_end - grid.s_start) / grid.steps

def points(grid: TimeGrid) -> np.ndarray:
	"""
	Returns the steps+1 grid points, endpoints included
	"""
	return np.linspace(grid.s_start, grid.s_end, grid.steps + 1)

def midpoints(grid: TimeGrid) -> np.ndarray:
	"""
	Returns the midpoint of every grid interval
	"""
	return grid.s_start + (np.arange(grid.steps) + 0.5) * spacing(grid)


class Trajectory():
	"""
	The states visited by a propagation, one per grid point.

	Amplitudes are stored as a single (steps+1, n) array; QuantumState objects are only built
	when asked for.

	Instance Variables:
	 - grid: TimeGrid -- the grid the states live on
	 - amplitudes: np.ndarray -- row k holds the state at grid point k
	 - frame: utils.Frame -- whether the rows are diabatic or adiabatic components
	"""

	def __init__(self, grid: TimeGrid, amplitudes: np.ndarray, frame: utils.Frame):
		self.grid = grid
		self.amplitudes = amplitudes
		self.amplitudes.flags.writeable = False
		self.frame = frame

	def __len__(self) -> int:
		return self.amplitudes.shape[0]

	def __getitem__(self, item: int) -> quantum.QuantumState:
		return quantum.QuantumState(self.amplitudes[item])

	def __iter__(self) -> typing.Iterator[quantum.QuantumState]:
		return (self[k] for k in range(len(self)))

	@property
	def states(self) -> typing.List[quantum.QuantumState]:
		"""
		Every state of the trajectory, in grid order
		"""
		return list(self)

	@property
	def final(self) -> quantum.QuantumState:
		"""
		The state at the end of the grid
		"""
		return self[-1]

	def normDefect(self) -> float:
		"""
		Returns the largest deviation from unit norm over the trajectory
		"""
		return float(np.max(np.abs(np.linalg.norm(self.amplitudes, axis=1) - 1)))

	def __repr__(self) -> str:
		return "Trajectory(grid=%r, frame=%s, n=%d)" % (self.grid, self.frame, self.amplitudes.shape[1])


def _checkPropagation(dimension: int, psi0: quantum.QuantumState, T: float):
	if len(psi0) != dimension:
		raise utils.InvalidInputError("initial state has dimension %d, plant has %d" % (len(psi0), dimension))
	if not np.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))

def stepPropagators(system: plant.Plant, theta: typing.Sequence[float], grid: TimeGrid, T: float) -> np.ndarray:
	"""
	Returns exp(-i T H(s_k + h/2) h) for every interval of the grid, shape (steps, n, n)
	"""
	hamiltonians = system.hamiltonianStack(theta, midpoints(grid))
	return quantum.expmSteps(T * hamiltonians, spacing(grid))

def orderedProduct(steps: np.ndarray) -> np.ndarray:
	"""
	Returns U_{N-1} ... U_1 U_0 by pairwise (tree) reduction of the stack `steps`
	"""
	while steps.shape[0] > 1:
		paired = steps[1::2] @ steps[0:steps.shape[0] - steps.shape[0] % 2:2]
		if steps.shape[0] % 2:
			# the unpaired last step acts after everything before it
			paired = np.concatenate((paired, steps[-1:]))
		steps = paired
	return steps[0]

def propagate(system: plant.Plant,
              theta: typing.Sequence[float],
              psi0: quantum.QuantumState,
              grid: TimeGrid,
              T: float) -> Trajectory:
	"""
	Integrates i d/ds |psi> = T H(theta, s) |psi> from `psi0` over `grid`, returning the state at
	every grid point (diabatic frame).
	"""
	_checkPropagation(len(system), psi0, T)

	cumulative = quantum.prefixProducts(stepPropagators(system, theta, grid, T))
	amplitudes = np.empty((grid.steps + 1, len(psi0)), dtype=complex)
	amplitudes[0] = psi0.amplitudes
	amplitudes[1:] = cumulative @ psi0.amplitudes

	return Trajectory(grid, amplitudes, utils.Frame.DIABATIC)

def finalState(system: plant.Plant,
               theta: typing.Sequence[float],
               psi0: quantum.QuantumState,
               grid: TimeGrid,
               T: float) -> quantum.QuantumState:
	"""
	Same as `propagate(...).final`, without materializing the intermediate states
	"""
	_checkPropagation(len(system), psi0, T)
	return quantum.QuantumState(orderedProduct(stepPropagators(system, theta, grid, T)) @ psi0.amplitudes)


########################################################
###                                                  ###
###                 ADIABATIC FRAME                  ###
###                                                  ###
########################################################

def rotations(mixingAngles: np.ndarray) -> np.ndarray:
	"""
	Returns U = [[cos eta, -sin eta], [sin eta, cos eta]] for every angle, shape (..., 2, 2)
	"""
	c, s = np.cos(mixingAngles), np.sin(mixingAngles)
	return np.stack((np.stack((c, -s), axis=-1), np.stack((s, c), axis=-1)), axis=-2).astype(complex)

def adiabaticFrameAt(delta: float, omega: float) -> AdiabaticFrame:
	"""
	Returns the rotation U that diagonalizes H = [[delta, omega], [omega, -delta]] into
	diag(eps, -eps), along with eps = sqrt(delta^2 + omega^2) and the mixing angle
	eta = atan2(omega, delta) / 2.

	Raises a DegeneratePointError at delta = omega = 0, where the angle is undefined.
	"""
	if not utils.finite((delta, omega)):
		raise utils.InvalidInputError("detuning and coupling must be finite")
	if delta == 0 and omega == 0:
		raise utils.DegeneratePointError("mixing angle undefined at delta = omega = 0")

	eta = 0.5 * np.arctan2(omega, delta)
	return AdiabaticFrame(quantum.UnitaryOperator(rotations(eta)), float(np.hypot(delta, omega)), float(eta))

def gammaCoupling(delta: float, omega: float, ddelta: float, domega: float) -> float:
	"""
	Returns gamma = d(eta)/ds = (delta domega - omega ddelta) / (2 (delta^2 + omega^2)), the
	non-adiabatic coupling between the adiabatic states.
	"""
	if delta == 0 and omega == 0:
		raise utils.DegeneratePointError("gamma undefined at delta = omega = 0")
	return 0.5 * (delta * domega - omega * ddelta) / (delta**2 + omega**2)

def _checkNonDegenerate(controls: TwoLevelControls, s: np.ndarray):
	"""
	Raises a DegeneratePointError naming the first s at which both controls vanish
	"""
	degenerate = (controls.delta(s) == 0) & (controls.omega(s) == 0)
	if np.any(degenerate):
		where = float(s[np.argmax(degenerate)])
		raise utils.DegeneratePointError("adiabatic frame undefined at s=%r (delta = omega = 0)" % where,
		                                 s=where)

def frameRotations(controls: TwoLevelControls, s: np.ndarray) -> np.ndarray:
	"""
	Returns U(s) at every point of `s`, shape (len(s), 2, 2)
	"""
	s = np.atleast_1d(np.asarray(s, dtype=float))
	_checkNonDegenerate(controls, s)
	delta = np.broadcast_to(controls.delta(s), s.shape)
	omega = np.broadcast_to(controls.omega(s), s.shape)
	return rotations(0.5 * np.arctan2(omega, delta))

def adiabaticGenerators(controls: TwoLevelControls, s: np.ndarray, T: float) -> np.ndarray:
	"""
	Returns the Pauli coefficients (0, 0, -gamma, T eps) of the adiabatic-frame generator at
	every point of `s`, shape (len(s), 4)
	"""
	delta = np.broadcast_to(controls.delta(s), s.shape).astype(float)
	omega = np.broadcast_to(controls.omega(s), s.shape).astype(float)
	ddelta = np.broadcast_to(controls.ddelta(s), s.shape).astype(float)
	domega = np.broadcast_to(controls.domega(s), s.shape).astype(float)

	energy2 = delta**2 + omega**2
	gamma = 0.5 * (delta * domega - omega * ddelta) / energy2

	coefficients = np.zeros(s.shape + (4,))
	coefficients[..., 2] = -gamma
	coefficients[..., 3] = T * np.sqrt(energy2)
	if not np.all(np.isfinite(coefficients)):
		raise utils.EvaluationError("adiabatic generator is not finite on the grid", index=0)
	return coefficients

def propagateAdiabatic(controls: TwoLevelControls,
                       psi0: quantum.QuantumState,
                       grid: TimeGrid,
                       T: float,
                       initialFrame: utils.Frame = utils.Frame.DIABATIC) -> Trajectory:
	"""
	Integrates the adiabatic-frame equation with the same midpoint exponential rule as
	`propagate`. The returned trajectory holds adiabatic components |phi> = U^dagger |psi>.

	`psi0` is taken in `initialFrame`; a diabatic initial state is rotated into the adiabatic
	frame at s_start first.

	Raises a DegeneratePointError if delta = omega = 0 anywhere on the grid.
	"""
	_checkPropagation(2, psi0, T)
	s, mids = points(grid), midpoints(grid)
	_checkNonDegenerate(controls, s)
	_checkNonDegenerate(controls, mids)

	phi0 = psi0.amplitudes
	if initialFrame is utils.Frame.DIABATIC:
		phi0 = frameRotations(controls, s[:1])[0].conj().T @ phi0

	utils.log("propagator.propagateAdiabatic: T", T, "grid", grid)

	steps = quantum.pauliExponentials(adiabaticGenerators(controls, mids, T), spacing(grid))
	amplitudes = np.empty((grid.steps + 1, 2), dtype=complex)
	amplitudes[0] = phi0
	amplitudes[1:] = quantum.prefixProducts(steps) @ phi0

	return Trajectory(grid, amplitudes, utils.Frame.ADIABATIC)

def toDiabatic(trajectory: Trajectory, controls: TwoLevelControls) -> Trajectory:
	"""
	Rotates an adiabatic-frame trajectory back into the diabatic frame (|psi> = U |phi>)
	"""
	if trajectory.frame is utils.Frame.DIABATIC:
		return trajectory
	U = frameRotations(controls, points(trajectory.grid))
	amplitudes = np.einsum('kab,kb->ka', U, trajectory.amplitudes)
	return Trajectory(trajectory.grid, amplitudes, utils.Frame.DIABATIC)

def adiabaticLeakage(controls: TwoLevelControls,
                     psi0: quantum.QuantumState,
                     grid: TimeGrid,
                     T: float) -> float:
	"""
	Returns the error probability measured between adiabatic states at the window edges.

	The system starts in whichever adiabatic state at s_start overlaps `psi0` most; the
	result is the population left in the other adiabatic state at s_end. Unlike the diabatic
	measurement, this carries no floor from truncating the scaled-time window.
	"""
	phi = frameRotations(controls, [grid.s_start])[0].conj().T @ psi0.amplitudes
	start = int(np.argmax(np.abs(phi)))
	final = propagateAdiabatic(controls, quantum.QuantumState.basis(start), grid, T, utils.Frame.ADIABATIC)
	return utils.clampProbability(1.0 - float(np.abs(final.amplitudes[-1, start])**2))

utils.log("'propagator' module: Loaded")
