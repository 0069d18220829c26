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
Error probabilities, parameter-box sweeps, epsilon-robustness sets and the epsilon-robust
verdict.

A strategy is epsilon-robust over a parameter set when every parameter value in it keeps the
error probability P_err = 1 - |<psi1|psi(T, theta)>|^2 at or below epsilon. Here the set is a
closed box sampled on an inclusive grid, so the verdict is a necessary condition at the
sampled resolution, never a certificate for the continuum.

Types:
	- ErrorMap: P_err over the grid of a ParameterBox, plus the failed cells
	- RobustnessReport: the summary of an ErrorMap against a threshold epsilon
"""

import math
import multiprocessing
import typing
import numpy as np
from . import plant, propagator, quantum, strategies, utils

RobustnessReport = typing.NamedTuple('RobustnessReport',
                   [('epsilon', float),
                    ('insideFraction', float),
                    ('isRobust', bool),
                    ('worstTheta', typing.Tuple[float, ...]),
                    ('worstPerr', float),
                    ('resolution', typing.Tuple[int, ...]),
                    ('failedCells', int)])


class ErrorMap():
	"""
	Error probabilities over the inclusive grid of a parameter box.

	Instance Variables:
	 - box: plant.ParameterBox -- the sampled box
	 - resolution: Tuple[int, ...] -- points per axis
	 - axes: List[np.ndarray] -- sample points per axis (box corners included)
	 - values: np.ndarray -- P_err per cell, shape `resolution`, NaN for failed cells
	 - T: float -- the horizon the map was computed at
	 - strategy: str -- descriptor of the strategy
	 - errors: List[Tuple[Tuple[int, ...], str]] -- (cell index, message) for failed cells
	"""

	def __init__(self,
	             box: plant.ParameterBox,
	             resolution: typing.Sequence[int],
	             values: np.ndarray,
	             T: float,
	             strategy: str,
	             errors: typing.List[typing.Tuple[typing.Tuple[int, ...], str]] = None):
		self.box = box
		self.resolution = tuple(int(r) for r in resolution)
		self.axes = plant.boxAxes(box, self.resolution)
		values = np.asarray(values, dtype=float).reshape(self.resolution)

		# tiny excursions outside [0, 1] are floating-point noise
		self.values = np.where(np.isnan(values), values, np.clip(values, 0.0, 1.0))
		self.values.flags.writeable = False
		self.T = T
		self.strategy = strategy
		self.errors = list(errors or [])

	def __len__(self) -> int:
		"""
		Returns the number of cells in the map
		"""
		return self.values.size

	def __bool__(self) -> bool:
		return len(self) > 0

	def __repr__(self) -> str:
		return "ErrorMap(box=%r, resolution=%r, T=%r, strategy=%s, failed=%d)" %\
		       (self.box, self.resolution, self.T, self.strategy, len(self.errors))

	def theta(self, index: typing.Sequence[int]) -> typing.Tuple[float, ...]:
		"""
		Returns the parameter vector at the cell `index`
		"""
		return tuple(float(axis[i]) for axis, i in zip(self.axes, index))

	def cells(self) -> typing.Generator[typing.Tuple[typing.Tuple[int, ...], typing.Tuple[float, ...]], None, None]:
		"""
		Yields (index, theta) for every cell in row-major (lexicographic) order
		"""
		for index in np.ndindex(*self.resolution):
			yield index, self.theta(index)

	@property
	def failed(self) -> bool:
		"""
		Whether any cell could not be evaluated
		"""
		return bool(np.isnan(self.values).any())


def errorProbability(final: quantum.QuantumState, target: quantum.QuantumState) -> float:
	"""
	Returns P_err = 1 - |<target|final>|^2, clamped to [0, 1]
	"""
	return utils.clampProbability(1.0 - abs(quantum.overlap(target, final))**2)


class CellEvaluator():
	"""
	Propagates one strategy at a given parameter vector and scores the final state.

	Instances are picklable, so a pool of worker processes can share one evaluator.
	"""

	def __init__(self,
	             spec: strategies.StrategySpec,
	             psi0: quantum.QuantumState,
	             psi1: quantum.QuantumState):
		self.spec = spec
		self.psi0 = psi0
		self.psi1 = psi1
		self.plant = strategies.buildPlant(spec)

	def __call__(self, cell: typing.Tuple[int, typing.Tuple[float, ...]]) -> typing.Tuple[int, float, str]:
		"""
		Evaluates a (flat index, theta) cell, returning (flat index, P_err, error message)
		"""
		index, theta = cell
		try:
			final = propagator.finalState(self.plant, theta, self.psi0, self.spec.grid, self.spec.T)
			return index, errorProbability(final, self.psi1), ''
		except (utils.QranException, ArithmeticError, ValueError) as e:
			return index, math.nan, "%s: %s" % (type(e).__name__, e)

def _evaluateCells(evaluator: typing.Callable[[typing.Tuple[int, typing.Tuple[float, ...]]], typing.Tuple[int, float, str]],
                   cells: typing.List[typing.Tuple[int, typing.Tuple[float, ...]]],
                   workers: int) -> typing.List[typing.Tuple[int, float, str]]:
	"""
	Runs `evaluator` on every cell, in `workers` processes when that is worth it
	"""
	workers = max(1, min(workers, len(cells)))
	if workers == 1:
		return [evaluator(cell) for cell in cells]

	utils.log("robustness._evaluateCells: splitting", len(cells), "cells over", workers, "processes")

	pool = multiprocessing.Pool(processes=workers)
	try:
		results = pool.map_async(evaluator,
		                         cells,
		                         chunksize=max(1, len(cells) // (4 * workers)),
		                         error_callback=utils.log).get()
		pool.close()
	except:
		pool.terminate()
		raise
	finally:
		pool.join()
	return results

def _assemble(box: plant.ParameterBox,
              resolution: typing.Sequence[int],
              results: typing.List[typing.Tuple[int, float, str]],
              T: float,
              descriptor: str) -> ErrorMap:
	"""
	Writes cell results into a preallocated grid by index, so their order does not matter
	"""
	resolution = tuple(resolution)
	values = np.full(int(np.prod(resolution)), math.nan)
	errors = []
	for index, value, message in results:
		values[index] = value
		if message:
			errors.append((tuple(int(i) for i in np.unravel_index(index, resolution)), message))
	errors.sort()
	return ErrorMap(box, resolution, values.reshape(resolution), T, descriptor, errors)

def _flatCells(box: plant.ParameterBox, resolution: typing.Sequence[int]) -> typing.List[typing.Tuple[int, typing.Tuple[float, ...]]]:
	axes = plant.boxAxes(box, resolution)
	return [(flat, tuple(float(axis[i]) for axis, i in zip(axes, index)))
	        for flat, index in enumerate(np.ndindex(*tuple(resolution)))]

def sweep(spec: strategies.StrategySpec,
          box: plant.ParameterBox,
          resolution: typing.Sequence[int],
          T: float,
          psi0: quantum.QuantumState,
          psi1: quantum.QuantumState,
          workers: int = 1) -> ErrorMap:
	"""
	Propagates the strategy at every grid point of `box` and records its error probability.

	Cells are independent; with `workers` > 1 they are spread over a process pool. Failed
	cells become NaN and their messages are kept in `ErrorMap.errors`; the sweep never aborts
	on them.
	"""
	if len(box.lower) != 2:
		raise utils.InvalidInputError("built-in strategies take 2 parameters, box has %d" % len(box.lower))
	if not math.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))

	# the landau-zener detuning depends on T itself
	spec = spec._replace(T=float(T))

	cells = _flatCells(box, resolution)
	utils.log("robustness.sweep:", strategies.describe(spec), "over", box, "at", tuple(resolution),
	          "T =", T, "workers =", workers)

	results = _evaluateCells(CellEvaluator(spec, psi0, psi1), cells, workers)
	return _assemble(box, resolution, results, float(T), strategies.describe(spec))

def analyticSweep(spec: strategies.StrategySpec,
                  box: plant.ParameterBox,
                  resolution: typing.Sequence[int],
                  T: float) -> ErrorMap:
	"""
	Same grid as `sweep`, with values from the strategy's closed form.

	Raises an UnsupportedError for custom strategies. Cells where the closed form is undefined
	(e.g. delta0 = 0 for landau-zener) become NaN.
	"""
	if not spec.kind.hasClosedForm:
		raise utils.UnsupportedError("no closed form for %s strategies" % spec.kind)

	results = []
	for flat, theta in _flatCells(box, resolution):
		try:
			results.append((flat, strategies.analyticPerr(spec, theta, T), ''))
		except (utils.InvalidInputError, ArithmeticError) as e:
			results.append((flat, math.nan, str(e)))
	return _assemble(box, resolution, results, float(T), "analytic " + str(spec.kind))

def robustnessSet(errorMap: ErrorMap, epsilon: float) -> typing.Tuple[np.ndarray, RobustnessReport]:
	"""
	Returns the indicator of R_eps = {theta | P_err(theta, T) <= eps} over the map's grid,
	along with its report.

	The verdict `isRobust` holds iff every sampled cell is inside; NaN cells are never inside
	and always spoil the verdict.
	"""
	if not 0 <= epsilon < 1:
		raise utils.InvalidInputError("epsilon must lie in [0, 1), got %r" % (epsilon,))

	values = errorMap.values
	with np.errstate(invalid='ignore'):
		inside = values <= epsilon
	failed = int(np.isnan(values).sum())

	if failed < len(errorMap):
		index = np.unravel_index(int(np.nanargmax(values)), values.shape)
		worstTheta, worstPerr = errorMap.theta(index), float(values[index])
	else:
		worstTheta, worstPerr = (), math.nan

	report = RobustnessReport(float(epsilon),
	                          float(inside.sum()) / len(errorMap),
	                          bool(inside.all()),
	                          worstTheta,
	                          worstPerr,
	                          errorMap.resolution,
	                          failed)
	utils.log("robustness.robustnessSet:", report)
	return inside, report

def worstCase(errorMap: ErrorMap) -> typing.Tuple[typing.Tuple[float, ...], float]:
	"""
	Returns the grid point with the largest error probability and that value; ties go to the
	first cell in lexicographic order.

	Raises an InvalidInputError if any cell failed.
	"""
	if not errorMap:
		raise utils.InvalidInputError("empty error map")
	if errorMap.failed:
		raise utils.InvalidInputError("error map has %d failed cells" % int(np.isnan(errorMap.values).sum()))

	index = np.unravel_index(int(np.argmax(errorMap.values)), errorMap.values.shape)
	return errorMap.theta(index), float(errorMap.values[index])

def intrinsicRobustness(spec: strategies.StrategySpec,
                        box: plant.ParameterBox,
                        resolution: typing.Sequence[int],
                        epsilon: float,
                        horizons: typing.Sequence[float]) -> typing.Optional[float]:
	"""
	Returns the first horizon in `horizons` (taken in increasing order) at which the strategy's
	closed-form error map over `box` is epsilon-robust, or None if none of them is.
	"""
	for T in sorted(horizons):
		_, report = robustnessSet(analyticSweep(spec, box, resolution, T), epsilon)
		if report.isRobust:
			utils.log("robustness.intrinsicRobustness: robust from T =", T)
			return float(T)
	return None

utils.log("'robustness' module: Loaded")
