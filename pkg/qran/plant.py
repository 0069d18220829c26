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
The bilinear control model H(t) = H0 + sum_j Hj u_j(theta, t), its parametrized control
functions, parameter boxes, and the rewriting that moves control-parameter uncertainty
into the drift Hamiltonian.

Types:
	- ControlFunction: a deterministic, picklable u_j(theta, t)
	- Plant: the tuple (H0, H1..Hm) with its control functions
	- ParameterBox: a closed box standing in for the open parameter set
"""

import typing
import numpy as np
from . import quantum, utils

Envelope = typing.Callable[..., typing.Union[float, np.ndarray]]

class ControlFunction():
	"""
	A control u_j(theta, t).

	`func` must be a module-level function (so that plants can be shipped to sweep workers)
	called as `func(theta, t, *args)`; it must accept either a scalar or a numpy array of
	times and return a real value of the same shape.

	Instance Variables:
	 - name: str -- what the control drives (e.g. 'detuning')
	 - envelope: str -- identifier of the envelope shape (e.g. 'tanh')
	"""

	def __init__(self, name: str, envelope: str, func: Envelope, args: tuple = ()):
		self.name = name
		self.envelope = envelope
		self.func = func
		self.args = tuple(args)

	def evaluate(self, theta: typing.Sequence[float], t: typing.Union[float, np.ndarray]):
		"""
		Returns u(theta, t); `t` may be an array, in which case an array is returned
		"""
		return self.func(np.asarray(theta, dtype=float), t, *self.args)

	__call__ = evaluate

	def __repr__(self) -> str:
		return "ControlFunction(name=%s, envelope=%s, args=%r)" % (self.name, self.envelope, self.args)


def frozenControl(theta: np.ndarray, t: typing.Union[float, np.ndarray],
                  original: ControlFunction, thetaStar: typing.Tuple[float, ...]):
	"""
	A control whose parameters are pinned at `thetaStar`, whatever `theta` is passed
	"""
	return original.evaluate(thetaStar, t)


ParameterBox = typing.NamedTuple('ParameterBox', [('lower', typing.Tuple[float, ...]),
                                                  ('upper', typing.Tuple[float, ...])])

def parameterBox(lower: typing.Sequence[float], upper: typing.Sequence[float]) -> ParameterBox:
	"""
	Builds a ParameterBox, checking that every lower bound lies strictly below its upper bound.

	Raises an InvalidInputError otherwise.
	"""
	lower, upper = tuple(float(x) for x in lower), tuple(float(x) for x in upper)
	if len(lower) != len(upper) or not lower:
		raise utils.InvalidInputError("box bounds must be non-empty and of equal length (%d, %d)" %\
		                              (len(lower), len(upper)))
	if not utils.finite(lower + upper):
		raise utils.InvalidInputError("box bounds must be finite")
	for k, (lo, hi) in enumerate(zip(lower, upper)):
		if not lo < hi:
			raise utils.InvalidInputError("box axis %d: lower bound %r is not below upper bound %r" %\
			                              (k, lo, hi))
	return ParameterBox(lower, upper)

def boxAxes(box: ParameterBox, resolution: typing.Sequence[int]) -> typing.List[np.ndarray]:
	"""
	Returns the inclusive sample points along each axis of `box`.

	An axis with resolution 1 is sampled at its midpoint.
	"""
	if len(resolution) != len(box.lower):
		raise utils.InvalidInputError("resolution has %d axes, box has %d" %\
		                              (len(resolution), len(box.lower)))
	axes = []
	for lo, hi, num in zip(box.lower, box.upper, resolution):
		if num < 1:
			raise utils.InvalidInputError("resolution must be positive, got %d" % num)
		axes.append(np.array([(lo + hi) / 2]) if num == 1 else np.linspace(lo, hi, num))
	return axes


class Plant():
	"""
	The quantum "plant" P = (H0, H1, ..., Hm) together with its controls u_1..u_m.

	A plant produced by `perturbedPlant` additionally carries the data of its uncertainty
	term, so that its drift becomes H0 + DeltaH_u(theta, t) (see `driftStack`).

	Instance Variables:
	 - drift: quantum.HermitianOperator -- H0
	 - controlOps: List[quantum.HermitianOperator] -- H1..Hm
	 - controlFns: List[ControlFunction] -- u_1..u_m
	 - perturbation: Optional[Tuple[Plant, tuple, tuple]] -- (original, theta, thetaStar)
	"""

	def __init__(self,
	             drift: quantum.HermitianOperator,
	             controlOps: typing.Sequence[quantum.HermitianOperator],
	             controlFns: typing.Sequence[ControlFunction],
	             perturbation: typing.Tuple['Plant', tuple, tuple] = None):
		if len(controlOps) != len(controlFns):
			raise utils.InvalidInputError("%d control operators but %d control functions" %\
			                              (len(controlOps), len(controlFns)))
		for j, op in enumerate(controlOps):
			if len(op) != len(drift):
				raise utils.InvalidInputError("control operator %d has dimension %d, drift has %d" %\
				                              (j + 1, len(op), len(drift)))

		self.drift = drift
		self.controlOps = tuple(controlOps)
		self.controlFns = tuple(controlFns)
		self.perturbation = perturbation

		# stacked once so that time-batched evaluation is a single tensor contraction
		self.stackedOps = np.array([op.entries for op in self.controlOps], dtype=complex)\
		                  .reshape(len(self.controlOps), len(drift), len(drift))

	def __len__(self) -> int:
		"""
		Returns the dimension n shared by all of the plant's operators
		"""
		return len(self.drift)

	def __repr__(self) -> str:
		return "Plant(n=%d, controls=%r, perturbed=%s)" %\
		       (len(self), [f.name for f in self.controlFns], self.perturbation is not None)

	def controlValues(self, theta: typing.Sequence[float], ts: np.ndarray) -> np.ndarray:
		"""
		Evaluates every control at the times `ts`; returns shape (m, len(ts)).

		Raises an EvaluationError naming the first control that produces a non-finite value.
		"""
		ts = np.atleast_1d(np.asarray(ts, dtype=float))
		values = np.empty((len(self.controlFns), ts.size))
		for j, fn in enumerate(self.controlFns):
			values[j] = np.broadcast_to(np.asarray(fn.evaluate(theta, ts), dtype=float), ts.shape)
			bad = ~np.isfinite(values[j])
			if bad.any():
				t = float(ts[np.argmax(bad)])
				raise utils.EvaluationError("control %d (%s) is not finite at t=%r" % (j + 1, fn.name, t),
				                            index=j + 1,
				                            t=t)
		return values

	def driftStack(self, ts: np.ndarray) -> np.ndarray:
		"""
		Returns the drift at each of the times `ts`, shape (len(ts), n, n)
		"""
		ts = np.atleast_1d(np.asarray(ts, dtype=float))
		out = np.broadcast_to(self.drift.entries, (ts.size, len(self), len(self))).copy()
		if self.perturbation is not None:
			original, theta, thetaStar = self.perturbation
			out += uncertaintyStack(original, theta, thetaStar, ts)
		return out

	def hamiltonianStack(self, theta: typing.Sequence[float], ts: np.ndarray) -> np.ndarray:
		"""
		Returns H(theta, t) at each of the times `ts`, shape (len(ts), n, n)
		"""
		values = self.controlValues(theta, ts)
		return self.driftStack(ts) + np.einsum('jt,jab->tab', values, self.stackedOps)


def uncertaintyStack(plant: Plant, theta: typing.Sequence[float],
                     thetaStar: typing.Sequence[float], ts: np.ndarray) -> np.ndarray:
	"""
	Returns DeltaH_u(theta, t) = sum_j Hj (u_j(theta, t) - u_j(thetaStar, t)) at each of the
	times `ts`, shape (len(ts), n, n)
	"""
	delta = plant.controlValues(theta, ts) - plant.controlValues(thetaStar, ts)
	return np.einsum('jt,jab->tab', delta, plant.stackedOps)

def _checkTheta(theta: typing.Sequence[float]):
	if not utils.finite(theta):
		raise utils.InvalidInputError("parameters must be finite: %r" % (tuple(theta),))

def hamiltonianAt(plant: Plant, theta: typing.Sequence[float], t: float) -> quantum.HermitianOperator:
	"""
	Returns H(t) = H0 + sum_j u_j(theta, t) Hj
	"""
	_checkTheta(theta)
	return quantum.HermitianOperator(plant.hamiltonianStack(theta, [t])[0])

def transferUncertainty(plant: Plant,
                        theta: typing.Sequence[float],
                        thetaStar: typing.Sequence[float],
                        t: float) -> quantum.HermitianOperator:
	"""
	Returns the uncertainty term DeltaH_u(theta) = sum_j Hj (u_j(theta, t) - u_j(thetaStar, t)),
	so that H(theta, t) = (H0 + DeltaH_u(theta)) + sum_j Hj u_j(thetaStar, t).
	"""
	_checkTheta(theta)
	_checkTheta(thetaStar)
	return quantum.HermitianOperator(uncertaintyStack(plant, theta, thetaStar, [t])[0])

def perturbedPlant(plant: Plant,
                   theta: typing.Sequence[float],
                   thetaStar: typing.Sequence[float]) -> Plant:
	"""
	Returns the plant (H0 + DeltaH_u(theta), H1, ..., Hm) driven by the nominal controls.

	The uncertainty term generally depends on t through the envelopes, so it is kept as a
	time-varying drift rather than a constant matrix. The returned plant's controls are
	frozen at `thetaStar`: whatever parameters it is evaluated with, its Hamiltonian equals
	that of `plant` at `theta`.
	"""
	_checkTheta(theta)
	_checkTheta(thetaStar)
	theta, thetaStar = tuple(float(x) for x in theta), tuple(float(x) for x in thetaStar)

	utils.log("plant.perturbedPlant: theta", theta, "nominal", thetaStar)

	frozen = [ControlFunction(fn.name, fn.envelope, frozenControl, (fn, thetaStar))
	          for fn in plant.controlFns]
	if theta == thetaStar:
		return Plant(plant.drift, plant.controlOps, frozen)
	return Plant(plant.drift, plant.controlOps, frozen, (plant, theta, thetaStar))

utils.log("'plant' module: Loaded")
