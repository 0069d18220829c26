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
Built-in two-level state-flipping strategies and their closed-form error probabilities.

Every strategy drives H(s) = Delta(s) sigma_z + Omega(s) sigma_x in scaled time s = t/T:

	- resonance:     Delta = 0,                Omega = Omega0 Lambda(s) (rescaled to area A)
	- landau-zener:  Delta = (Delta0^2 / T) s, Omega = Omega0
	- allen-eberly:  Delta = Delta0 tanh(s),   Omega = Omega0 sech(s)
	- custom:        Delta = Delta0 Phi(s),    Omega = Omega0 Lambda(s)

Parameters are theta = (Omega0, A) for resonance and theta = (Delta0, Omega0) otherwise.
"""

import functools
import math
import typing
import numpy as np
import scipy.integrate
from . import plant, propagator, quantum, utils

########################################################
###                                                  ###
###                    ENVELOPES                     ###
###                                                  ###
########################################################

def _constant(s):
	return np.ones_like(np.asarray(s, dtype=float))

def _zero(s):
	return np.zeros_like(np.asarray(s, dtype=float))

def _sine(s):
	return np.sin(np.pi * np.asarray(s, dtype=float))

def _dsine(s):
	return np.pi * np.cos(np.pi * np.asarray(s, dtype=float))

def _linear(s):
	return np.asarray(s, dtype=float)

def _tanh(s):
	return np.tanh(s)

def _dtanh(s):
	return 1 / np.cosh(s)**2

def _sech(s):
	return 1 / np.cosh(s)

def _dsech(s):
	return -np.tanh(s) / np.cosh(s)

def _gaussian(s):
	return np.exp(-np.asarray(s, dtype=float)**2)

def _dgaussian(s):
	s = np.asarray(s, dtype=float)
	return -2 * s * np.exp(-s**2)

# name -> (envelope, derivative)
ENVELOPES = {
	"constant": (_constant, _zero),
	"sine": (_sine, _dsine),
	"linear": (_linear, _constant),
	"tanh": (_tanh, _dtanh),
	"sech": (_sech, _dsech),
	"gaussian": (_gaussian, _dgaussian),
}

def envelopeFunctions(name: str) -> typing.Tuple[typing.Callable, typing.Callable]:
	"""
	Returns the (envelope, derivative) pair registered under `name`
	"""
	try:
		return ENVELOPES[name]
	except KeyError as e:
		raise utils.InvalidInputError("unknown envelope '%s' (known: %s)" %\
		                              (name, ', '.join(sorted(ENVELOPES))), e)


########################################################
###                                                  ###
###                 STRATEGY SPECS                   ###
###                                                  ###
########################################################

StrategySpec = typing.NamedTuple('StrategySpec',
               [('kind', utils.StrategyKind),
                ('delta0', float),
                ('omega0', float),
                ('T', float),
                ('grid', propagator.TimeGrid),
                ('envelope', str),
                ('detuningEnvelope', str),
                ('area', float)])

def defaultGrid(kind: utils.StrategyKind,
                steps: int = utils.DEFAULT_STEPS,
                smax: float = utils.DEFAULT_SMAX) -> propagator.TimeGrid:
	"""
	Resonance pulses live on [0, 1]; the sweeping strategies on [-smax, smax]
	"""
	if kind is utils.StrategyKind.RESONANCE:
		return propagator.timeGrid(0.0, 1.0, steps)
	return propagator.timeGrid(-smax, smax, steps)

def strategySpec(kind: typing.Union[str, utils.StrategyKind],
                 delta0: float = 1.0,
                 omega0: float = 1.0,
                 T: float = 1.0,
                 grid: propagator.TimeGrid = None,
                 envelope: str = "constant",
                 detuningEnvelope: str = "tanh",
                 area: float = None) -> StrategySpec:
	"""
	Builds and validates a StrategySpec.

	`area` is only meaningful for resonance, where it defaults to the area of `envelope` over
	the grid (so the envelope is used as-is).
	"""
	try:
		kind = utils.StrategyKind(kind)
	except ValueError as e:
		raise utils.InvalidInputError("unknown strategy kind '%s'" % (kind,), e)

	if not utils.finite((delta0, omega0)) or delta0 < 0 or omega0 < 0:
		raise utils.InvalidInputError("amplitudes must be finite and nonnegative, got delta0=%r omega0=%r" %\
		                              (delta0, omega0))
	if not math.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))

	envelopeFunctions(envelope)
	envelopeFunctions(detuningEnvelope)

	if grid is None:
		grid = defaultGrid(kind)
	if area is None:
		area = pulseArea(envelope, grid) if kind is utils.StrategyKind.RESONANCE else 0.0

	return StrategySpec(kind, float(delta0), float(omega0), float(T), grid, envelope, detuningEnvelope, float(area))

def nominalTheta(spec: StrategySpec) -> typing.Tuple[float, float]:
	"""
	Returns the strategy's own parameter values theta*
	"""
	if spec.kind is utils.StrategyKind.RESONANCE:
		return (spec.omega0, spec.area)
	return (spec.delta0, spec.omega0)

def parameterNames(spec: StrategySpec) -> typing.Tuple[str, str]:
	"""
	Names of the two parameters theta is made of, in order
	"""
	if spec.kind is utils.StrategyKind.RESONANCE:
		return ("omega0", "area")
	return ("delta0", "omega0")

def describe(spec: StrategySpec) -> str:
	"""
	A short descriptor naming the strategy, its envelopes and its grid
	"""
	shape = ''
	if spec.kind is utils.StrategyKind.RESONANCE:
		shape = "(%s)" % spec.envelope
	elif spec.kind is utils.StrategyKind.CUSTOM:
		shape = "(%s, %s)" % (spec.detuningEnvelope, spec.envelope)
	return "%s%s on [%g, %g] x %d" % (spec.kind, shape, spec.grid.s_start, spec.grid.s_end, spec.grid.steps)

def pulseArea(name: str, grid: propagator.TimeGrid, tolerance: float = 1e-10) -> float:
	"""
	Returns the integral of the envelope `name` over the grid's window by composite Simpson
	quadrature, refining the sampling until successive estimates agree to `tolerance`.

	Raises an InvalidInputError if eight halvings of the spacing do not get there.
	"""
	func = envelopeFunctions(name)[0]
	num = max(grid.steps, 2)
	area = scipy.integrate.simpson(func(np.linspace(grid.s_start, grid.s_end, num + 1)),
	                               x=np.linspace(grid.s_start, grid.s_end, num + 1))
	for _ in range(8):
		num *= 2
		x = np.linspace(grid.s_start, grid.s_end, num + 1)
		refined = scipy.integrate.simpson(func(x), x=x)
		if abs(refined - area) <= tolerance:
			return float(refined)
		area = refined
	raise utils.InvalidInputError("Simpson area of envelope '%s' on [%g, %g] did not converge to %g" %\
	                              (name, grid.s_start, grid.s_end, tolerance))


def nominalArea(spec: StrategySpec) -> float:
	"""
	The area A0 of the resonance envelope as given, which the coupling is rescaled against
	"""
	area = pulseArea(spec.envelope, spec.grid)
	if abs(area) < utils.PERR_FLOOR:
		raise utils.InvalidInputError("envelope '%s' has zero area on [%g, %g]" %\
		                              (spec.envelope, spec.grid.s_start, spec.grid.s_end))
	return area


########################################################
###                                                  ###
###                CONTROL FUNCTIONS                 ###
###                                                  ###
########################################################

# These take the parameter vector first and are looked up by module-level name, so plants
# built from them pickle cleanly into sweep workers.

def zeroControl(theta: np.ndarray, s):
	return _zero(s)

def scaledEnvelope(theta: np.ndarray, s, index: int, name: str):
	"""
	theta[index] * envelope(s)
	"""
	return theta[index] * envelopeFunctions(name)[0](s)

def resonanceCoupling(theta: np.ndarray, s, name: str, nominalArea: float):
	"""
	Omega0 (A / A0) Lambda(s): the envelope rescaled so its area over the window is A
	"""
	return theta[0] * theta[1] / nominalArea * envelopeFunctions(name)[0](s)

def lzDetuning(theta: np.ndarray, s, T: float):
	"""
	(Delta0^2 / T) s
	"""
	return theta[0]**2 / T * np.asarray(s, dtype=float)

def controlFunctions(spec: StrategySpec) -> typing.Tuple[plant.ControlFunction, plant.ControlFunction]:
	"""
	Returns the (detuning, coupling) controls u_1(theta, s), u_2(theta, s) of the strategy
	"""
	kind = spec.kind
	if kind is utils.StrategyKind.RESONANCE:
		return (plant.ControlFunction("detuning", "zero", zeroControl),
		        plant.ControlFunction("coupling", spec.envelope, resonanceCoupling,
		                              (spec.envelope, nominalArea(spec))))
	if kind is utils.StrategyKind.LANDAU_ZENER:
		return (plant.ControlFunction("detuning", "linear", lzDetuning, (spec.T,)),
		        plant.ControlFunction("coupling", "constant", scaledEnvelope, (1, "constant")))
	if kind is utils.StrategyKind.ALLEN_EBERLY:
		return (plant.ControlFunction("detuning", "tanh", scaledEnvelope, (0, "tanh")),
		        plant.ControlFunction("coupling", "sech", scaledEnvelope, (1, "sech")))
	return (plant.ControlFunction("detuning", spec.detuningEnvelope, scaledEnvelope, (0, spec.detuningEnvelope)),
	        plant.ControlFunction("coupling", spec.envelope, scaledEnvelope, (1, spec.envelope)))

def buildPlant(spec: StrategySpec) -> plant.Plant:
	"""
	Returns the two-level plant (0, sigma_z, sigma_x) driven by the strategy's controls
	"""
	detuning, coupling = controlFunctions(spec)
	return plant.Plant(quantum.HermitianOperator.zero(2),
	                   [quantum.HermitianOperator(quantum.SIGMA_Z), quantum.HermitianOperator(quantum.SIGMA_X)],
	                   [detuning, coupling])

def _scaled(s, scale: float, name: str, derivative: bool = False):
	return scale * envelopeFunctions(name)[1 if derivative else 0](s)

def _affine(s, slope: float):
	return slope * np.asarray(s, dtype=float)

def _flat(s, value: float):
	return value * _constant(s)

def twoLevelControls(spec: StrategySpec, theta: typing.Sequence[float] = None) -> propagator.TwoLevelControls:
	"""
	Returns Delta(s), Omega(s) and their exact derivatives for the strategy at `theta`
	(default: its nominal parameters)
	"""
	theta = nominalTheta(spec) if theta is None else tuple(theta)
	kind = spec.kind
	partial = functools.partial

	if kind is utils.StrategyKind.RESONANCE:
		scale = theta[0] * theta[1] / nominalArea(spec)
		return propagator.TwoLevelControls(_zero, partial(_scaled, scale=scale, name=spec.envelope),
		                                   _zero, partial(_scaled, scale=scale, name=spec.envelope, derivative=True))
	if kind is utils.StrategyKind.LANDAU_ZENER:
		return lzControls(theta[0], theta[1], spec.T)
	if kind is utils.StrategyKind.ALLEN_EBERLY:
		return aeControls(theta[0], theta[1])
	return propagator.TwoLevelControls(partial(_scaled, scale=theta[0], name=spec.detuningEnvelope),
	                                   partial(_scaled, scale=theta[1], name=spec.envelope),
	                                   partial(_scaled, scale=theta[0], name=spec.detuningEnvelope, derivative=True),
	                                   partial(_scaled, scale=theta[1], name=spec.envelope, derivative=True))

def resonanceControls(omega0: float, name: str = "constant") -> propagator.TwoLevelControls:
	"""
	Delta = 0, Omega(s) = Omega0 Lambda(s) for the envelope Lambda registered as `name`
	"""
	envelopeFunctions(name)
	partial = functools.partial
	return propagator.TwoLevelControls(_zero, partial(_scaled, scale=omega0, name=name),
	                                   _zero, partial(_scaled, scale=omega0, name=name, derivative=True))

def lzControls(delta0: float, omega0: float, T: float) -> propagator.TwoLevelControls:
	"""
	Delta(s) = (Delta0^2 / T) s with a zero crossing at s = 0, Omega(s) = Omega0
	"""
	if not math.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))
	slope = delta0**2 / T
	partial = functools.partial
	return propagator.TwoLevelControls(partial(_affine, slope=slope), partial(_flat, value=omega0),
	                                   partial(_flat, value=slope), _zero)

def aeControls(delta0: float, omega0: float) -> propagator.TwoLevelControls:
	"""
	Delta(s) = Delta0 tanh(s), Omega(s) = Omega0 sech(s), with
	dDelta/ds = Delta0 sech^2(s) and dOmega/ds = -Omega0 sech(s) tanh(s)
	"""
	partial = functools.partial
	return propagator.TwoLevelControls(partial(_scaled, scale=delta0, name="tanh"),
	                                   partial(_scaled, scale=omega0, name="sech"),
	                                   partial(_scaled, scale=delta0, name="tanh", derivative=True),
	                                   partial(_scaled, scale=omega0, name="sech", derivative=True))

def energyAlong(controls: propagator.TwoLevelControls, s: typing.Union[float, np.ndarray]) -> np.ndarray:
	"""
	Returns the eigenvalue eps(s) = sqrt(Delta^2 + Omega^2) along the control path
	"""
	return np.hypot(controls.delta(s), controls.omega(s))

def aeLevelLine(delta0: float, omega0: float) -> bool:
	"""
	Whether the Allen-Eberly path keeps eps(s) constant (Delta0 = Omega0)
	"""
	return delta0 == omega0


########################################################
###                                                  ###
###                  CLOSED FORMS                    ###
###                                                  ###
########################################################

def resonancePerr(T: float, omega0: float, area: float) -> float:
	"""
	cos^2(Omega0 T A)
	"""
	return math.cos(omega0 * T * area)**2

def resonanceZeros(T: float, area: float, k: int) -> float:
	"""
	Returns the k-th zero Omega0* = (k + 1/2) pi / (T A) of the resonance error probability.

	For fixed k the zeros form the hyperbola Omega0 A = (k + 1/2) pi / T.
	"""
	if k < 0 or int(k) != k:
		raise utils.InvalidInputError("zero index must be a nonnegative integer, got %r" % (k,))
	if not math.isfinite(T * area) or T * area <= 0:
		raise utils.InvalidInputError("T * area must be finite and positive, got %r" % (T * area,))
	return (k + 0.5) * math.pi / (T * area)

def resonanceAreaZeros(T: float, omega0: float, k: int) -> float:
	"""
	The dual family: the pulse area A* = (k + 1/2) pi / (T Omega0) that zeroes the error
	"""
	return resonanceZeros(T, omega0, k)

def resonancePmax(omega0Star: float, areaStar: float, beta: float, sigma: float, T: float) -> float:
	"""
	Returns cos^2(T (Omega0* + beta)(A* + sigma)): the largest error probability over the box
	[Omega0* +- beta] x [A* +- sigma], provided sin(2 T Omega0 A) is monotone over the box. The
	box is then epsilon-robust with epsilon = this value.
	"""
	return math.cos(T * (omega0Star + beta) * (areaStar + sigma))**2

def resonanceEpsilonBar(omega0Star: float, areaStar: float, beta: float, sigma: float, T: float) -> float:
	"""
	The smallest epsilon for which the resonance box [Omega0* +- beta] x [A* +- sigma] is
	epsilon-robust at `T`, when (Omega0*, A*) sits on a zero and the box stays on one side
	of the next extremum of cos^2.

	Raises an InvalidInputError if the box half-widths are negative or the box crosses into
	the region where the error probability turns back down.
	"""
	if beta < 0 or sigma < 0:
		raise utils.InvalidInputError("box half-widths must be nonnegative (beta=%r, sigma=%r)" % (beta, sigma))
	low = T * (omega0Star - beta) * (areaStar - sigma)
	high = T * (omega0Star + beta) * (areaStar + sigma)
	# cos^2 peaks at multiples of pi
	if (math.floor(low / math.pi) + 1) * math.pi < high:
		raise utils.InvalidInputError("box spans a maximum of the error probability")
	return max(resonancePmax(omega0Star, areaStar, beta, sigma, T), math.cos(low)**2)

def lzPerrEstimate(T: float, omega0: float, delta0: float) -> float:
	"""
	The Landau-Zener estimate exp(-pi T Omega0^2 / Delta0^2), undefined at Delta0 = 0
	"""
	if delta0 == 0:
		raise utils.InvalidInputError("Landau-Zener estimate undefined at delta0 = 0")
	return math.exp(-math.pi * T * omega0**2 / delta0**2)

def _sechSquared(x: float) -> float:
	x = abs(x)
	return (2 * math.exp(-x) / (1 + math.exp(-2 * x)))**2

def aePerrExact(T: float, omega0: float, delta0: float) -> float:
	"""
	The exact Allen-Eberly error probability:

	cosh^2(pi T sqrt(Delta0^2 - Omega0^2)) sech^2(pi Delta0 T)   for Delta0 >= Omega0
	cos^2(pi T sqrt(Omega0^2 - Delta0^2)) sech^2(pi Delta0 T)    for Omega0 > Delta0
	"""
	if not math.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))

	b = math.pi * abs(delta0) * T
	if abs(delta0) >= omega0:
		a = math.pi * T * math.sqrt(delta0**2 - omega0**2)
		# cosh(a)/cosh(b) without overflow (a <= b)
		ratio = (math.exp(a - b) + math.exp(-a - b)) / (1 + math.exp(-2 * b))
		return utils.clampProbability(ratio**2)
	return utils.clampProbability(math.cos(math.pi * T * math.sqrt(omega0**2 - delta0**2))**2 * _sechSquared(b))

def _gap(delta0: float, omega0: float) -> float:
	"""
	Delta0 - sqrt(Delta0^2 - Omega0^2), without cancellation for small Omega0
	"""
	return omega0**2 / (delta0 + math.sqrt(delta0**2 - omega0**2))

def aePerrBound(T: float, omega0: float, delta0: float) -> float:
	"""
	The large-T bound 4 exp(-2 pi T (Delta0 - sqrt(Delta0^2 - Omega0^2))), for Delta0 >= Omega0
	"""
	if delta0 < omega0:
		raise utils.InvalidInputError("bound requires delta0 >= omega0 (got %r < %r)" % (delta0, omega0))
	if not math.isfinite(T) or T <= 0:
		raise utils.InvalidInputError("horizon T must be positive, got %r" % (T,))
	if omega0 == 0:
		return 4.0
	return 4 * math.exp(-2 * math.pi * T * _gap(delta0, omega0))

def aeTEpsilon(epsilon: float, delta0: float, omega0: float) -> float:
	"""
	Returns the horizon T_eps beyond which the Allen-Eberly error probability stays below
	`epsilon`:

	max(-ln(eps/4) / (2 pi (Delta0 - sqrt(Delta0^2 - Omega0^2))), -ln(eps) / (2 pi Delta0))
	"""
	if not 0 < epsilon < 1:
		raise utils.InvalidInputError("epsilon must lie in (0, 1), got %r" % (epsilon,))
	if omega0 <= 0 or delta0 < omega0:
		raise utils.InvalidInputError("T_eps requires delta0 >= omega0 > 0 (got delta0=%r, omega0=%r)" %\
		                              (delta0, omega0))
	return max(-math.log(epsilon / 4) / (2 * math.pi * _gap(delta0, omega0)),
	           -math.log(epsilon) / (2 * math.pi * delta0))

def analyticPerr(spec: StrategySpec, theta: typing.Sequence[float], T: float) -> float:
	"""
	The closed-form error probability of the strategy at `theta`.

	Raises an UnsupportedError for custom strategies.
	"""
	kind = spec.kind
	if kind is utils.StrategyKind.RESONANCE:
		return resonancePerr(T, theta[0], theta[1])
	if kind is utils.StrategyKind.LANDAU_ZENER:
		return lzPerrEstimate(T, theta[1], theta[0])
	if kind is utils.StrategyKind.ALLEN_EBERLY:
		return aePerrExact(T, theta[1], theta[0])
	raise utils.UnsupportedError("no closed form for %s strategies" % kind)

utils.log("'strategies' module: Loaded")
