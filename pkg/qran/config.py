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
Reads and validates run configuration files.

A run configuration is a plain text file of `CONFIG` lines, one setting per line:

	CONFIG strategy.kind STRING allen-eberly
	CONFIG strategy.T FLOAT 2.5
	CONFIG box.lower FLOAT 0.5 0.5
	CONFIG state.initial COMPLEX 0.70710678 0.70710678j

Lines that don't start with `CONFIG` (comments, blank lines) are ignored. Several values
after the type make a list.

Types:
	- type Settings: raw setting names mapped to their parsed values
	- type RunConfig: a fully-validated run configuration
	- exception ConfigException: raised for anything wrong with a configuration, naming the
	  offending field
"""

import math
import typing
import psutil
from . import plant, propagator, quantum, strategies, utils

Value = typing.Union[int, float, complex, str, typing.List[typing.Union[int, float, complex, str]]]
Settings = typing.NewType('Settings', typing.Dict[str, Value])

RunConfig = typing.NamedTuple('RunConfig',
            [('strategy', strategies.StrategySpec),
             ('box', typing.Optional[plant.ParameterBox]),
             ('resolution', typing.Tuple[int, int]),
             ('epsilon', float),
             ('initial', quantum.QuantumState),
             ('target', quantum.QuantumState),
             ('horizons', typing.Tuple[float, float, int]),
             ('output', str)])

# Every setting a run configuration may hold, with the types it may be written as
FIELDS = {
	"strategy.kind": ("STRING",),
	"strategy.delta0": ("FLOAT", "INT"),
	"strategy.omega0": ("FLOAT", "INT"),
	"strategy.T": ("FLOAT", "INT"),
	"strategy.envelope": ("STRING",),
	"strategy.detuning_envelope": ("STRING",),
	"strategy.area": ("FLOAT", "INT"),
	"grid.s_start": ("FLOAT", "INT"),
	"grid.s_end": ("FLOAT", "INT"),
	"grid.steps": ("INT",),
	"box.lower": ("FLOAT", "INT"),
	"box.upper": ("FLOAT", "INT"),
	"sweep.resolution": ("INT",),
	"sweep.epsilon": ("FLOAT", "INT"),
	"state.initial": ("INT", "FLOAT", "COMPLEX"),
	"state.target": ("INT", "FLOAT", "COMPLEX"),
	"compare.t_min": ("FLOAT", "INT"),
	"compare.t_max": ("FLOAT", "INT"),
	"compare.t_points": ("INT",),
	"output.path": ("STRING",),
}

DEFAULT_RESOLUTION = (33, 33)
DEFAULT_EPSILON = 1e-3
DEFAULT_HORIZONS = (1.0, 20.0, 8)

# Least-squares fits of the decay need at least this many horizons
MIN_HORIZONS = 8


class ConfigException(utils.QranException):
	"""
	An exception raised when a run configuration cannot be read or fails validation.

	The message always starts with the dotted path of the offending field.
	"""
	def __init__(self, msg: str, field: str = "config", err: Exception = None):
		"""
		Sets the string representation of this exception to `field: msg`, and records any
		inner exception in `err`.
		"""
		super(ConfigException, self).__init__("%s: %s" % (field, msg), err)
		self.field = field


def _parseValue(Type: str, value: str) -> typing.Union[int, float, complex, str]:
	"""
	Converts one whitespace-separated token according to its declared type
	"""
	# A decimal or hexidecimal integer
	if Type == "INT":
		if value.startswith("0x"):
			return int(value[2:], base=16)
		return int(value)
	if Type == "FLOAT":
		return float(value)
	if Type == "COMPLEX":
		return complex(value)
	return value

def parseRunConfig(contents: str) -> Settings:
	"""
	Parses the contents of a run configuration file and returns the contained settings.

	Raises a ConfigException for malformed lines, unknown names, types that are not allowed
	for a setting and values that don't parse as their type.
	"""
	ret = {}
	for lineno, line in enumerate(contents.strip().split('\n'), 1):
		line = line.strip()

		if not line.startswith("CONFIG"):
			continue

		utils.log("config.parseRunConfig: config line:", line)

		fields = line.split()[1:]
		if len(fields) < 3:
			raise ConfigException("line %d: expected 'CONFIG name TYPE value', got '%s'" % (lineno, line))

		name, Type, values = fields[0], fields[1], fields[2:]

		if name not in FIELDS:
			raise ConfigException("unknown setting (line %d)" % lineno, name)
		if Type not in FIELDS[name]:
			raise ConfigException("type %s not allowed here, expected one of %s (line %d)" %\
			                      (Type, ', '.join(FIELDS[name]), lineno), name)

		if name in ret:
			utils.log("config.parseRunConfig: Double-definition of", name)

		if Type == "STRING":
			value = ' '.join(values)
		else:
			try:
				value = [_parseValue(Type, v) for v in values]
			except ValueError as e:
				raise ConfigException("bad %s value on line %d: '%s'" % (Type, lineno, ' '.join(values)), name, e)
			if len(value) == 1:
				value = value[0]

		ret[name] = value

	return Settings(ret)

def readRunConfig(fname: str) -> Settings:
	"""
	Reads in the settings from the run configuration file at `fname`

	Raises a ConfigException when the file cannot be read for any reason, or doesn't parse.
	"""
	utils.log("config.readRunConfig: opening file", fname, "for reading")

	try:
		with open(fname) as file:
			contents = file.read()
	except OSError as e:
		utils.log_exc("config.readRunConfig:")
		raise ConfigException("cannot read '%s': %s" % (fname, e), "config", e)

	return parseRunConfig(contents)

def applyOverrides(settings: Settings,
                   steps: int = None,
                   smax: float = None,
                   output: str = None) -> Settings:
	"""
	Returns a copy of `settings` with command-line overrides applied on top.

	`smax` sets the window to [-smax, smax]; it is ignored (with a debug message) for
	resonance, whose pulse lives on [0, 1].
	"""
	ret = dict(settings)
	if steps is not None:
		ret["grid.steps"] = steps
	if output is not None:
		ret["output.path"] = output
	if smax is not None:
		if ret.get("strategy.kind") == str(utils.StrategyKind.RESONANCE):
			utils.log("config.applyOverrides: --smax has no effect on resonance")
		else:
			ret["grid.s_start"], ret["grid.s_end"] = -smax, smax
	utils.log("config.applyOverrides:", ret)
	return Settings(ret)

def _scalar(settings: Settings, name: str, default: Value = None) -> Value:
	"""
	Fetches a single-valued setting
	"""
	value = settings.get(name, default)
	if isinstance(value, list):
		raise ConfigException("expected a single value, got %d" % len(value), name)
	return value

def _real(settings: Settings, name: str, default: float = None) -> typing.Optional[float]:
	value = _scalar(settings, name, default)
	if value is None:
		return None
	if not math.isfinite(value):
		raise ConfigException("must be finite, got %r" % (value,), name)
	return float(value)

def _pair(settings: Settings, name: str, default: typing.Tuple = None) -> typing.Optional[tuple]:
	value = settings.get(name, default)
	if value is None:
		return None
	if not isinstance(value, (list, tuple)) or len(value) != 2:
		raise ConfigException("expected 2 values, got %r" % (value,), name)
	return tuple(value)

def _state(settings: Settings, name: str, default: int) -> quantum.QuantumState:
	"""
	A state given either as a basis index or as an explicit list of amplitudes
	"""
	value = settings.get(name, default)
	try:
		if isinstance(value, int):
			return quantum.QuantumState.basis(value, 2)
		if not isinstance(value, list) or len(value) != 2:
			raise ConfigException("expected a basis index or 2 amplitudes, got %r" % (value,), name)
		return quantum.QuantumState(value)
	except utils.InvalidInputError as e:
		raise ConfigException(str(e), name, e)

def _grid(settings: Settings, kind: utils.StrategyKind) -> propagator.TimeGrid:
	"""
	The propagation grid, filling unset fields from the strategy's default
	"""
	default = strategies.defaultGrid(kind)
	start = _real(settings, "grid.s_start", default.s_start)
	end = _real(settings, "grid.s_end", default.s_end)
	steps = _scalar(settings, "grid.steps", default.steps)

	if steps < 1:
		raise ConfigException("must be a positive integer, got %r" % (steps,), "grid.steps")
	try:
		return propagator.timeGrid(start, end, steps)
	except utils.InvalidInputError as e:
		raise ConfigException(str(e), "grid.s_start", e)

def validate(settings: Settings, requireBox: bool = False) -> RunConfig:
	"""
	Checks every setting and builds the RunConfig they describe.

	Nothing is computed before the whole configuration has validated. Raises a
	ConfigException naming the first field found to be wrong; if `requireBox` is set, a
	missing parameter box is an error too.
	"""
	kindName = _scalar(settings, "strategy.kind")
	if kindName is None:
		raise ConfigException("required", "strategy.kind")
	try:
		kind = utils.StrategyKind(kindName)
	except ValueError as e:
		raise ConfigException("unknown strategy '%s' (known: %s)" %\
		                      (kindName, ', '.join(str(k) for k in utils.StrategyKind)), "strategy.kind", e)

	delta0 = _real(settings, "strategy.delta0", 1.0)
	omega0 = _real(settings, "strategy.omega0", 1.0)
	T = _real(settings, "strategy.T", 1.0)
	for name, value in (("strategy.delta0", delta0), ("strategy.omega0", omega0)):
		if value < 0:
			raise ConfigException("must be nonnegative, got %r" % (value,), name)
	if T <= 0:
		raise ConfigException("must be positive, got %r" % (T,), "strategy.T")

	envelope = _scalar(settings, "strategy.envelope", "constant")
	detuningEnvelope = _scalar(settings, "strategy.detuning_envelope", "tanh")
	for name, value in (("strategy.envelope", envelope), ("strategy.detuning_envelope", detuningEnvelope)):
		if value not in strategies.ENVELOPES:
			raise ConfigException("unknown envelope '%s' (known: %s)" %\
			                      (value, ', '.join(sorted(strategies.ENVELOPES))), name)

	grid = _grid(settings, kind)
	area = _real(settings, "strategy.area")
	try:
		spec = strategies.strategySpec(kind, delta0, omega0, T, grid, envelope, detuningEnvelope, area)
		if kind is utils.StrategyKind.RESONANCE:
			strategies.nominalArea(spec)
	except utils.InvalidInputError as e:
		raise ConfigException(str(e), "strategy.envelope" if kind is utils.StrategyKind.RESONANCE else "strategy", e)

	box = None
	lower, upper = _pair(settings, "box.lower"), _pair(settings, "box.upper")
	if lower is None or upper is None:
		if requireBox:
			raise ConfigException("required for sweeps", "box.lower" if lower is None else "box.upper")
	else:
		try:
			box = plant.parameterBox(lower, upper)
		except utils.InvalidInputError as e:
			raise ConfigException(str(e), "box.lower", e)

	resolution = _pair(settings, "sweep.resolution", DEFAULT_RESOLUTION)
	if any(r < 1 for r in resolution):
		raise ConfigException("must be positive, got %r" % (resolution,), "sweep.resolution")

	epsilon = _real(settings, "sweep.epsilon", DEFAULT_EPSILON)
	if not 0 <= epsilon < 1:
		raise ConfigException("must lie in [0, 1), got %r" % (epsilon,), "sweep.epsilon")

	tMin = _real(settings, "compare.t_min", DEFAULT_HORIZONS[0])
	tMax = _real(settings, "compare.t_max", DEFAULT_HORIZONS[1])
	tPoints = _scalar(settings, "compare.t_points", DEFAULT_HORIZONS[2])
	if not 0 < tMin < tMax:
		raise ConfigException("need 0 < t_min < t_max, got [%r, %r]" % (tMin, tMax), "compare.t_min")
	if tPoints < MIN_HORIZONS:
		raise ConfigException("need at least %d points, got %r" % (MIN_HORIZONS, tPoints), "compare.t_points")

	ret = RunConfig(spec,
	                box,
	                tuple(int(r) for r in resolution),
	                epsilon,
	                _state(settings, "state.initial", 0),
	                _state(settings, "state.target", 1),
	                (tMin, tMax, int(tPoints)),
	                _scalar(settings, "output.path", ''))

	utils.log("config.validate:", ret)
	return ret

def allowedProcesses(threads: int = 0, cells: int = None) -> int:
	"""
	Returns the number of worker processes a sweep may use.

	`threads` of 0 means one per CPU core; the result never exceeds `cells` (when given) and
	is never below 1.
	"""
	if threads < 0:
		raise ConfigException("must be nonnegative, got %d" % threads, "--threads")

	workers = threads if threads else (psutil.cpu_count() or 1)
	if cells is not None:
		workers = min(workers, cells)

	utils.log("config.allowedProcesses: workers is", workers)
	return max(1, workers)

utils.log("'config' module: Loaded")
