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
The analyzer's commands: simulate, sweep, compare and teps.

Each command computes everything first and only then writes its results, so a failure never
leaves a partial output file behind. Tabular data goes out as CSV; summaries are printed as
TYAML, on stderr whenever the CSV itself is written to stdout.
"""

import csv
import math
import sys
import typing
import numpy as np
from . import config, plant, propagator, quantum, robustness, strategies, utils

Summary = typing.List[typing.Tuple[str, object]]

def number(value: float) -> str:
	"""
	Formats a real number with enough digits to read it back exactly ('nan' for NaN)
	"""
	return "%.17g" % value

def _formatValue(value: object) -> str:
	if isinstance(value, bool):
		return "true" if value else "false"
	if isinstance(value, float):
		return number(value)
	if isinstance(value, complex):
		return "%s%+.17gj" % (number(value.real), value.imag)
	if isinstance(value, (list, tuple)):
		return "[%s]" % ', '.join(_formatValue(v) for v in value)
	return str(value)

def dumpSummary(summary: Summary, file: typing.TextIO = None):
	"""
	Prints a summary as a TYAML document, one `key: value` line per entry.

	Nested summaries (a list of pairs as a value) are printed indented under their key.
	"""
	# nothing is printed until the whole document is built, to avoid partial outputs
	buffer = ["%TYAML 1.1", "---"]
	append = buffer.append

	def walk(entries: Summary, depth: int):
		for key, value in entries:
			if isinstance(value, list) and value and isinstance(value[0], tuple) and len(value[0]) == 2\
			   and isinstance(value[0][0], str):
				append("%s%s:" % ('\t' * depth, key))
				walk(value, depth + 1)
			else:
				append("%s%s: %s" % ('\t' * depth, key, _formatValue(value)))

	walk(summary, 0)
	print(*buffer, sep='\n', file=file if file is not None else sys.stdout)

def writeCSV(header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence[float]], path: str = ''):
	"""
	Writes `rows` under `header` as LF-terminated CSV to `path`, or to stdout if no path is given
	"""
	if not path:
		writer = csv.writer(sys.stdout, lineterminator='\n')
		writer.writerow(header)
		writer.writerows([number(v) for v in row] for row in rows)
		return

	utils.log("ui.writeCSV: writing", path)
	with open(path, 'w', newline='') as file:
		writer = csv.writer(file, lineterminator='\n')
		writer.writerow(header)
		writer.writerows([number(v) for v in row] for row in rows)

def errorMapRows(errorMap: robustness.ErrorMap) -> typing.List[typing.Tuple[float, float, float]]:
	"""
	Rows (theta1, theta2, perr) of an error map, row-major over axis 1 then axis 2
	"""
	return [theta + (float(errorMap.values[index]),) for index, theta in errorMap.cells()]

def readErrorMapCSV(path: str) -> typing.List[typing.Tuple[float, float, float]]:
	"""
	Reads back the rows of a CSV written by `cmdSweep`
	"""
	with open(path, newline='') as file:
		reader = csv.reader(file)
		header = next(reader)
		if header != ["theta1", "theta2", "perr"]:
			raise ValueError("not an error map: header is %r" % (header,))
		return [tuple(float(x) for x in row) for row in reader]

def _adiabaticPopulations(spec: strategies.StrategySpec, final: quantum.QuantumState) -> typing.Optional[np.ndarray]:
	"""
	Populations of the adiabatic states at the end of the window, or None where the frame is
	undefined
	"""
	try:
		U = propagator.frameRotations(strategies.twoLevelControls(spec), [spec.grid.s_end])[0]
	except utils.DegeneratePointError:
		utils.log_exc("ui._adiabaticPopulations:")
		return None
	return np.abs(U.conj().T @ final.amplitudes)**2

def _reportStream(cfg: config.RunConfig) -> typing.TextIO:
	"""
	Where a command's summary goes: stdout when its CSV went to a file, otherwise stderr so
	that stdout stays plain CSV
	"""
	return sys.stdout if cfg.output else sys.stderr

def _strategySummary(spec: strategies.StrategySpec) -> Summary:
	return [("kind", str(spec.kind)),
	        ("description", strategies.describe(spec)),
	        ("parameters", list(strategies.parameterNames(spec))),
	        ("T", spec.T)]

def cmdSimulate(cfg: config.RunConfig) -> int:
	"""
	Propagates the configured strategy at its nominal parameters and reports the final state,
	its error probability and (two-level strategies) the adiabatic-state populations.
	"""
	spec = cfg.strategy
	theta = strategies.nominalTheta(spec)
	utils.log("ui.cmdSimulate:", strategies.describe(spec), "at", theta)

	trajectory = propagator.propagate(strategies.buildPlant(spec), theta, cfg.initial, spec.grid, spec.T)
	final = trajectory.final
	perr = robustness.errorProbability(final, cfg.target)

	summary = [("strategy", _strategySummary(spec)),
	           ("theta", list(theta)),
	           ("final", [complex(a) for a in final.amplitudes]),
	           ("populations", [float(p) for p in final.populations()]),
	           ("perr", perr),
	           ("norm_defect", trajectory.normDefect())]

	adiabatic = _adiabaticPopulations(spec, final)
	summary.append(("adiabatic_populations", "undefined" if adiabatic is None else [float(p) for p in adiabatic]))

	if spec.kind.hasClosedForm:
		try:
			analytic = strategies.analyticPerr(spec, theta, spec.T)
		except utils.InvalidInputError:
			# e.g. the Landau-Zener estimate at delta0 = 0
			utils.log_exc("ui.cmdSimulate:")
			analytic = "undefined"
		summary.append(("perr_analytic", analytic))

	if cfg.output:
		with open(cfg.output, 'w') as file:
			dumpSummary(summary, file)
	dumpSummary(summary)
	return 0

def cmdSweep(cfg: config.RunConfig, threads: int = 0) -> int:
	"""
	Sweeps the configured box, writes the error map as CSV and prints the robustness report.

	Returns 0 if the box is epsilon-robust, 1 if it isn't or if any cell failed.
	"""
	if cfg.box is None:
		raise config.ConfigException("required for sweeps", "box.lower")

	spec = cfg.strategy
	cells = cfg.resolution[0] * cfg.resolution[1]
	workers = config.allowedProcesses(threads, cells)

	errorMap = robustness.sweep(spec, cfg.box, cfg.resolution, spec.T, cfg.initial, cfg.target, workers)
	_, report = robustness.robustnessSet(errorMap, cfg.epsilon)

	summary = [("strategy", _strategySummary(spec)),
	           ("box", [("lower", list(cfg.box.lower)), ("upper", list(cfg.box.upper))]),
	           ("resolution", list(report.resolution)),
	           ("epsilon", report.epsilon),
	           ("inside_fraction", report.insideFraction),
	           ("is_robust", report.isRobust),
	           ("worst_theta", list(report.worstTheta)),
	           ("pmax", report.worstPerr),
	           ("failed_cells", report.failedCells)]

	if spec.kind is utils.StrategyKind.RESONANCE:
		(o0, a0), (o1, a1) = cfg.box
		summary.append(("pmax_analytic", strategies.resonancePmax((o0 + o1) / 2, (a0 + a1) / 2,
		                                                          (o1 - o0) / 2, (a1 - a0) / 2, spec.T)))

	writeCSV(("theta1", "theta2", "perr"), errorMapRows(errorMap), cfg.output)
	dumpSummary(summary, _reportStream(cfg))

	for index, message in errorMap.errors:
		print("cell %r (theta = %r) failed: %s" % (index, errorMap.theta(index), message), file=sys.stderr)

	return 0 if report.isRobust and not report.failedCells else 1

def lzDecayFit(spec: strategies.StrategySpec,
               psi0: quantum.QuantumState,
               horizons: typing.Tuple[float, float, int]) -> typing.Tuple[float, float, np.ndarray, np.ndarray]:
	"""
	Least-squares fit of ln P_err against T for the Landau-Zener strategy at its nominal
	parameters, over log-uniformly spaced horizons.

	P_err is measured between adiabatic states at the window edges; values below
	`utils.PERR_FLOOR` are left out of the fit. Returns (fitted slope, printed slope
	-pi Omega0^2 / Delta0^2, horizons, measured P_err); the fitted slope is NaN when fewer
	than two points survive.
	"""
	tMin, tMax, count = horizons
	Ts = np.geomspace(tMin, tMax, count)
	perrs = np.array([propagator.adiabaticLeakage(strategies.lzControls(spec.delta0, spec.omega0, T),
	                                              psi0, spec.grid, T)
	                  for T in Ts])

	kept = perrs >= utils.PERR_FLOOR
	slope = math.nan
	if kept.sum() >= 2:
		slope = float(np.polyfit(Ts[kept], np.log(perrs[kept]), 1)[0])

	printed = -math.pi * spec.omega0**2 / spec.delta0**2 if spec.delta0 else -math.inf
	utils.log("ui.lzDecayFit: fitted", slope, "printed", printed, "from", int(kept.sum()), "points")
	return slope, printed, Ts, perrs

def cmdCompare(cfg: config.RunConfig, threads: int = 0) -> int:
	"""
	Compares numeric and closed-form error probabilities over the configured box (or at the
	nominal parameters if there is none), plus the decay fit for Landau-Zener.

	Raises an UnsupportedError for custom strategies.
	"""
	spec = cfg.strategy
	if not spec.kind.hasClosedForm:
		raise utils.UnsupportedError("no closed form to compare against for %s strategies" % spec.kind)

	if cfg.box is None:
		theta = strategies.nominalTheta(spec)
		box = plant.ParameterBox(theta, theta)
		resolution = (1, 1)
	else:
		box, resolution = cfg.box, cfg.resolution

	workers = config.allowedProcesses(threads, resolution[0] * resolution[1])
	numeric = robustness.sweep(spec, box, resolution, spec.T, cfg.initial, cfg.target, workers)
	analytic = robustness.analyticSweep(spec, box, resolution, spec.T)

	diff = np.abs(numeric.values - analytic.values)
	rows = [theta + (float(numeric.values[index]), float(analytic.values[index]), float(diff[index]))
	        for index, theta in numeric.cells()]

	summary = [("strategy", _strategySummary(spec)),
	           ("cells", len(rows)),
	           ("max_abs_diff", float(np.nanmax(diff)) if not np.isnan(diff).all() else math.nan),
	           ("undefined_cells", int(np.isnan(diff).sum()))]

	if spec.kind is utils.StrategyKind.LANDAU_ZENER:
		slope, printed, Ts, perrs = lzDecayFit(spec, cfg.initial, cfg.horizons)
		summary.append(("decay_fit", [("fitted_slope", slope),
		                              ("printed_slope", printed),
		                              ("horizons", [float(T) for T in Ts]),
		                              ("perr", [float(p) for p in perrs])]))

	writeCSV(("theta1", "theta2", "perr_numeric", "perr_analytic", "abs_diff"), rows, cfg.output)
	dumpSummary(summary, _reportStream(cfg))
	return 0

def cmdTeps(epsilon: float, delta0: float, omega0: float) -> int:
	"""
	Prints the Allen-Eberly horizon T_eps beyond which P_err stays below `epsilon`
	"""
	print(number(strategies.aeTEpsilon(epsilon, delta0, omega0)))
	return 0

utils.log("'ui' module: Loaded")
