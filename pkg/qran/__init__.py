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
QRAN - Quantum Robustness ANalyzer
Simulates parametrized open-loop control of two-level quantum systems and measures how robust
state-flipping strategies are to uncertainty in their control parameters
"""
import sys

__version__ = "1.0.0"

# Exit codes, a stable contract for scripts
EXIT_OK = 0
EXIT_NOT_ROBUST = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

def main(argv: list = None) -> int:
	"""
	Main routine
	"""

	import argparse

	parser = argparse.ArgumentParser(description="Quantum Robustness ANalyzer.",
	                                 epilog="Exit status is 0 on success (or a robust sweep), 1 for a"\
	                                 " sweep that is not robust or has failed cells, 2 for configuration"\
	                                 " errors and 3 for numerical failures.")
	parser.add_argument("command",
	                    help="What to do: propagate once, sweep a parameter box, compare numerics with"\
	                    " closed forms, or compute the Allen-Eberly horizon T_eps",
	                    choices=("simulate", "sweep", "compare", "teps"),
	                    nargs='?')

	parser.add_argument("-c",
	                    "--config",
	                    help="The run configuration file (not needed for 'teps').",
	                    type=str)

	parser.add_argument("-o",
	                    "--output",
	                    help="Write results to this file, overriding 'output.path'.",
	                    type=str)

	parser.add_argument("-j",
	                    "--threads",
	                    help="Number of worker processes for sweeps (0, the default, means one per core).",
	                    type=int,
	                    default=0)

	parser.add_argument("--steps",
	                    help="Overrides the number of propagation steps ('grid.steps').",
	                    type=int)

	parser.add_argument("--smax",
	                    help="Overrides the scaled-time window with [-smax, smax] (not for resonance).",
	                    type=float)

	parser.add_argument("-e",
	                    "--epsilon",
	                    help="Error threshold for 'teps'.",
	                    type=float,
	                    default=1e-3)

	parser.add_argument("--delta0",
	                    help="Detuning amplitude for 'teps'.",
	                    type=float,
	                    default=1.0)

	parser.add_argument("--omega0",
	                    help="Coupling amplitude for 'teps'.",
	                    type=float,
	                    default=1.0)

	parser.add_argument("--debug",
	                    help="Logs debug output to stderr.",
	                    action="store_const",
	                    const=True,
	                    default=False)

	parser.add_argument("-V",
	                    "--version",
	                    help="Prints version information and exits",
	                    action="store_const",
	                    const=True,
	                    default=False)

	args = parser.parse_args(argv)

	if args.version:
		from platform import python_implementation as impl, python_version as ver
		print("Quantum Robustness ANalyzer (QRAN)", "v%s" % __version__)
		print("Running on", impl(), "v%s" % ver())
		return EXIT_OK

	if args.command is None:
		parser.print_usage(sys.stderr)
		return EXIT_CONFIG

	if __debug__ and not args.debug:
		# force optimization (will set __debug__ = False)
		from os import execl
		execl(sys.executable, sys.executable, '-OO', '-m', 'qran', *(sys.argv[1:] if argv is None else argv))
	elif __debug__:
		from traceback import format_exc
		def f_exc() -> str:
			"""
			Formats an exception stack trace for debug output
			"""
			return format_exc().replace('\n', "\nDEBUG:\t")
	else:
		f_exc = lambda: ''

	from . import ui
	from . import config
	from . import utils

	utils.log("main: Starting qran version", __version__, "with args:", args)

	if args.command == "teps":
		try:
			return ui.cmdTeps(args.epsilon, args.delta0, args.omega0)
		except utils.InvalidInputError as e:
			utils.log(f_exc())
			print("Invalid arguments: %s" % e, file=sys.stderr)
			return EXIT_CONFIG

	# Nothing is computed until the whole configuration validates
	try:
		if not args.config:
			raise config.ConfigException("a configuration file is required for '%s'" % args.command, "--config")
		settings = config.applyOverrides(config.readRunConfig(args.config), args.steps, args.smax, args.output)
		cfg = config.validate(settings, requireBox=args.command == "sweep")
		config.allowedProcesses(args.threads)
	except config.ConfigException as e:
		utils.log(f_exc())
		print("Configuration error: %s" % e, file=sys.stderr)
		return EXIT_CONFIG

	commands = {"simulate": lambda: ui.cmdSimulate(cfg),
	            "sweep": lambda: ui.cmdSweep(cfg, args.threads),
	            "compare": lambda: ui.cmdCompare(cfg, args.threads)}

	try:
		return commands[args.command]()
	except (config.ConfigException, utils.UnsupportedError) as e:
		utils.log(f_exc())
		print("Configuration error: %s" % e, file=sys.stderr)
		return EXIT_CONFIG
	except (utils.QranException, ArithmeticError, ValueError) as e:
		utils.log(f_exc())
		print("Numerical failure: %s" % e, file=sys.stderr)
		return EXIT_NUMERIC
	except OSError as e:
		utils.log(f_exc())
		print("Unable to write results: %s" % e, file=sys.stderr)
		return EXIT_CONFIG
