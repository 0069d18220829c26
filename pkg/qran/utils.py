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
This module contains miscellaneous utilities: numerical tolerances, enumerated kinds,
the exception hierarchy and the debug logger.
"""

import os
import sys
import enum
import math
import typing

########################################################
###                                                  ###
###                   CONSTANTS                      ###
###                                                  ###
########################################################

# Input vectors further than this from unit norm are rejected rather than renormalized
NORM_ACCEPT = 1e-8

# Largest |A - A^dagger| entry tolerated (and symmetrized away) for a Hermitian operator
HERMITICITY_TOLERANCE = 1e-8

# Largest |U^dagger U - I| entry tolerated for a unitary operator
UNITARITY_TOLERANCE = 1e-10

# Error probabilities may stray outside of [0, 1] by this much before clamping
PERR_SLACK = 1e-12

# Error probabilities below this are treated as numerically zero when fitting logarithms
PERR_FLOOR = 1e-14

# Default number of propagation steps on a strategy grid
DEFAULT_STEPS = 4000

# Default half-width of the symmetric scaled-time window for LZ/AE strategies
DEFAULT_SMAX = 8.0


########################################################
###                                                  ###
###                 TYPES/CLASSES                    ###
###                                                  ###
########################################################

class StrategyKind(enum.Enum):
	"""
	Enumerated two-level control strategies
	"""
	RESONANCE = "resonance"
	LANDAU_ZENER = "landau-zener"
	ALLEN_EBERLY = "allen-eberly"
	CUSTOM = "custom"

	def __str__(self) -> str:
		"""
		Returns the name of the strategy as it is written in configuration files
		"""
		return self.value

	@property
	def hasClosedForm(self) -> bool:
		"""
		Whether an analytic error probability is known for this strategy
		"""
		return self is not StrategyKind.CUSTOM


class Frame(enum.Enum):
	"""
	The basis in which the states of a trajectory are expressed
	"""
	DIABATIC = "diabatic"
	ADIABATIC = "adiabatic"

	def __str__(self) -> str:
		return self.value


class QranException(Exception):
	"""
	Base of all exceptions raised by the analyzer.

	Carries a message and (optionally) the exception that caused it.
	"""
	def __init__(self, msg: str = "", err: Exception = None):
		"""
		Sets the string representation of this exception to the value given by `msg`,
		and records any inner exception in `err`.
		"""
		super(QranException, self).__init__(msg)
		self.msg = msg
		self.innerException = err

	def __str__(self) -> str:
		"""
		Implements `str(self)`
		"""
		return self.msg

	def __repr__(self) -> str:
		"""
		Implements `repr(self)`

		Also displays the inner exception, if it exists
		"""
		if self.innerException:
			return "\n".join((self.msg, repr(self.innerException)))
		return self.msg

class InvalidInputError(QranException, ValueError):
	"""
	Raised for mismatched dimensions, non-finite entries and arguments outside of an
	operation's domain.
	"""

class EvaluationError(QranException, ArithmeticError):
	"""
	Raised when a control function evaluates to a non-finite value.

	`index` is the offending control's position in the plant, `t` the time of evaluation.
	"""
	def __init__(self, msg: str, index: int, t: float = math.nan, err: Exception = None):
		super(EvaluationError, self).__init__(msg, err)
		self.index = index
		self.t = t

class DegeneratePointError(QranException, ArithmeticError):
	"""
	Raised when an adiabatic-frame quantity is requested where detuning and coupling both
	vanish, so that the mixing angle is undefined.
	"""
	def __init__(self, msg: str, s: float = math.nan):
		super(DegeneratePointError, self).__init__(msg)
		self.s = s

class UnsupportedError(QranException):
	"""
	Raised when a closed form is requested for a strategy that has none.
	"""


########################################################
###                                                  ###
###                   FUNCTIONS                      ###
###                                                  ###
########################################################

def clampProbability(p: float) -> float:
	"""
	Clamps a probability that floating-point error pushed just outside of [0, 1].

	NaN passes through untouched.
	"""
	if p != p:
		return p
	return min(1.0, max(0.0, p))

def finite(values: typing.Iterable[float]) -> bool:
	"""
	Returns `True` if every value in `values` is finite
	"""
	return all(math.isfinite(v) for v in values)

if __debug__:
	from traceback import format_exc

	try:
		_colored = os.isatty(sys.stderr.fileno())
	except (AttributeError, ValueError, OSError):
		# stderr captured or replaced (e.g. under a test runner)
		_colored = False

	if _colored:
		messageTemplate = "\033[38;2;174;129;255mDEBUG: %s\033[0m\n"
	else:
		messageTemplate = "DEBUG: %s\n"
	def log(*args: object):
		"""
		This will output debug info to stderr (but only if __debug__ is true)
		"""
		output = tuple(repr(arg) if not isinstance(arg, str) else arg for arg in args)
		sys.stderr.write(messageTemplate % (' '.join(output),))

	def log_exc(desc: str):
		"""
		Logs an exception with a description
		"""
		log(desc, format_exc().replace('\n', "\nDEBUG:\t"))

	log("'utils' module: Loaded")
	log("\t\tDEFAULT_STEPS:", DEFAULT_STEPS, "DEFAULT_SMAX:", DEFAULT_SMAX)
else:
	def log(*unused_args):
		"""
		dummy function to which 'log' gets set if debugging isn't enabled
		"""
		pass
	def log_exc(unused_desc):
		"""
		dummy function to which `log_exc` gets set if debugging isn't enabled
		"""
		pass

# This may seem dumb, but it's necessary to allow importing
log = log
log_exc = log_exc
