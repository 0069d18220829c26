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
Small dense complex linear algebra: quantum states, Hermitian and unitary operators, and
the exponentials of anti-Hermitian generators that propagate them.

Units follow the hbar = 1 convention; Hamiltonian entries are angular frequencies.

Types:
	- QuantumState: a unit-norm complex n-vector
	- HermitianOperator: an n x n Hermitian matrix (symmetrized at construction)
	- UnitaryOperator: an n x n unitary matrix

Functions:
	- expmStep: exp(-i H dt) for a single constant Hamiltonian
	- expmSteps: the same, for a whole stack of Hamiltonians and step sizes at once
	- overlap: the inner product <a|b>
	- apply: U|psi>
"""

import typing
import numpy as np
import scipy.linalg
from . import utils

# Pauli matrices, in the diabatic basis
IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class QuantumState():
	"""
	A pure state |psi> of an n-level system (n >= 2).

	Instance Variables:
	 - amplitudes: np.ndarray -- complex probability amplitudes (read-only)
	"""

	def __init__(self, amplitudes: typing.Sequence[complex]):
		"""
		Initializes the state from its amplitudes.

		Vectors within `utils.NORM_ACCEPT` of unit norm are renormalized; anything further
		away raises an InvalidInputError (use `QuantumState.normalized` to rescale on purpose).
		"""
		vec = np.array(amplitudes, dtype=complex).reshape(-1)

		if vec.size < 2:
			raise utils.InvalidInputError("a quantum state needs at least 2 levels, got %d" % vec.size)
		if not np.all(np.isfinite(vec)):
			raise utils.InvalidInputError("state amplitudes must be finite: %r" % (vec,))

		norm = np.linalg.norm(vec)
		if abs(norm - 1) > utils.NORM_ACCEPT:
			raise utils.InvalidInputError("state is not normalized (norm %r)" % (norm,))

		vec = vec / norm
		vec.flags.writeable = False
		self.amplitudes = vec

	@classmethod
	def normalized(cls, amplitudes: typing.Sequence[complex]) -> 'QuantumState':
		"""
		Builds a state from any non-zero vector by rescaling it to unit norm
		"""
		vec = np.array(amplitudes, dtype=complex).reshape(-1)
		norm = np.linalg.norm(vec)
		if not norm or not np.isfinite(norm):
			raise utils.InvalidInputError("cannot normalize vector of norm %r" % (norm,))
		return cls(vec / norm)

	@classmethod
	def basis(cls, index: int, dimension: int = 2) -> 'QuantumState':
		"""
		Returns the `index`th canonical (diabatic) basis vector
		"""
		if not 0 <= index < dimension:
			raise utils.InvalidInputError("basis index %d out of range for dimension %d" %\
			                              (index, dimension))
		vec = np.zeros(dimension, dtype=complex)
		vec[index] = 1
		return cls(vec)

	def __len__(self) -> int:
		"""
		Returns the dimension of the Hilbert space the state lives in
		"""
		return self.amplitudes.size

	def __getitem__(self, item: int) -> complex:
		return self.amplitudes[item]

	def __eq__(self, other: object) -> bool:
		"""
		Exact equality of amplitudes (no global phase is factored out)
		"""
		if not isinstance(other, QuantumState):
			return NotImplemented
		return len(self) == len(other) and bool(np.array_equal(self.amplitudes, other.amplitudes))

	def __repr__(self) -> str:
		return "QuantumState(%s)" % (', '.join(repr(complex(a)) for a in self.amplitudes),)

	def __str__(self) -> str:
		return "|psi> = [%s]" % (', '.join("%.6g%+.6gj" % (a.real, a.imag) for a in self.amplitudes),)

	def populations(self) -> np.ndarray:
		"""
		Returns |amplitude|^2 for every basis vector
		"""
		return np.abs(self.amplitudes)**2


class HermitianOperator():
	"""
	An n x n Hermitian matrix, such as a Hamiltonian H0, a control operator Hj or H(t).

	The matrix is stored as (A + A^dagger)/2; input that is asymmetric by more than
	`utils.HERMITICITY_TOLERANCE` is rejected.
	"""

	def __init__(self, entries: typing.Sequence[typing.Sequence[complex]]):
		mat = np.array(entries, dtype=complex)

		if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
			raise utils.InvalidInputError("operator must be a square matrix, got shape %r" %\
			                              (mat.shape,))
		if not np.all(np.isfinite(mat)):
			raise utils.InvalidInputError("operator entries must be finite")

		asymmetry = np.max(np.abs(mat - mat.conj().T))
		if asymmetry > utils.HERMITICITY_TOLERANCE:
			raise utils.InvalidInputError("operator is not Hermitian (asymmetry %g)" % asymmetry)

		mat = (mat + mat.conj().T) / 2
		mat.flags.writeable = False
		self.entries = mat

	@classmethod
	def zero(cls, dimension: int) -> 'HermitianOperator':
		"""
		Returns the zero operator of the given dimension
		"""
		return cls(np.zeros((dimension, dimension), dtype=complex))

	def __len__(self) -> int:
		"""
		Returns the dimension n of the operator
		"""
		return self.entries.shape[0]

	def __add__(self, other: 'HermitianOperator') -> 'HermitianOperator':
		if not isinstance(other, HermitianOperator):
			return NotImplemented
		_checkDimensions(len(self), len(other))
		return HermitianOperator(self.entries + other.entries)

	def __sub__(self, other: 'HermitianOperator') -> 'HermitianOperator':
		if not isinstance(other, HermitianOperator):
			return NotImplemented
		_checkDimensions(len(self), len(other))
		return HermitianOperator(self.entries - other.entries)

	def __mul__(self, scale: float) -> 'HermitianOperator':
		"""
		Scales the operator by a real number
		"""
		if isinstance(scale, complex) or not np.isreal(scale):
			return NotImplemented
		return HermitianOperator(self.entries * float(scale))

	__rmul__ = __mul__

	def __repr__(self) -> str:
		return "HermitianOperator(%r)" % (self.entries.tolist(),)


class UnitaryOperator():
	"""
	An n x n unitary matrix, e.g. a step propagator or the adiabatic rotation U(s)
	"""

	def __init__(self, entries: typing.Sequence[typing.Sequence[complex]]):
		mat = np.array(entries, dtype=complex)

		if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
			raise utils.InvalidInputError("operator must be a square matrix, got shape %r" %\
			                              (mat.shape,))
		if not np.all(np.isfinite(mat)):
			raise utils.InvalidInputError("operator entries must be finite")

		defect = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
		if defect > utils.UNITARITY_TOLERANCE:
			raise utils.InvalidInputError("operator is not unitary (defect %g)" % defect)

		mat.flags.writeable = False
		self.entries = mat

	@classmethod
	def identity(cls, dimension: int) -> 'UnitaryOperator':
		return cls(np.eye(dimension, dtype=complex))

	def __len__(self) -> int:
		return self.entries.shape[0]

	def __repr__(self) -> str:
		return "UnitaryOperator(%r)" % (self.entries.tolist(),)


def _checkDimensions(a: int, b: int):
	"""
	Raises an InvalidInputError if `a` and `b` differ
	"""
	if a != b:
		raise utils.InvalidInputError("dimension mismatch: %d != %d" % (a, b))

def pauliExponentials(coefficients: np.ndarray, dt: np.ndarray) -> np.ndarray:
	"""
	Closed-form exp(-i dt (c0 I + c.sigma)) for a stack of 2x2 Hamiltonians.

	`coefficients` has shape (..., 4) holding (c0, cx, cy, cz) and `dt` broadcasts against
	its leading dimensions. Returns an array of shape (..., 2, 2).
	"""
	c0 = coefficients[..., 0]
	vec = coefficients[..., 1:]
	norm = np.sqrt(np.sum(vec**2, axis=-1))
	angle = norm * dt

	# sin(|c|dt)/|c| stays finite as |c| -> 0
	sinc = np.where(norm > 0, np.sin(angle) / np.where(norm > 0, norm, 1), dt)
	cos = np.cos(angle)
	nx, ny, nz = (vec[..., k] * sinc for k in range(3))

	out = np.empty(coefficients.shape[:-1] + (2, 2), dtype=complex)
	out[..., 0, 0] = cos - 1j * nz
	out[..., 0, 1] = -1j * nx - ny
	out[..., 1, 0] = -1j * nx + ny
	out[..., 1, 1] = cos + 1j * nz
	return out * np.exp(-1j * c0 * dt)[..., np.newaxis, np.newaxis]

def pauliCoefficients(hamiltonians: np.ndarray) -> np.ndarray:
	"""
	Decomposes a stack of Hermitian 2x2 matrices (shape (..., 2, 2)) as c0 I + c.sigma.

	Returns the real coefficients (c0, cx, cy, cz) with shape (..., 4).
	"""
	a, b = hamiltonians[..., 0, 0].real, hamiltonians[..., 1, 1].real
	off = hamiltonians[..., 1, 0]
	return np.stack(((a + b) / 2, off.real, off.imag, (a - b) / 2), axis=-1)

def expmSteps(hamiltonians: np.ndarray, dt: typing.Union[float, np.ndarray]) -> np.ndarray:
	"""
	Returns exp(-i H_k dt_k) for every Hamiltonian in the stack `hamiltonians` (shape (N, n, n)).

	Hermiticity of the stack is assumed, not checked. 2-level stacks use the Pauli closed form;
	larger ones a batched Hermitian eigendecomposition.
	"""
	hamiltonians = np.asarray(hamiltonians, dtype=complex)
	dt = np.broadcast_to(np.asarray(dt, dtype=float), hamiltonians.shape[:-2])

	if not np.all(np.isfinite(hamiltonians)) or not np.all(np.isfinite(dt)):
		raise utils.InvalidInputError("cannot exponentiate non-finite generator")

	if hamiltonians.shape[-1] == 2:
		return pauliExponentials(pauliCoefficients(hamiltonians), dt)

	vals, vecs = np.linalg.eigh(hamiltonians)
	phases = np.exp(-1j * vals * dt[..., np.newaxis])
	return (vecs * phases[..., np.newaxis, :]) @ np.swapaxes(vecs.conj(), -1, -2)

def expmStep(H: HermitianOperator, dt: float) -> UnitaryOperator:
	"""
	Returns the exact propagator exp(-i H dt) for a constant Hamiltonian `H`.

	For n = 2 this is exp(-i c0 dt)[cos(|c|dt) I - i sin(|c|dt) (c/|c|).sigma] with
	H = c0 I + c.sigma; for n > 2 it is V diag(exp(-i lambda_k dt)) V^dagger from the
	eigendecomposition of H.
	"""
	if not np.isfinite(dt):
		raise utils.InvalidInputError("step size must be finite, got %r" % (dt,))

	if len(H) == 2:
		return UnitaryOperator(pauliExponentials(pauliCoefficients(H.entries), float(dt)))

	vals, vecs = scipy.linalg.eigh(H.entries)
	return UnitaryOperator((vecs * np.exp(-1j * vals * dt)) @ vecs.conj().T)

def overlap(a: QuantumState, b: QuantumState) -> complex:
	"""
	Returns <a|b> = sum_i conj(a_i) b_i
	"""
	_checkDimensions(len(a), len(b))
	return complex(np.vdot(a.amplitudes, b.amplitudes))

def apply(U: UnitaryOperator, psi: QuantumState) -> QuantumState:
	"""
	Returns the state U|psi>
	"""
	_checkDimensions(len(U), len(psi))
	return QuantumState(U.entries @ psi.amplitudes)

def prefixProducts(steps: np.ndarray) -> np.ndarray:
	"""
	Given step propagators U_0, ..., U_{N-1} (shape (N, n, n)), returns the cumulative
	products P_k = U_k U_{k-1} ... U_0 for every k.

	Uses a log-depth inclusive scan of batched matrix products, so a trajectory of N steps
	costs O(log N) numpy passes instead of N Python-level multiplications.
	"""
	out = np.array(steps, dtype=complex, copy=True)
	shift = 1
	while shift < out.shape[0]:
		# later steps act after earlier ones
		out[shift:] = out[shift:] @ out[:-shift]
		shift *= 2
	return out

utils.log("'quantum' module: Loaded")
