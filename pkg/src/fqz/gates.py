"""Built-in gate set, defined both ways.

Every built-in gate carries a unitary matrix and, where the gate has a
natural description as a map on basis states, that description as a
BasisMapping. mapping_to_matrix recompiles a mapping into the unique
matrix it induces, so the two definitions cross-check each other.

Conventions used everywhere in this package:
  * big-endian qubit order: in a two-qubit label "xy", x is the most
    significant bit, so |xy> lives at basis index 2x + y;
  * |+> = (|0> + |1>)/sqrt(2) and |-> = (|0> - |1>)/sqrt(2) with those
    fixed real coefficients;
  * gate names are canonical uppercase strings (I, X, Z, H, R, CNOT).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, as_matrix, is_unitary

_SQRT_HALF = 1.0 / math.sqrt(2.0)

_SINGLE_LABELS = {"0", "1", "+", "-"}

_LABEL_VECTORS = {
    "0": np.array([1.0, 0.0], dtype=np.complex128),
    "1": np.array([0.0, 1.0], dtype=np.complex128),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=np.complex128),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=np.complex128),
}


class MappingError(ValueError):
    """A BasisMapping does not induce a unitary matrix."""


def _check_label(label: str, arity: int) -> None:
    if arity == 1:
        if label not in _SINGLE_LABELS:
            raise ValueError(f"bad 1-qubit ket label {label!r}: expected one of 0, 1, +, -")
    else:
        if len(label) != arity or any(c not in "01" for c in label):
            raise ValueError(f"bad {arity}-qubit ket label {label!r}: expected {arity} chars over 0/1")


def ket_vector(label: str, arity: int) -> np.ndarray:
    """Column of the state vector for a single ket label."""
    _check_label(label, arity)
    if arity == 1:
        return _LABEL_VECTORS[label].copy()
    v = np.zeros(2**arity, dtype=np.complex128)
    v[int(label, 2)] = 1.0
    return v


@dataclass(frozen=True)
class KetExpr:
    """Unit-norm linear combination of ket labels, e.g. e^(i*phi)|1>."""

    terms: tuple[tuple[complex, str], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("ket expression must have at least one term")
        labels = [label for _, label in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"ket expression repeats a label: {labels}")
        norm_sq = sum(abs(amp) ** 2 for amp, _ in self.terms)
        if abs(norm_sq - 1.0) > DEFAULT_TOL:
            raise ValueError(f"ket expression is not unit norm: |.|^2 = {norm_sq}")

    def vector(self, arity: int) -> np.ndarray:
        out = np.zeros(2**arity, dtype=np.complex128)
        for amp, label in self.terms:
            out += complex(amp) * ket_vector(label, arity)
        return out


def ket(label: str, amp: complex = 1.0) -> KetExpr:
    """Single-term ket expression amp|label>."""
    return KetExpr(((complex(amp), label),))


@dataclass(frozen=True)
class BasisMapping:
    """Gate described as input ket -> output ket expression pairs."""

    arity: int
    pairs: tuple[tuple[str, KetExpr], ...]

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"gate arity must be 1 or 2, got {self.arity}")
        inputs = [label for label, _ in self.pairs]
        for label in inputs:
            _check_label(label, self.arity)
        if len(set(inputs)) != len(inputs):
            raise ValueError(f"mapping repeats an input ket: {inputs}")


def mapping_to_matrix(mapping: BasisMapping, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unique matrix U with U|input> = output for every pair of the mapping.

    Inputs may be given in the +/- basis (as Hadamard's are), so the pairs
    can over-determine U; consistency of every pair with the induced matrix
    is checked. Mappings that fail to induce a unitary are rejected, and
    in particular two distinct inputs may not map to the same state.
    """
    dim = 2**mapping.arity
    if not mapping.pairs:
        raise MappingError("empty mapping")
    v_in = np.column_stack([ket_vector(label, mapping.arity) for label, _ in mapping.pairs])
    v_out = np.column_stack([expr.vector(mapping.arity) for _, expr in mapping.pairs])
    # Solve from a spanning subset of the inputs, then hold every remaining
    # (redundant) pair against the induced matrix so blame lands on it.
    chosen: list[int] = []
    for idx in range(len(mapping.pairs)):
        if np.linalg.matrix_rank(v_in[:, chosen + [idx]]) == len(chosen) + 1:
            chosen.append(idx)
        if len(chosen) == dim:
            break
    if len(chosen) < dim:
        raise MappingError(f"mapping is not total: its {len(mapping.pairs)} input kets do not span dimension {dim}")
    u = v_out[:, chosen] @ np.linalg.inv(v_in[:, chosen])
    for idx, (label, expr) in enumerate(mapping.pairs):
        residual = float(np.abs(u @ v_in[:, idx] - v_out[:, idx]).max())
        if residual > tol:
            raise MappingError(f"pair |{label}> -> {_expr_text(expr)} is inconsistent with the other pairs")
    if not is_unitary(u, tol):
        for i in range(len(mapping.pairs)):
            for j in range(i + 1, len(mapping.pairs)):
                if float(np.abs(v_out[:, i] - v_out[:, j]).max()) <= tol:
                    a, b = mapping.pairs[i][0], mapping.pairs[j][0]
                    raise MappingError(f"inputs |{a}> and |{b}> map to the same state, so the mapping is not injective")
        raise MappingError("mapping does not induce a unitary matrix")
    return u


def _expr_text(expr: KetExpr) -> str:
    return " + ".join(f"({amp:g})|{label}>" for amp, label in expr.terms)


@dataclass(frozen=True, eq=False)
class Gate:
    """Named unitary with an optional basis-mapping definition.

    Construction does not re-verify unitarity; the checker module reports
    on gates, including deliberately broken ones, without raising.
    """

    name: str
    arity: int
    matrix: np.ndarray
    mapping: BasisMapping | None = None
    parameter: float | None = None


def identity_gate() -> Gate:
    mapping = BasisMapping(1, (("0", ket("0")), ("1", ket("1"))))
    return Gate("I", 1, np.eye(2, dtype=np.complex128), mapping)


def pauli_x() -> Gate:
    mapping = BasisMapping(1, (("0", ket("1")), ("1", ket("0"))))
    matrix = as_matrix([[0, 1], [1, 0]])
    return Gate("X", 1, matrix, mapping)


def phase_shift(phi: float) -> Gate:
    """R(phi): leaves |0> alone and multiplies |1> by e^(i*phi)."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phase angle must be finite, got {phi!r}")
    phase = cmath.exp(1j * phi)
    mapping = BasisMapping(1, (("0", ket("0")), ("1", ket("1", phase))))
    matrix = as_matrix([[1, 0], [0, phase]])
    return Gate("R", 1, matrix, mapping, parameter=phi)


def pauli_z() -> Gate:
    mapping = BasisMapping(1, (("0", ket("0")), ("1", ket("1", -1.0))))
    matrix = as_matrix([[1, 0], [0, -1]])
    return Gate("Z", 1, matrix, mapping)


def hadamard() -> Gate:
    # Four pairs, quoted over the {0, +, 1, -} alphabet; mapping_to_matrix
    # checks the redundant two against the induced matrix.
    mapping = BasisMapping(
        1,
        (
            ("0", ket("+")),
            ("+", ket("0")),
            ("1", ket("-")),
            ("-", ket("1")),
        ),
    )
    matrix = as_matrix([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]])
    return Gate("H", 1, matrix, mapping)


def cnot() -> Gate:
    """Controlled NOT; the first (most significant) qubit is the control."""
    mapping = BasisMapping(
        2,
        (
            ("00", ket("00")),
            ("01", ket("01")),
            ("10", ket("11")),
            ("11", ket("10")),
        ),
    )
    matrix = as_matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return Gate("CNOT", 2, matrix, mapping)


_FIXED_GATES = {
    "I": identity_gate,
    "X": pauli_x,
    "Z": pauli_z,
    "H": hadamard,
    "CNOT": cnot,
}


def gate(name: str, parameter: float | None = None) -> Gate:
    """Look up a built-in gate by canonical name."""
    if name == "R":
        if parameter is None:
            raise ValueError("gate R requires an angle parameter")
        return phase_shift(parameter)
    if parameter is not None:
        raise ValueError(f"gate {name} takes no parameter")
    try:
        return _FIXED_GATES[name]()
    except KeyError:
        raise ValueError(f"unknown gate name {name!r}") from None


def builtin_gates() -> tuple[Gate, ...]:
    """One instance of every fixed built-in (R excluded: it needs an angle)."""
    return tuple(factory() for factory in _FIXED_GATES.values())
