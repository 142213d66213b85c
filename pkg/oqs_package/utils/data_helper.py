# oqs_package/utils/data_helper.py
from typing import TypeAlias
import json
import os
import numpy as np

from .config_helper import get_significant_digits
from .error_helper import ModelValidationError


# Type alias for complex square matrices (Hamiltonian, coupling operator, density matrix)
Matrix: TypeAlias = np.ndarray

# Type alias for real vectors indexed by eigenstate
Vector: TypeAlias = np.ndarray

# Type alias for one invariant block: ascending 0-based eigenstate indices
Block: TypeAlias = tuple[int, ...]


def check_type(item, expected_type):
    assert isinstance(
        item, expected_type
    ), f"Expected item to be of type {expected_type}, but got {type(item)}"


def frozen_array(values, dtype=None) -> np.ndarray:
    """
    Copies values into a read-only numpy array.

    Args:
        values: Anything `np.array` accepts.
        dtype: Optional dtype.

    Returns:
        np.ndarray: A non-writeable copy.
    """
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def decode_matrix(data, name: str) -> Matrix:
    """
    Decodes a row-major matrix of [re, im] pairs (plain reals are accepted as well).

    Args:
        data (list): The encoded matrix.
        name (str): Field name used in error messages.

    Returns:
        np.ndarray: The complex matrix.
    """
    if not isinstance(data, list) or len(data) == 0:
        raise ModelValidationError(f"'{name}' must be a non-empty list of rows")
    n_cols = None
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise ModelValidationError(f"'{name}' row {i} is not a list")
        if n_cols is None:
            n_cols = len(row)
        elif len(row) != n_cols:
            raise ModelValidationError(f"'{name}' row {i} has {len(row)} entries, expected {n_cols}")
        decoded = []
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)) and not isinstance(entry, bool):
                decoded.append(complex(entry, 0.0))
            elif isinstance(entry, list) and len(entry) == 2:
                try:
                    decoded.append(complex(float(entry[0]), float(entry[1])))
                except (TypeError, ValueError) as e:
                    raise ModelValidationError(f"'{name}'[{i}][{j}] is not an [re, im] pair of reals: {e}") from e
            else:
                raise ModelValidationError(f"'{name}'[{i}][{j}] is not a number or an [re, im] pair")
        rows.append(decoded)
    matrix = np.array(rows, dtype=complex)
    if matrix.shape[0] != matrix.shape[1]:
        raise ModelValidationError(f"'{name}' must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ModelValidationError(f"'{name}' contains non-finite entries")
    return matrix


def encode_matrix(matrix: Matrix) -> list:
    """
    Encodes a complex matrix as a row-major list of [re, im] pairs.
    """
    matrix = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def round_floats(data, digits: int | None = None):
    """
    Recursively rounds every float in a JSON-like structure to a fixed number of significant digits.

    Args:
        data: Nested dicts, lists, tuples, numpy scalars and arrays.
        digits (int): Significant digits. Defaults to the configured value.

    Returns:
        The same structure with plain Python floats.
    """
    digits = digits or get_significant_digits()
    if isinstance(data, dict):
        return {str(k): round_floats(v, digits) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_floats(v, digits) for v in data]
    if isinstance(data, np.ndarray):
        return round_floats(data.tolist(), digits)
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        value = float(data)
        if not np.isfinite(value):
            return str(value)
        # -0.0 and 0.0 print the same
        return float(f"{value:.{digits}g}") + 0.0
    return data


def to_canonical_json(data, digits: int | None = None) -> str:
    """
    Serialises a report with sorted keys and fixed float precision so identical inputs give identical bytes.
    """
    return json.dumps(round_floats(data, digits), sort_keys=True, indent=2) + "\n"


def save_json(data, file_path, canonical: bool = True):
    """
    Saves a JSON document, creating the parent directory if needed.

    Args:
        data: The document.
        file_path (str): Target path.
        canonical (bool): Use the canonical report formatting.
    """
    directory = os.path.dirname(os.path.abspath(file_path))
    if not os.path.exists(directory):
        os.makedirs(directory)
    with open(file_path, "w", encoding="utf-8") as f:
        if canonical:
            f.write(to_canonical_json(data))
        else:
            json.dump(data, f, indent=2)


def load_json(file_path):
    """
    Loads a JSON document.

    Args:
        file_path (str): Source path.

    Returns:
        The parsed document.
    """
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)
