# oqs_package/cli/initial_state.py

import json
from pathlib import Path
import numpy as np

from ..model.system import EigenSystem
from ..dynamics.evolution import DensityState
from ..utils.data_helper import decode_matrix
from ..utils.error_helper import DensityStateError, ModelValidationError, UsageError

BASES = ("eigen", "input")


def parse_initial_state(document: dict, eig: EigenSystem) -> DensityState:
    """
    Decodes an initial-state document.

    Args:
        document (dict): {"populations": [...]} over ascending-energy eigenstates, or
            {"density_matrix": [[[re, im], ...], ...], "basis": "eigen" | "input"}.
        eig (EigenSystem): The model's eigenbasis.

    Returns:
        DensityState: The validated state in the eigenbasis.
    """
    if not isinstance(document, dict):
        raise DensityStateError("Initial state must be a JSON object")
    if "populations" in document:
        populations = document["populations"]
        if not isinstance(populations, list) or len(populations) != eig.dimension:
            raise DensityStateError(f"'populations' must list {eig.dimension} numbers")
        try:
            values = np.array([float(p) for p in populations])
        except (TypeError, ValueError) as e:
            raise DensityStateError(f"'populations' must hold reals: {e}") from e
        return DensityState.from_populations(values)
    if "density_matrix" in document:
        basis = document.get("basis", "eigen")
        if basis not in BASES:
            raise DensityStateError(f"Unknown basis '{basis}', expected one of {BASES}")
        try:
            matrix = decode_matrix(document["density_matrix"], "density_matrix")
        except ModelValidationError as e:
            raise DensityStateError(str(e)) from e
        if matrix.shape[0] != eig.dimension:
            raise DensityStateError(f"Density matrix has dimension {matrix.shape[0]}, expected {eig.dimension}")
        if basis == "input":
            matrix = eig.to_eigenbasis(matrix)
        return DensityState(matrix=matrix)
    raise DensityStateError("Initial state needs 'populations' or 'density_matrix'")


def load_initial_state(path, eig: EigenSystem) -> DensityState:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Initial state file not found: {path}")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise UsageError(f"Initial state file is not valid JSON: {e}") from e
    return parse_initial_state(document, eig)
