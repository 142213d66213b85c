# oqs_package/coms/report.py

from ..model.system import SystemModel, EigenSystem
from ..decomposition.partition import SubspacePartition
from ..dynamics.lindblad import lindblad_superoperator
from .observables import (
    ComBasis,
    DiagonalObservable,
    com_condition_residual,
    condition_tolerance,
    lindblad_residual,
    lindblad_tolerance,
)


def com_report(
    model: SystemModel,
    eig: EigenSystem,
    basis: ComBasis,
    named: list[tuple[str, DiagonalObservable]] | None = None,
    atoms: SubspacePartition | None = None,
) -> dict:
    """
    COM report with 1-based block numbers and every tolerance used.

    Args:
        model (SystemModel): The open system.
        eig (EigenSystem): Its eigenbasis.
        basis (ComBasis): The block projectors.
        named (list): Optional named constants.
        atoms (SubspacePartition): Optional brute-force atoms to compare with the partition.

    Returns:
        dict: The report.
    """
    superoperator = lindblad_superoperator(model, eig, basis.partition.epsilon_s)
    condition = [com_condition_residual(eig, p) for p in basis.projectors]
    lindblad = [lindblad_residual(model, p, eig, superoperator) for p in basis.projectors]
    condition_limit = condition_tolerance(basis.projectors[0], basis.partition.epsilon_s)
    lindblad_limit = lindblad_tolerance(model)
    report = {
        "projectors": [
            {"block": number + 1, "values": projector.values.tolist()}
            for number, projector in enumerate(basis.projectors)
        ],
        "independent_count": basis.independent_count,
        "residuals": {"condition": condition, "lindblad": lindblad},
        "named": [],
        "tolerances": {
            "epsilon_s": basis.partition.epsilon_s,
            "condition": condition_limit,
            "lindblad": lindblad_limit,
        },
        "passed": bool(max(condition) <= condition_limit and max(lindblad) <= lindblad_limit),
    }
    for name, obs in named or []:
        report["named"].append(
            {
                "name": name,
                "values": obs.values.tolist(),
                "block_coefficients": obs.block_values(basis.partition),
                "residual": com_condition_residual(eig, obs),
            }
        )
    if atoms is not None:
        report["brute_force"] = {
            "atoms": [[i + 1 for i in atom] for atom in atoms.blocks],
            "atoms_match_partition": atoms.blocks == basis.partition.blocks,
        }
        report["passed"] = report["passed"] and atoms.blocks == basis.partition.blocks
    return report
