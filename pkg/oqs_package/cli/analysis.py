# oqs_package/cli/analysis.py

import sys
import logging
import numpy as np

from ..model.system import SystemModel, EigenSystem, eigenbasis
from ..model.validation import ValidationReport, validate
from ..decomposition.partition import SubspacePartition, invariant_partition, partition_report
from ..coms.observables import ComBasis, basis_projectors, named_coms_two_tls
from ..coms.brute_force import brute_force_com_atoms
from ..coms.report import com_report
from ..dynamics.rates import RateMatrix, rate_matrix, coherence_decay_rates
from ..dynamics.evolution import DensityState, Trajectory, evolve_density
from ..stationary.gibbs import StationaryPrediction, stationary_state, state_distance
from ..stationary.kernel import relaxation_rate
from ..stationary.report import stationary_report
from ..utils.config_helper import (
    get_log_level,
    get_coherence_convention,
    get_relaxation_multiple,
    get_figure1_t_max,
    get_integration_method,
    get_rtol,
    get_atol,
    get_trace_tolerance,
    get_positivity_tolerance,
)
from ..utils.data_helper import check_type
from ..utils.error_helper import UsageError


class Analysis:
    """
    Runs the stages of the analysis of one model, computing each stage once.

    Stages: eigensystem -> partition -> COM basis / rates -> stationary prediction -> trajectory.
    """

    def __init__(self, model: SystemModel, epsilon_s: float | None = None, convention: str | None = None):
        check_type(model, SystemModel)
        self.model = model
        self.epsilon_s = epsilon_s
        self.convention = convention or get_coherence_convention()

        self.eig = None
        self.partition = None
        self.rates = None

        # logs go to stderr, stdout may carry a report
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, get_log_level(), logging.INFO),
            format="%(asctime)s - %(levelname)s - %(message)s",
        )

    def load_eigensystem(self) -> EigenSystem:
        """
        Diagonalises the Hamiltonian.
        """
        if self.eig is None:
            logging.info("Building eigenbasis of a %d-level model", self.model.dimension)
            self.eig = eigenbasis(self.model)
        check_type(self.eig, EigenSystem)
        return self.eig

    def load_partition(self) -> SubspacePartition:
        """
        Splits the eigenbasis into invariant subspaces.
        """
        if self.partition is None:
            self.partition = invariant_partition(self.load_eigensystem(), self.epsilon_s)
        check_type(self.partition, SubspacePartition)
        return self.partition

    def load_com_basis(self) -> ComBasis:
        basis = basis_projectors(self.load_partition())
        logging.info("%d independent constants of motion", basis.independent_count)
        return basis

    def load_rates(self) -> RateMatrix:
        if self.rates is None:
            model = self.model
            self.rates = rate_matrix(
                self.load_eigensystem(),
                model.reservoir,
                model.temperature,
                model.coupling_strength,
                self.load_partition().epsilon_s,
            )
        check_type(self.rates, RateMatrix)
        return self.rates

    def load_stationary(self, rho0: DensityState) -> StationaryPrediction:
        prediction = stationary_state(self.model, rho0, self.load_eigensystem(), self.load_partition())
        check_type(prediction, StationaryPrediction)
        return prediction

    def load_coherence_rates(self) -> np.ndarray:
        model = self.model
        return coherence_decay_rates(
            self.load_eigensystem(),
            model.reservoir,
            model.temperature,
            model.coupling_strength,
            self.convention,
            self.load_partition().epsilon_s,
        )

    def default_t_max(self) -> float:
        """
        The configured horizon of the relaxation example, otherwise a fixed multiple
        of the slowest relaxation time.
        """
        if self.model.name == "figure1" and get_figure1_t_max() is not None:
            return float(get_figure1_t_max())
        rate = relaxation_rate(self.load_rates(), self.load_partition(), self.load_coherence_rates())
        if rate <= 0:
            raise UsageError("Nothing relaxes in this model; pass --t-max explicitly")
        return get_relaxation_multiple() / rate

    def load_trajectory(self, rho0: DensityState, times) -> Trajectory:
        logging.info("Evolving to t = %g on %d samples (%s coherences)", times[-1], len(times), self.convention)
        trajectory = evolve_density(
            self.model,
            rho0,
            times,
            eig=self.load_eigensystem(),
            convention=self.convention,
            epsilon_s=self.load_partition().epsilon_s,
        )
        check_type(trajectory, Trajectory)
        return trajectory

    def verify_report(self) -> tuple[ValidationReport, dict]:
        report = validate(self.model)
        document = report.to_report()
        document["tolerances"] = {
            "hermiticity": self.model.hermiticity_tolerance,
            "degeneracy": self.model.degeneracy_tolerance,
        }
        return report, document

    def decompose_report(self) -> dict:
        report = partition_report(self.load_eigensystem(), self.load_partition())
        report["dimension"] = self.model.dimension
        report["tolerances"] = {"epsilon_s": self.load_partition().epsilon_s}
        return report

    def coms_report(self, brute_force: bool = False) -> dict:
        eig = self.load_eigensystem()
        basis = self.load_com_basis()
        named = None
        if eig.labels is not None and sorted(eig.labels) == [1, 2, 3, 4]:
            named = named_coms_two_tls(eig, basis.partition, interacting=self.is_interacting())
        atoms = brute_force_com_atoms(eig, basis.partition.epsilon_s) if brute_force else None
        return com_report(self.model, eig, basis, named=named, atoms=atoms)

    def stationary_report(self, rho0: DensityState) -> dict:
        report = stationary_report(self.load_rates(), self.load_stationary(rho0))
        return report

    def evolve(self, rho0: DensityState, times, coherences: bool = False):
        """
        Evolves rho0 and compares the final state with the stationary prediction.

        Returns:
            tuple: (pd.DataFrame, summary dict)
        """
        trajectory = self.load_trajectory(rho0, times)
        prediction = self.load_stationary(rho0)
        summary = trajectory.summary(self.load_partition())
        final_state = trajectory.densities[-1]
        summary["l1_distance_to_stationary"] = state_distance(final_state, prediction.assembled.matrix)
        summary["predicted_populations"] = prediction.populations.tolist()
        labels = self.load_eigensystem().labels
        if labels is not None:
            summary["final_populations_by_label"] = {
                str(label): float(p) for label, p in zip(labels, trajectory.final_populations)
            }
        summary["coherence_convention"] = self.convention
        summary["tolerances"] = {
            "epsilon_s": self.load_partition().epsilon_s,
            "integration_method": get_integration_method(),
            "rtol": get_rtol(),
            "atol": get_atol(),
            "trace": get_trace_tolerance(),
            "positivity": get_positivity_tolerance(),
        }
        return trajectory.to_dataframe(coherences=coherences), summary

    def is_interacting(self) -> bool:
        """An off-diagonal Hamiltonian in the input basis means the two-level systems exchange excitations."""
        hamiltonian = np.asarray(self.model.hamiltonian)
        off_diagonal = hamiltonian - np.diag(np.diag(hamiltonian))
        return bool(np.max(np.abs(off_diagonal)) > self.model.hermiticity_epsilon(hamiltonian))
