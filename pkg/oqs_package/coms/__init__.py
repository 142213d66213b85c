# oqs_package/coms/__init__.py
from .observables import (
    DiagonalObservable,
    ComBasis,
    basis_projectors,
    com_condition_residual,
    commutator_residual,
    hamiltonian_commutator_residual,
    lindblad_residual,
    named_coms_two_tls,
    com_expectations,
    is_com,
)
from .brute_force import brute_force_com_atoms, enumerate_projector_coms
from .report import com_report
