# oqs_package/utils/config_helper.py
import json
from ..config.paths import (
    get_solver_config_path,
    get_two_tls_config_path,
)


# Load configuration from JSON
def load_config(config_path):
    """
    Loads the configuration from a JSON file.

    Args:
        config_path (str): The file path to the configuration JSON file.

    Returns:
        dict: The loaded configuration as a dictionary.
    """
    with open(config_path, "r", encoding="utf-8") as file:
        config = json.load(file)
        return config


def get_kwargs(config, key):
    """
    Retrieves the keyword arguments for a specific key from the configuration dictionary.

    Args:
        config (dict): The full configuration dictionary.
        key (str): The key to retrieve the keyword arguments for.

    Returns:
        The value stored under "kwargs" for the specified key, or None if the key is not found.
    """
    kwargs = config.get("kwargs", {})
    return kwargs.get(key, None)


def get_solver_config():
    """
    Retrieves the solver configuration.

    Returns:
        dict: The solver configuration.
    """
    return load_config(get_solver_config_path())


def get_two_tls_config():
    """
    Retrieves the configuration of the builtin two two-level-system example.

    Returns:
        dict: The two-TLS configuration.
    """
    return load_config(get_two_tls_config_path())


def _solver_kwarg(key):
    return get_kwargs(get_solver_config(), key)


def get_hermiticity_tolerance():
    """
    Retrieves the relative Hermiticity tolerance.

    Returns:
        float: Tolerance relative to the largest matrix entry.
    """
    return _solver_kwarg("hermiticity_tolerance")


def get_degeneracy_tolerance():
    """
    Retrieves the relative degeneracy tolerance.

    Returns:
        float: Minimum level gap relative to the spectral range.
    """
    return _solver_kwarg("degeneracy_tolerance")


def get_epsilon_s_relative():
    """
    Retrieves the relative coupling threshold used to decide which entries of S vanish.

    Returns:
        float: Threshold relative to the largest coupling-matrix entry.
    """
    return _solver_kwarg("epsilon_s_relative")


def get_com_tolerance_factor():
    """
    Retrieves the factor multiplying lambda^2 * max G for Lindblad residual acceptance.

    Returns:
        float: The COM tolerance factor.
    """
    return _solver_kwarg("com_tolerance_factor")


def get_trace_tolerance():
    return _solver_kwarg("trace_tolerance")


def get_positivity_tolerance():
    return _solver_kwarg("positivity_tolerance")


def get_integration_method():
    """
    Retrieves the scipy integration method used for population dynamics.

    Returns:
        str: A `scipy.integrate.solve_ivp` method name, or "exact".
    """
    return _solver_kwarg("integration_method")


def get_rtol():
    return _solver_kwarg("rtol")


def get_atol():
    return _solver_kwarg("atol")


def get_brute_force_max_dim():
    """
    Retrieves the largest dimension allowed for exhaustive COM enumeration.

    Returns:
        int: The enumeration guard.
    """
    return _solver_kwarg("brute_force_max_dim")


def get_brute_force_chunk():
    return _solver_kwarg("brute_force_chunk")


def get_kernel_rcond():
    """
    Retrieves the relative singular-value threshold for null-space computations.

    Returns:
        float: The rcond passed to `scipy.linalg.null_space`.
    """
    return _solver_kwarg("kernel_rcond")


def get_kms_sample_frequencies():
    """
    Retrieves the frequencies at which validation samples the KMS identity.

    Returns:
        list: Positive frequencies.
    """
    return _solver_kwarg("kms_sample_frequencies")


def get_relaxation_multiple():
    """
    Retrieves how many slowest relaxation times an open-ended evolution runs for.

    Returns:
        float: The multiple.
    """
    return _solver_kwarg("relaxation_multiple")


def get_default_samples():
    return _solver_kwarg("default_samples")


def get_coherence_convention():
    """
    Retrieves the default coherence decay convention.

    Returns:
        str: "literal" or "outflow".
    """
    return _solver_kwarg("coherence_convention")


def get_significant_digits():
    return _solver_kwarg("significant_digits")


def get_log_level():
    return _solver_kwarg("log_level")


def get_two_tls_defaults():
    """
    Retrieves the default two-TLS parameters.

    Returns:
        dict: Parameters of the builtin two-TLS model.
    """
    return dict(get_two_tls_config().get("kwargs", {}))


def get_figure1_initial_conditions():
    """
    Retrieves the (p_3, p_4) initial conditions of the relaxation figure.

    Returns:
        list: Pairs of initial populations.
    """
    return get_two_tls_config().get("figure1", {}).get("initial_conditions", None)


def get_figure1_t_max():
    return get_two_tls_config().get("figure1", {}).get("t_max", None)


def get_noninteracting_overrides():
    """
    Retrieves the parameter overrides of the non-interacting two-TLS example.

    Returns:
        dict: Overrides applied on top of the defaults.
    """
    return dict(get_two_tls_config().get("noninteracting", {}))
