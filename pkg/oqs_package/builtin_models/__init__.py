# oqs_package/builtin_models/__init__.py
from .two_tls import (
    BUILTIN_NAMES,
    TwoTlsSpec,
    TwoTlsAnalytics,
    load_two_tls_spec,
    builtin_spec,
    two_tls_model,
    two_tls_analytics,
    figure1_setup,
    psi_populations,
)
