# oqs_package/model/__init__.py
from .spectral import SpectralFunction, spectral_value, spectral_values
from .system import SystemModel, EigenSystem, load_model, dump_model, eigenbasis
from .validation import ValidationReport, CheckResult, validate
