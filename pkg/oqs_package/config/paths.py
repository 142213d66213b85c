# oqs_package/config/paths.py
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

# Directories
CONFIG_DIR = BASE_DIR / "config"


# Config files
SOLVER_CONFIG_PATH = CONFIG_DIR / "solver.json"
TWO_TLS_CONFIG_PATH = CONFIG_DIR / "two_tls.json"


def get_solver_config_path():
    return SOLVER_CONFIG_PATH


def get_two_tls_config_path():
    return TWO_TLS_CONFIG_PATH
