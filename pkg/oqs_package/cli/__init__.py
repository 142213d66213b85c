# oqs_package/cli/__init__.py
from .commands import CommandRequest, parse_args, run, main
from .analysis import Analysis
