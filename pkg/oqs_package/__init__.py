# oqs_package/__init__.py
