# oqs_package/tests/__init__.py
