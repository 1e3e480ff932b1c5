"""Qubit calibration analytics and quantum circuit optimization workbench."""

__version__ = "0.1.0"
