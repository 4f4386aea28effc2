# src/sullivan_tc/config/__init__.py
"""Configuration package for the project."""
from .config import DEFAULTS, MODELS_DIR, load_defaults, setup_logging

__all__ = ["DEFAULTS", "MODELS_DIR", "load_defaults", "setup_logging"]
