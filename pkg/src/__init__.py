# src/__init__.py
"""motifcalc - exact computer algebra for linear generalized 1-motifs over Q."""

import logging

# Library code only creates loggers; handlers are installed by main.py.
logging.getLogger(__name__).addHandler(logging.NullHandler())

# Package version
__version__ = "1.0.0"
