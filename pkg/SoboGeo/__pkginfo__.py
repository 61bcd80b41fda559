# Data used both in the package and by setup.py

__version__ = '1.0.0'
