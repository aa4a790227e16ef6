"""Certified construction of boundaries that make a subvariety a log canonical center."""

__version__ = "0.1.0"
