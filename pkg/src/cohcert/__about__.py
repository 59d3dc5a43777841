"""Metadata for the cohcert package."""

__title__ = "cohcert"
__version__ = "0.1.0"
__description__ = "Semi-device-independent certification of quantum coherence"
__author__ = ""
__license__ = ""
