"""Utility functions for akhsylv."""

from .helpers import format_float, read_matrix, write_csv, write_matrix
from .logger import get_logger

__all__ = ["format_float", "get_logger", "read_matrix", "write_csv", "write_matrix"]
