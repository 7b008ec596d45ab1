"""Packaged example networks, target functions and codes."""
from netcap.problems.problems import (
    get_problem_names,
    load_code,
    load_function,
    load_network,
)

__all__ = ("get_problem_names", "load_code", "load_function", "load_network")
