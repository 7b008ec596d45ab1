"""Load the packaged networks, target functions and codes by name."""
import glob
import os

from pkg_resources import resource_filename

from netcap import functions, network
from netcap.problems import constructions


def get_problem_path():
    """Return the directory holding the packaged network and function files."""
    return resource_filename("netcap", os.path.join("problems", "json"))


def get_problem_paths():
    """Return the paths of every packaged JSON file."""
    return sorted(glob.glob(os.path.join(get_problem_path(), "*.json")))


def _path(name):
    if name is None:
        raise ValueError("Need a problem name")
    for path in get_problem_paths():
        if os.path.splitext(os.path.basename(path))[0] == name:
            return path
    raise ValueError(f"Could not find a problem named {name} in {get_problem_path()}")


def get_problem_names():
    """Names of the packaged networks, functions and codes."""
    files = [os.path.splitext(os.path.basename(path))[0] for path in get_problem_paths()]
    return sorted(files + list(constructions.CODES))


def load_network(name):
    """Load a packaged network, e.g. ``reverse_butterfly``."""
    return network.load_network(_path(name))


def load_function(name):
    """Load a packaged target function, e.g. ``max2``."""
    return functions.load_function(_path(name))


def load_code(name):
    """Build a packaged code on its network.

    Returns
    -------
    network: netcap.network.Network
    code: netcap.codes.NetworkCode
    """
    try:
        network_name, build = constructions.CODES[name]
    except KeyError:
        raise ValueError(
            f"Could not find a code named {name}; known codes are "
            f"{', '.join(sorted(constructions.CODES))}"
        )
    net = load_network(network_name)
    return net, build(net)
