import pytest

import netcap
from netcap.codes import verify_code
from netcap.network import Network
from netcap.problems.constructions import CODES
from netcap.tests.base_test import BaseTest

CODE_FUNCTIONS = {
    "max_upper": "max2",
    "max_upper_swapped": "max2",
    "max_reverse_butterfly": "max2",
    "linear_three_source": "linear_that",
}


class TestProblems(BaseTest):
    def test_basic_import(self):
        assert "problems" in dir(netcap)

    def test_problem_names(self):
        names = netcap.problems.get_problem_names()
        assert "three_source" in names
        assert "max2" in names
        assert set(CODES) <= set(names)

    def test_load_network(self):
        net = netcap.problems.load_network("reverse_butterfly")
        assert isinstance(net, Network)
        assert net.num_sources == 2

    def test_bogus_names(self):
        with pytest.raises(ValueError):
            netcap.problems.load_network("bogus_name")
        with pytest.raises(ValueError):
            netcap.problems.load_function(None)
        with pytest.raises(ValueError, match="known codes"):
            netcap.problems.load_code("bogus_name")

    @pytest.mark.parametrize("name", sorted(CODES))
    def test_packaged_codes_compute_their_function(self, name):
        net, code = netcap.problems.load_code(name)
        f = netcap.problems.load_function(CODE_FUNCTIONS[name])
        assert verify_code(code, net, f).ok
