import pytest

from netcap import problems


class BaseTest:
    @pytest.fixture(scope="session")
    def three_source(self):
        return problems.load_network("three_source")

    @pytest.fixture(scope="session")
    def arith_sum3(self):
        return problems.load_function("arith_sum3")

    @pytest.fixture(scope="session")
    def linear_that(self):
        return problems.load_function("linear_that")

    @pytest.fixture(scope="session")
    def reverse_butterfly(self):
        return problems.load_network("reverse_butterfly")

    @pytest.fixture(scope="session")
    def upper(self):
        return problems.load_network("reverse_butterfly_upper")

    @pytest.fixture(scope="session")
    def lower(self):
        return problems.load_network("reverse_butterfly_lower")

    @pytest.fixture(scope="session")
    def max2(self):
        return problems.load_function("max2")

    @pytest.fixture(scope="session")
    def max_upper(self):
        return problems.load_code("max_upper")[1]

    @pytest.fixture(scope="session")
    def max_reverse_butterfly(self):
        return problems.load_code("max_reverse_butterfly")[1]

    @pytest.fixture(scope="session")
    def linear_three_source(self):
        return problems.load_code("linear_three_source")[1]

    @pytest.fixture(autouse=True)
    def initdir(self, tmpdir):
        tmpdir.chdir()
