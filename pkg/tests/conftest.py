import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="give slow checks a much larger search budget instead of skipping",
    )


@pytest.fixture
def run_long(request):
    return request.config.getoption("--run-long")
