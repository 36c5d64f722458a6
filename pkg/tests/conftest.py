from importlib import resources

import pytest

from futamix.guest import asset_w, load_interp_w
from futamix.lang import load_program, parse_program


def asset_path(*parts):
    return str(resources.files("futamix").joinpath("assets", *parts))


def golden_text(name):
    return resources.files("futamix").joinpath("assets", "golden", name).read_text()


@pytest.fixture(scope="session")
def pow_l():
    return load_program(asset_path("pow.fcl"))


@pytest.fixture(scope="session")
def identity_l():
    return load_program(asset_path("identity.fcl"))


@pytest.fixture(scope="session")
def interp_w():
    return load_interp_w()


@pytest.fixture(scope="session")
def pow_w():
    return asset_w("pow.w")


@pytest.fixture(scope="session")
def identity_w():
    return asset_w("identity.w")


@pytest.fixture(scope="session")
def square_l():
    return parse_program(golden_text("pow_square.fcl"))


@pytest.fixture(scope="session")
def compiler(interp_w):
    from futamix.projections import project2
    return project2(interp_w)


@pytest.fixture(scope="session")
def cogen():
    from futamix.projections import project3
    return project3()


# acceptance lines, printed once at the end of the session
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
