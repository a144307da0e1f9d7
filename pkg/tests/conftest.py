import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from torfclass.config import load_config  # noqa: E402
from torfclass.subcat.universe import Universe  # noqa: E402

CONFIGS = os.path.join(os.path.dirname(os.path.dirname(__file__)), "configs")


def config_path(name):
    return os.path.join(CONFIGS, name)


def universe_from(text):
    cfg = load_config(text=text)
    return cfg, Universe(cfg.backend)


@pytest.fixture(scope="session")
def z4():
    return universe_from('ring: "Z/4"\nwindow: {max_length: 3}\n')


@pytest.fixture(scope="session")
def z6():
    return universe_from('ring: "Z/6"\nwindow: {max_length: 3}\n')


@pytest.fixture(scope="session")
def integers():
    return universe_from('ring: "ZZ"\nwindow: {primes: [2, 3], max_exp: 2, max_rank: 1}\n')


@pytest.fixture(scope="session")
def p1():
    return universe_from("ring: P1(GF(2))\nwindow: {twist_min: -4, twist_max: 4, max_rank: 1, "
                         "max_torsion_length: 2, max_point_degree: 2}\n")


@pytest.fixture(scope="session")
def p1_rank2():
    return universe_from("ring: P1(GF(2))\nwindow: {twist_min: -2, twist_max: 2, max_rank: 2, "
                         "max_torsion_length: 1, max_point_degree: 1}\n")


RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
