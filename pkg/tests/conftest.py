from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("suite")

from lcscalc.presets import acfm_rational, acfm_symbolic
from lcscalc.specfile import parse_algebra_text


@pytest.fixture
def acfm111():
    return acfm_rational(1, 1, 1)


@pytest.fixture
def acfm_sym():
    return acfm_symbolic()


@pytest.fixture
def torus4():
    return parse_algebra_text("generators e1 e2 e3 e4\n")
