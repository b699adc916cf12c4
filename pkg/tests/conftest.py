"""Session-scoped fixtures shared across the suite."""

from __future__ import annotations

import pytest

from curvekit.group_core import GroupPresentation
from curvekit.surface_model import SurfaceSig, build_standard


@pytest.fixture(scope="session")
def closed2():
    return GroupPresentation(2, 0)


@pytest.fixture(scope="session")
def ms20():
    return build_standard(SurfaceSig(2, 0))


@pytest.fixture(scope="session")
def ms21():
    return build_standard(SurfaceSig(2, 1))


@pytest.fixture(scope="session")
def bounded21():
    return GroupPresentation(2, 1)


@pytest.fixture(scope="session")
def closed3():
    return GroupPresentation(3, 0)


@pytest.fixture(scope="session")
def hyp2():
    from oracles import HyperbolicModel

    return HyperbolicModel(2, 0)


@pytest.fixture(scope="session")
def hyp21():
    from oracles import HyperbolicModel

    return HyperbolicModel(2, 1)
