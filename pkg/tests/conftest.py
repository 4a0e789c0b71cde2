import pytest

from tests.figures import fig5, load_figure


@pytest.fixture
def fig1():
    return load_figure('fig1')


@pytest.fixture
def fig2():
    return load_figure('fig2')


@pytest.fixture
def fig3():
    return load_figure('fig3')


@pytest.fixture
def fig4():
    return load_figure('fig4')


@pytest.fixture
def fig5k5():
    return load_figure('fig5k5')


@pytest.fixture
def fig5_family():
    return fig5
