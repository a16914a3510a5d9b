import pytest

from ftnshare import ChannelParams, PulseSpectrum


@pytest.fixture
def rrc_half():
    return PulseSpectrum.rrc(0.5)


@pytest.fixture
def ch10():
    return ChannelParams.from_snr(10.0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
