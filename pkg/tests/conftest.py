from __future__ import annotations

import pytest

from pdmod import parse_system

# Worked systems used across the suite, in the text format.
SYSTEMS = {
    "macaulay": "n=3\ny[0,0,2]=0\ny[1,0,1]-y[0,1,0]=0\n",
    "macaulay_inv": "n=3\ny[0,0,2]=0\ny[0,1,1]=0\ny[0,2,0]=0\ny[1,0,1]-y[0,1,0]=0\n",
    "gap": "n=3\ny[0,0,2]=0\ny[0,1,1]=0\ny[1,0,1]=0\n",
    "divergence": "n=4 m=3\ny1[0,0,0,1]=0\ny2[0,0,0,1]=0\ny3[0,0,0,1]=0\ny3[0,0,1,0]+y2[0,1,0,0]+y1[1,0,0,0]=0\n",
    "primary2": "n=2\ny[3,0]=0\ny[0,2]=0\ny[1,1]=0\n",
    "primary3": "n=3\ny[0,0,2]=0\ny[0,1,1]-y[2,0,0]=0\ny[0,2,0]=0\n",
    "two_points": "n=3\ny[0,0,2]=0\ny[0,1,1]-y[1,0,1]=0\ny[0,2,0]-y[1,1,0]=0\n",
    "family": "n=2 params=a\ny[0,2]=0\ny[1,1]-a*y[0,1]=0\ny[2,0]-a*y[1,0]=0\n",
    "mixed": "n=2\ny[0,2]=0\ny[1,1]=0\n",
    "coupled": "n=1 m=3 params=a\ny1[1]-a*y2[0]-y3[1]=0\ny1[0]-y2[1]+y3[1]=0\n",
    "oscillator": "n=1\ny[2]-y[0]=0\n",
    "n4": "n=4\ny[0,0,0,2]=0\ny[0,0,1,1]=0\ny[0,0,2,0]=0\ny[0,1,0,1]-y[1,0,1,0]=0\n",
    "cross": "n=3\ny[1,0,0]=0\ny[0,1,1]=0\n",
}


@pytest.fixture
def system():
    return lambda name: parse_system(SYSTEMS[name])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
