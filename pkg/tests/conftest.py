import json
from fractions import Fraction
from pathlib import Path

import pytest

from covergraph.graph import from_edge_list

DATA = Path(__file__).parent / "data"


def _atlas():
    rows = json.loads((DATA / "atlas6.json").read_text())["graphs"]
    out = []
    for row in rows:
        G = from_edge_list(row["n"], [tuple(e) for e in row["edges"]], name=f"atlas{row['atlas']}")
        row = dict(row, chi_c=Fraction(row["chi_c"]), min_imbalance=Fraction(row["min_imbalance"]))
        out.append((G, row))
    return out


ATLAS = _atlas()


@pytest.fixture(scope="session")
def atlas():
    """Every graph on 1..6 vertices with frozen brute-force invariants."""
    return ATLAS


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split("]")[0].split()[-1])):
            terminalreporter.write_line(line)
