"""Shared fixtures and frozen reference values.

The two-decimal ratio trajectories below are the published figures for the
bundled seven-journal 2013 citation matrix; they were frozen here once and
the tests compare against them, never the other way around.
"""

from __future__ import annotations

import numpy as np
import pytest

from pwrkit import CitationMatrix, jasist_plus_matrix

# k = 1..7 ratio trajectory per journal, self-citations included.
RATIOS_WITH_SELF = {
    "INFORM PROCESS MANAG": (1.49, 1.72, 1.76, 1.76, 1.76, 1.76, 1.77),
    "JASIST": (1.38, 1.48, 1.51, 1.53, 1.53, 1.53, 1.54),
    "J INF SCI": (0.91, 1.19, 1.36, 1.43, 1.45, 1.46, 1.46),
    "SCIENTOMETRICS": (1.00, 0.98, 0.98, 0.98, 0.98, 0.98, 0.97),
    "INFORM RES": (0.44, 0.37, 0.39, 0.40, 0.41, 0.41, 0.41),
    "J DOC": (1.30, 1.38, 1.52, 1.60, 1.63, 1.64, 1.64),
    "J INFORMETR": (0.56, 0.48, 0.47, 0.47, 0.47, 0.47, 0.47),
}

# Same trajectory with the diagonal removed before iterating.
RATIOS_WITHOUT_SELF = {
    "INFORM PROCESS MANAG": (1.76, 1.93, 1.75, 1.80, 1.78, 1.79, 1.79),
    "JASIST": (1.75, 1.52, 1.61, 1.57, 1.59, 1.58, 1.58),
    "J INF SCI": (0.88, 1.23, 1.23, 1.25, 1.25, 1.25, 1.25),
    "SCIENTOMETRICS": (0.99, 0.99, 0.98, 0.99, 0.98, 0.99, 0.98),
    "INFORM RES": (0.32, 0.43, 0.41, 0.42, 0.42, 0.42, 0.42),
    "J DOC": (1.41, 1.46, 1.46, 1.48, 1.47, 1.48, 1.48),
    "J INFORMETR": (0.42, 0.49, 0.48, 0.48, 0.48, 0.48, 0.48),
}

# k = 1 ratios (the citation factor), in matrix label order.
CITATION_FACTOR_REFERENCE = (1.49, 1.38, 0.91, 1.00, 0.44, 1.30, 0.56)

GRAND_TOTAL_REFERENCE = 6979.0


def build(labels: str, rows) -> CitationMatrix:
    """Terse matrix constructor: space-separated labels plus nested rows."""
    return CitationMatrix(tuple(labels.split()), np.asarray(rows, dtype=np.float64))


@pytest.fixture(scope="session")
def journals() -> CitationMatrix:
    return jasist_plus_matrix()
