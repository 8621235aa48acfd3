import logging

import numpy as np
import pytest

from utsuper import charoracle, ffgroup, logger, models, superalg
from utsuper.rootsys import Root

# degree histograms {exponent: count} of U_n(q)
HISTOGRAMS = {
    (3, 2): {0: 4, 1: 1},
    (3, 3): {0: 9, 1: 2},
    (4, 2): {0: 8, 1: 6, 2: 2},
    (4, 3): {0: 27, 1: 24, 2: 6},
    (5, 2): {0: 16, 1: 20, 2: 18, 3: 6, 4: 1},
}


def root_element(group: ffgroup.GroupHandle, *pairs) -> np.ndarray:
    """Entry row of a product of root elements given as ``((i, j), value)`` pairs."""
    row = group.identity
    for root, value in pairs:
        row = group.mul(row, group.root_row(Root(*root), value))
    return row

@pytest.fixture(autouse=True)
def reset_state():
    """Reset module-level configuration, memo tables and the logger between tests."""
    original_logger = logger.CUSTOM_LOGGER
    models.config = models.OracleConfig()
    superalg.clear_memo()
    ffgroup.clear_caches()
    charoracle.clear_caches()
    yield
    models.config = models.OracleConfig()
    logger.CUSTOM_LOGGER = original_logger
    logger.CUSTOM_LOGGER.setLevel(logging.DEBUG)

@pytest.fixture
def cache_dir(tmp_path):
    models.config = models.env_loader(cache_dir=tmp_path / "cache")
    return tmp_path / "cache"
