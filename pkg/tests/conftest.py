import sys

import pytest

from bgdkit import CATALOG_IDS, catalog


@pytest.fixture(scope="session")
def files():
    return {ident: catalog(ident) for ident in CATALOG_IDS}


@pytest.fixture(scope="session")
def bgd(files):
    """Catalog bialgebroids by id."""
    return {ident: of.bialgebroids[ident] for ident, of in files.items() if ident in of.bialgebroids}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        title, ok = mod.RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
