from __future__ import annotations

import pytest
from hypothesis import settings

from ddkit.instances import Bounds

settings.register_profile("ddkit", max_examples=60, deadline=None)
settings.load_profile("ddkit")

# A family small enough for unit tests; the acceptance suite uses the defaults.
SMALL = Bounds(max_order=6, max_rank=3)


@pytest.fixture(scope="session")
def small_bounds() -> Bounds:
    return SMALL


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Remember one acceptance verdict; printed at the end of the session."""
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
