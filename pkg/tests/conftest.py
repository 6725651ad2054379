import pytest

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: (int(c.rstrip("abcdefg")), c)):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {cid}: {detail}")


@pytest.fixture
def record_acceptance():
    def record(cid: str, ok: bool, detail: str) -> None:
        ACCEPTANCE[cid] = (ok, detail)
        print(f"{'PASS' if ok else 'FAIL'}  criterion {cid}: {detail}")

    return record
