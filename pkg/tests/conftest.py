from __future__ import annotations

# acceptance criteria append (number, title, passed, detail) here
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
