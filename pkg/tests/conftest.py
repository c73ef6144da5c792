"""Shared pytest hooks: collects acceptance verdicts and prints them last."""

_VERDICTS = {}


def record(criterion, title, ok, detail=""):
    _VERDICTS[str(criterion)] = (title, ok, detail)


def _order(key):
    digits = "".join(c for c in key if c.isdigit())
    return int(digits), key


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_VERDICTS, key=_order):
        title, ok, detail = _VERDICTS[key]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  criterion {key:>3}  {title}: {detail}")
