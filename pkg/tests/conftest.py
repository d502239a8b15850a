ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_runtest_makereport(item, call):
    number = getattr(item.function, "criterion", None)
    if number is not None and call.when == "call":
        detail = ACCEPTANCE.get(number, (None, ""))[1]
        ACCEPTANCE[number] = (call.excinfo is None, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
