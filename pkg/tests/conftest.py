from hypothesis import settings

settings.register_profile("ybe", deadline=None, max_examples=50)
settings.load_profile("ybe")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
