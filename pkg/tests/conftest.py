import pathlib
import sys

from hypothesis import settings

sys.path.insert(0, str(pathlib.Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_RESULTS: dict = {}


def record(number: int, title: str, passed: bool, detail: str) -> None:
    line = f"criterion {number} ({title}): {'PASS' if passed else 'FAIL'} - {detail}"
    _RESULTS[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[n])
