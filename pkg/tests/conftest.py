from __future__ import annotations

import contextlib
import time

import pytest

_RESULTS: dict[int, str] = {}


class _Recorder:
    def __init__(self, number: int, title: str) -> None:
        self.number = number
        self.title = title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def skip(self, reason: str) -> None:
        _RESULTS[self.number] = f"criterion {self.number} [{self.title}]: NOT RUN ({reason})"
        pytest.skip(reason)

    @contextlib.contextmanager
    def check(self):
        start = time.perf_counter()
        try:
            yield self
        except pytest.skip.Exception:
            raise
        except BaseException:
            self._record("FAIL", start)
            raise
        self._record("PASS", start)

    def _record(self, status: str, start: float) -> None:
        extra = "; ".join(self.notes)
        took = time.perf_counter() - start
        _RESULTS[self.number] = (
            f"criterion {self.number} [{self.title}]: {status} ({took:.1f} s{'; ' + extra if extra else ''})"
        )


@pytest.fixture
def criterion():
    return _Recorder


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[number])
