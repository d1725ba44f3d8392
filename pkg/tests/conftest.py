import time
from contextlib import contextmanager

import pytest
from hypothesis import settings

from kflag.kclasses import flag_variety

# numba compiles kernels on first use; wall-clock deadlines would flag that.
settings.register_profile("kflag", deadline=None)
settings.load_profile("kflag")


@pytest.fixture(scope="session")
def a1():
    return flag_variety("A1")


@pytest.fixture(scope="session")
def a2():
    return flag_variety("A2")


@pytest.fixture(scope="session")
def b2():
    return flag_variety("B2")


@pytest.fixture(scope="session")
def g2():
    return flag_variety("G2")


# ---------------------------------------------------------------------------
# Acceptance-criterion ledger: one PASS/FAIL line per criterion in the summary
# ---------------------------------------------------------------------------

_CRITERIA: dict[int, dict] = {}


class CriterionRecorder:
    @contextmanager
    def __call__(self, number: int, title: str, budget_s: float, part: str = ""):
        entry = _CRITERIA.setdefault(number, {"title": title, "parts": []})
        start = time.perf_counter()
        ok = False
        note = ""
        try:
            yield
            ok = True
        except Exception as exc:
            text = str(exc).strip()
            note = text.splitlines()[0] if text else type(exc).__name__
            raise
        finally:
            elapsed = time.perf_counter() - start
            if ok and elapsed > budget_s:
                ok = False
                note = f"runtime {elapsed:.1f}s exceeds budget {budget_s:.0f}s"
            entry["parts"].append((part, ok, elapsed, budget_s, note))
            line = _format(number, entry["title"], part, ok, elapsed, budget_s, note)
            print(line)
        if not ok:
            pytest.fail(note)


def _format(number, title, part, ok, elapsed, budget, note):
    label = f"{title} [{part}]" if part else title
    status = "PASS" if ok else "FAIL"
    extra = f" -- {note}" if note else ""
    return f"ACCEPTANCE {number:>2} {status}: {label} ({elapsed:.1f}s / {budget:.0f}s){extra}"


@pytest.fixture(scope="session")
def criterion():
    return CriterionRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        parts = entry["parts"]
        ok = all(p[1] for p in parts)
        elapsed = sum(p[2] for p in parts)
        line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}: {entry['title']} ({elapsed:.1f}s)"
        failed = [p for p in parts if not p[1]]
        if failed:
            line += " -- failing part(s): " + "; ".join(f"{p[0] or 'main'}: {p[4]}" for p in failed)
        terminalreporter.write_line(line)
