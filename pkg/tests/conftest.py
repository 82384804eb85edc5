from importlib import resources
from pathlib import Path

import pytest

from sigforge import load, load_file

CORPUS = Path(str(resources.files("sigforge") / "corpus"))
GOLDEN = Path(__file__).parent / "golden"


def corpus(name: str):
    return load_file(str(CORPUS / name))


def sig(profile: str, body: str, externs: str = ""):
    """Load a one-off signature; `body` holds one entry per line."""
    lines = "\n".join(f"  {ln.strip()}" for ln in body.strip().splitlines())
    return load(f"profile {profile}\n{externs}signature T where\n{lines}\n")


@pytest.fixture(scope="session")
def nat():
    return corpus("nat.sig")


@pytest.fixture(scope="session")
def tree():
    return corpus("tree.sig")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda ln: int(ln.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
