import os
import signal

import pytest

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden",
        action="store_true",
        default=False,
        help="Rewrite the golden files from the current output.",
    )


@pytest.fixture(autouse=True)
def restore_signal_handlers():
    handlers = {s: signal.getsignal(s) for s in (signal.SIGINT, signal.SIGTERM)}
    yield
    for sig, handler in handlers.items():
        signal.signal(sig, handler)


@pytest.fixture
def data_path():
    def _path(name: str) -> str:
        return os.path.join(TESTS_DIR, "data", name)
    return _path


@pytest.fixture
def golden(request):
    """
    Compare text with a golden file, writing the file instead when it is
    missing or `--regen-golden` is given.
    """
    regen = request.config.getoption("--regen-golden")

    def _check(name: str, text: str) -> None:
        path = os.path.join(TESTS_DIR, "golden", name)
        if regen or not os.path.exists(path):
            with open(path, "w", newline="\n") as file:
                file.write(text)
            return
        with open(path, newline="") as file:
            expected = file.read()
        assert text == expected, f"Output differs from golden file {name}"
    return _check
