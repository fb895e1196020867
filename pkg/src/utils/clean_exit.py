import multiprocessing as mp
import signal


class CleanExit(Exception):
    pass


def _raise_clean_exit(signal: int, frame) -> None:
    raise CleanExit("clean exit")


def set_clean_exit() -> None:
    signal.signal(signal.SIGINT, _raise_clean_exit)
    signal.signal(signal.SIGTERM, _raise_clean_exit)


def kill_children() -> None:
    active = mp.active_children()
    for child in active:
        child.kill()
