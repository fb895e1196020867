import multiprocessing as mp
import os
from typing import Any, Callable, List, Sequence, Tuple

import click
from tqdm import tqdm

from .clean_exit import CleanExit, kill_children, set_clean_exit


class PointPool:
    """
    Apply `process_point` to independent work items, in a process pool
    when `num_processes > 1`. Results come back in input order.
    """

    def __init__(
        self,
        step: str,
        process_point: Callable[[Any], Any],
        num_processes: int = 1,
        show_progress: bool = True,
    ) -> None:
        if num_processes < 0:
            raise ValueError('Value for `workers` must be non-negative.')
        self.step = step
        self.process_point = process_point
        self.num_processes = mp.cpu_count() \
            if num_processes == 0 else num_processes
        self.show_progress = show_progress

    @staticmethod
    def _process_point_wrapper(args: Tuple[
        Any,
        Callable[[Any], Any],
    ]) -> Tuple[bool, Any]:
        try:
            point, process_point = args
            return True, process_point(point)
        except CleanExit:
            click.echo(f"[{os.getpid()}] clean exit", err=True)
            return False, None

    def _progress(self, iterable, total: int):
        return tqdm(
            iterable,
            total=total,
            desc=f"[{self.step}] Processing points",
            disable=not self.show_progress,
        )

    def _process_in_pool(
        self,
        all_args: List[Tuple[Any, Callable[[Any], Any]]],
    ) -> List[Tuple[bool, Any]]:
        pool = mp.Pool(processes=self.num_processes, initializer=set_clean_exit)
        try:
            results = list(self._progress(
                pool.imap(self._process_point_wrapper, all_args),
                len(all_args),
            ))
            pool.close()
            pool.join()
        except Exception as e:
            kill_children()
            raise e
        return results

    def process(self, points: Sequence[Any]) -> List[Any]:
        set_clean_exit()
        all_args = [(point, self.process_point) for point in points]
        if self.num_processes > 1 and len(all_args) > 1:
            results = self._process_in_pool(all_args)
        else:
            results = [
                self._process_point_wrapper(args)
                for args in self._progress(all_args, len(all_args))
            ]

        if not all(ok for ok, _ in results):
            raise CleanExit(f"[{self.step}] interrupted")
        return [value for _, value in results]
