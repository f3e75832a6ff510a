"""Console progress bar for sweeps."""

from typing import Optional

from tqdm import tqdm


class SweepProgress:
    """tqdm bar over sweep points; a no-op when disabled."""

    def __init__(self, experiment: str, total: int, enabled: bool = True):
        self._bar: Optional[tqdm] = None
        if enabled and total > 0:
            self._bar = tqdm(total=total, desc=experiment, unit="pt", ncols=100, leave=False)

    def advance(self, label: str = "") -> None:
        if self._bar is None:
            return
        if label:
            self._bar.set_postfix_str(label)
        self._bar.update(1)

    def close(self) -> None:
        if self._bar is not None:
            self._bar.close()
            self._bar = None

    def __enter__(self) -> "SweepProgress":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()
