"""Transfer-method recommendation from an estimated row count."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .semantics import Method

DEFAULT_THRESHOLD = 1_000_000


@dataclass(frozen=True)
class SizeEstimate:
    row_count: int
    bytes: Optional[int] = None

    def __post_init__(self):
        if self.row_count < 0:
            raise ValueError("row_count must be non-negative")
        if self.bytes is not None and self.bytes < 0:
            raise ValueError("bytes must be non-negative")


@dataclass(frozen=True)
class AdvisorPolicy:
    small_threshold_rows: int = DEFAULT_THRESHOLD
    prefer_loader_mid_band: bool = False

    def __post_init__(self):
        if self.small_threshold_rows <= 0:
            raise ValueError("small_threshold_rows must be positive")

    @property
    def mid_band_start(self) -> int:
        return self.small_threshold_rows // 2


def recommend(est: SizeEstimate, policy: AdvisorPolicy = AdvisorPolicy()) -> Method:
    n = est.row_count
    if n >= policy.small_threshold_rows:
        return Method.TRANSPORTTABLESPACE
    if policy.prefer_loader_mid_band and n >= policy.mid_band_start:
        return Method.LOADER
    return Method.QUERY


def explain(est: SizeEstimate, policy: AdvisorPolicy = AdvisorPolicy()) -> str:
    method = recommend(est, policy)
    n, t = est.row_count, policy.small_threshold_rows
    if method is Method.TRANSPORTTABLESPACE:
        why = (f"{n} rows is at or above the small-data threshold of {t}; "
               "tablespace transport moves large ranges fastest")
    elif method is Method.LOADER:
        why = (f"{n} rows lies in the mid band [{policy.mid_band_start}, {t}) "
               "and the policy prefers the bulk loader there")
    else:
        why = f"{n} rows is below the small-data threshold of {t}; a plain insert-select has the least setup"
    return f"{method.value}: {why}"
