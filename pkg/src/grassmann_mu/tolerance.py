from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RankTolerance:
    """Scale-aware numerical rank rule: sigma counts as zero iff sigma <= atol + rtol * sigma_max."""

    atol: float = 1e-12
    rtol: float = 1e-9
    # Singular values in (threshold, band * threshold] are reported as ambiguous.
    band: float = 1e3

    def threshold(self, sigma_max: float) -> float:
        return self.atol + self.rtol * sigma_max

    def rank(self, svals, sigma_max: float | None = None) -> int:
        svals = np.asarray(svals, dtype=float)
        if svals.size == 0:
            return 0
        smax = float(svals.max()) if sigma_max is None else sigma_max
        return int(np.count_nonzero(svals > self.threshold(smax)))

    def ambiguous(self, svals, sigma_max: float | None = None) -> bool:
        svals = np.asarray(svals, dtype=float)
        if svals.size == 0:
            return False
        smax = float(svals.max()) if sigma_max is None else sigma_max
        thr = self.threshold(smax)
        return bool(np.any((svals > thr) & (svals <= self.band * thr)))


DEFAULT_TOLERANCE = RankTolerance()
