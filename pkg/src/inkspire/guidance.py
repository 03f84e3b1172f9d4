"""Dynamic guidance-scale schedule and seed policy.

The generator's adherence to the user's sketch is relaxed while the canvas is
nearly empty and tightened as ink accumulates: the scale follows an
exponential approach from ``base - span`` toward ``base``, halving the
remaining gap every ``stroke_divisor`` strokes. With the default constants the
schedule starts at 3 on an empty canvas and converges toward (but never
reaches) 7.

Seeds are plain unsigned 32-bit integers drawn from a caller-supplied RNG so
that a session keeps one seed across iterations until an explicit reseed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

SEED_BITS = 32


@dataclass(frozen=True)
class GuidanceSchedule:
    """Stroke-count driven schedule for the generation adherence scalar."""

    base: float = 7.0
    span: float = 4.0
    decay_base: float = 0.5
    stroke_divisor: float = 3.0

    def __post_init__(self) -> None:
        if self.base - self.span <= 0:
            raise ValueError("schedule must stay positive: require base - span > 0")
        if not 0.0 < self.decay_base < 1.0:
            raise ValueError("decay_base must lie in (0, 1)")
        if self.stroke_divisor <= 0:
            raise ValueError("stroke_divisor must be positive")

    def at(self, n: int) -> float:
        """Guidance value for ``n`` strokes on the canvas.

        Increasing in ``n`` and bounded by ``[base - span, base)``. The decay
        term is positive for every finite ``n``, so the value never reaches
        ``base``; once the term drops below float resolution the result is
        capped one ulp under ``base`` to keep that bound exact.
        """
        if n < 0:
            raise ValueError(f"stroke count must be non-negative, got {n}")
        value = self.base - self.span * self.decay_base ** (n / self.stroke_divisor)
        if value >= self.base:
            value = math.nextafter(self.base, -math.inf)
        return value

    @property
    def floor(self) -> float:
        return self.base - self.span


DEFAULT_SCHEDULE = GuidanceSchedule()


def guidance_at(schedule: GuidanceSchedule, n: int) -> float:
    """Functional alias for :meth:`GuidanceSchedule.at`."""
    return schedule.at(n)


def draw_seed(rng: random.Random) -> int:
    """Draw a fresh unsigned generation seed from ``rng``."""
    return rng.getrandbits(SEED_BITS)
