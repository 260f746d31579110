"""Parameter and mode bookkeeping for convection in a rectangular box.

The fluid occupies the box (0, L1) x (0, L2) x (0, 1).  Perturbations are
expanded in separable trigonometric modes indexed by J = (j1, j2, j3) with
horizontal wave number

    alpha_J^2 = (j1^2 / L1^2 + j2^2 / L2^2) * pi^2

and total wave number

    gamma_J^2 = alpha_J^2 + j3^2 * pi^2.

A mode index is admissible when j1, j2 >= 0, j1^2 + j2^2 != 0 and j3 >= 1;
purely vertical modes (j1 = j2 = 0) carry no convective planform and never
participate in the onset problem.

Nondimensional fluid parameters:

    p1 = Prandtl number (viscous / thermal diffusivity)
    p2 = magnetic Prandtl number (magnetic / thermal diffusivity)
    Q  = Chandrasekhar number (imposed vertical field strength)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "FluidParams",
    "BoxGeometry",
    "ModeIndex",
    "WaveNumbers",
    "wave_numbers",
    "admissible_indices",
]

PI = math.pi
PI2 = PI * PI


@dataclass(frozen=True)
class FluidParams:
    """Nondimensional fluid parameters (p1, p2, Q)."""

    p1: float
    p2: float
    Q: float

    def __post_init__(self) -> None:
        if not (self.p1 > 0.0 and math.isfinite(self.p1)):
            raise ValueError(f"p1 must be a positive finite number, got {self.p1}")
        if not (self.p2 > 0.0 and math.isfinite(self.p2)):
            raise ValueError(f"p2 must be a positive finite number, got {self.p2}")
        if not (self.Q >= 0.0 and math.isfinite(self.Q)):
            raise ValueError(f"Q must be a nonnegative finite number, got {self.Q}")


@dataclass(frozen=True)
class BoxGeometry:
    """Horizontal box lengths (L1, L2); the vertical gap is scaled to 1."""

    L1: float
    L2: float

    def __post_init__(self) -> None:
        if not (self.L1 > 0.0 and math.isfinite(self.L1)):
            raise ValueError(f"L1 must be a positive finite number, got {self.L1}")
        if not (self.L2 > 0.0 and math.isfinite(self.L2)):
            raise ValueError(f"L2 must be a positive finite number, got {self.L2}")


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Admissible separable mode index (j1, j2, j3)."""

    j1: int
    j2: int
    j3: int

    def __post_init__(self) -> None:
        for name in ("j1", "j2", "j3"):
            value = getattr(self, name)
            if not isinstance(value, int):
                raise ValueError(f"{name} must be an int, got {value!r}")
        if self.j1 < 0 or self.j2 < 0:
            raise ValueError(f"j1, j2 must be nonnegative, got ({self.j1}, {self.j2})")
        if self.j1 == 0 and self.j2 == 0:
            raise ValueError("j1 and j2 cannot both vanish (no horizontal planform)")
        if self.j3 < 1:
            raise ValueError(f"j3 must be >= 1, got {self.j3}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.j1, self.j2, self.j3)


@dataclass(frozen=True)
class WaveNumbers:
    """Squared horizontal and total wave numbers of one mode."""

    alpha_sq: float
    gamma_sq: float


def wave_numbers(J: ModeIndex, geom: BoxGeometry) -> WaveNumbers:
    """Return (alpha_J^2, gamma_J^2) for mode J in the given box."""
    alpha_sq = (J.j1 ** 2 / geom.L1 ** 2 + J.j2 ** 2 / geom.L2 ** 2) * PI2
    gamma_sq = alpha_sq + J.j3 ** 2 * PI2
    return WaveNumbers(alpha_sq=alpha_sq, gamma_sq=gamma_sq)


def admissible_indices(bound: int) -> Iterator[ModeIndex]:
    """Yield every admissible index with j1, j2, j3 <= bound, sorted.

    The count is ((bound + 1)^2 - 1) * bound: all (j1, j2) in the square
    grid except (0, 0), times bound choices of j3.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    for j1 in range(bound + 1):
        for j2 in range(bound + 1):
            if j1 == 0 and j2 == 0:
                continue
            for j3 in range(1, bound + 1):
                yield ModeIndex(j1, j2, j3)
