"""Map the transition regions of the hexagonal two-mode reduction.

Sweeps the second diffusivity ratio and the forcing strength over a box
that carries the hexagonal critical pair, prints the region label at each
grid point as a character map, then probes the attracting sectors of one
mixed-stability case.
"""

import math

from mhdconv import transition_real
from mhdconv.amplitude import sector_probe
from mhdconv.errors import MhdconvError
from mhdconv.params import BoxGeometry, FluidParams, ModeIndex

GEOM = BoxGeometry(1.5, 1.5 * math.sqrt(3.0))
RECT = ModeIndex(1, 1, 1)

# one printable character per region label
GLYPHS = {
    "I1": "1", "I2": "2", "II1": "3", "II2": "4",
    "II3": "5", "II4": "6", "II5": "7", "III1": "8",
}


def ascii_map():
    p2_grid = [0.05 + 0.05 * i for i in range(19)]
    q_grid = [5.0 * i for i in range(13)]
    print("region of the pair {(1,1,1), (0,2,1)} over (p2, Q), p1 = 1")
    print("rows: Q top-down, columns: p2 left-right\n")
    for Q in reversed(q_grid):
        row = []
        for p2 in p2_grid:
            try:
                rep = transition_real.classify_hexagonal(
                    FluidParams(1.0, p2, Q), GEOM, RECT
                )
                row.append(GLYPHS[rep.region.label])
            except MhdconvError:
                row.append("?")
        print(f"  Q = {Q:5.1f}  {''.join(row)}")
    print(f"  {'':10}p2 = {p2_grid[0]:.2f} .. {p2_grid[-1]:.2f}")
    legend = ", ".join(f"{v} = {k}" for k, v in GLYPHS.items())
    print(f"\n  legend: {legend},")
    print("          ? = onset is oscillatory there, steady reduction rejected")


def probe_mixed_case():
    params = FluidParams(1.0, 0.4, 10.0)
    rep = transition_real.classify_hexagonal(params, GEOM, RECT)
    a, b = rep.coefficients.a, rep.coefficients.b
    print(f"\nsector probe at p1 = 1, p2 = 0.4, Q = 10 (region {rep.region.label}):")
    print(f"  coefficients a = {a:.4f}, b = {b:.4f}")
    probe = sector_probe(a, b, 0.01, n_rays=180)
    for lo, hi in probe.sectors:
        print(
            f"  captured sector: {math.degrees(lo):7.2f} .. "
            f"{math.degrees(hi):7.2f} degrees"
        )
    if rep.sector_half_angle is not None:
        half = math.degrees(rep.sector_half_angle)
        print(f"  predicted half-angle: {half:.2f} degrees")


if __name__ == "__main__":
    ascii_map()
    probe_mixed_case()
