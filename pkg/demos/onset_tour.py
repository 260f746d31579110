"""A short tour of the onset machinery.

Runs four small studies and prints what it finds:

1. the symmetric box whose onset value is known in closed form,
2. the wave-number staircase of a widening box,
3. the switch value Q0 separating steady from oscillatory onset,
4. the transition number of a strongly forced oscillatory channel.
"""

import math

from mhdconv import linear, transition_hopf
from mhdconv.params import BoxGeometry, FluidParams, wave_numbers


def exact_square_box():
    geom = BoxGeometry(math.sqrt(2.0), math.sqrt(2.0))
    crit = linear.critical_rayleigh(FluidParams(1.0, 1.0, 0.0), geom)
    exact = 27.0 * math.pi ** 4 / 4.0
    print("box sqrt(2) x sqrt(2), Q = 0")
    print(f"  R_first  = {crit.R_first:.12f}")
    print(f"  27pi^4/4 = {exact:.12f}")
    print(f"  tie set  = {[J.as_tuple() for J in crit.critical_set]}")


def staircase():
    print("\nminimizer staircase at Q = 0, L2 = 1:")
    params = FluidParams(1.0, 2.0, 0.0)
    last = None
    for i in range(10, 61):
        L1 = i / 10.0
        crit = linear.critical_rayleigh(params, BoxGeometry(L1, 1.0))
        label = crit.critical_set[0].as_tuple()
        if label != last:
            alpha = math.sqrt(
                wave_numbers(crit.critical_set[0], BoxGeometry(L1, 1.0)).alpha_sq
            )
            print(f"  L1 = {L1:.1f}: mode {label}, alpha = {alpha:.4f}")
            last = label


def switch_value():
    geom = BoxGeometry(2.0, 2.0)
    print("\nonset switch in Q at p1 = 1, p2 = 0.5, box 2 x 2:")
    q0 = linear.find_Q0(1.0, 0.5, geom)
    print(f"  Q0 = {q0:.6f}")
    for Q in (0.5 * q0, 2.0 * q0):
        crit = linear.critical_rayleigh(FluidParams(1.0, 0.5, Q), geom)
        rho = f", rho = {crit.rho:.4f}" if crit.rho else ""
        print(f"  Q = {Q:9.3f}: kind = {crit.kind}{rho}")


def oscillatory_channel():
    params = FluidParams(1.0, 0.5, 1000.0)
    geom = BoxGeometry(10.0, 0.1)
    report = transition_hopf.hopf_coefficient(params, geom)
    print("\nstrongly forced channel, 10 x 0.1, Q = 1000:")
    print(f"  critical roll    = {report.Jc.as_tuple()}")
    print(f"  onset frequency  = {report.rho:.6f}")
    print(f"  transition number b = {report.b:.6e}  ({report.transition_type})")
    print(f"  orbit radius ~ {report.radius_coefficient:.3e} * sqrt(R - R_c)")


if __name__ == "__main__":
    exact_square_box()
    staircase()
    switch_value()
    oscillatory_channel()
