"""Command-line front end for onset analysis, sweeps and simulations.

Subcommands:

    critical   onset values, kind and critical indices at one parameter point
    classify   transition type of a real onset (simple or hexagonal pair)
    hopf       transition number and type of a complex onset
    scan       grid sweeps: minimizers | hexlines | regions
    simulate   reduced-ODE runs: cubic | hex | hopf | sector
    render     planform snapshot of a mode combination (CSV, optional SVG)

Every command prints a short human-readable summary followed by one JSON
line per record; ``--out`` additionally writes records to a file as CSV
(default) or JSONL.  Outputs are deterministic: fixed column order,
fixed row order, floats at 17 significant digits, LF line endings, no
timestamps.  A ``--config`` file holds flat ``key=value`` pairs that
fill in any flag not given on the command line.

Exit codes: 0 ok, 2 usage or parse failure, 3 numerical or regime
failure, 4 unsupported critical set.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import amplitude, fields, transition_hopf, transition_real
from .errors import Diverged, InvalidRegime, MhdconvError, UnsupportedCriticalSet
from .linear import critical_rayleigh, find_Q0
from .params import BoxGeometry, FluidParams, ModeIndex, wave_numbers

USAGE_EXIT = 2
NUMERICAL_EXIT = 3
UNSUPPORTED_EXIT = 4

HEX_L1_DEFAULT = 1.5
HEX_L2_DEFAULT = 1.5 * math.sqrt(3.0)


def _fmt(value) -> str:
    """Render one CSV cell; floats carry 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.17g" % value
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _json_line(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def _write_rows(path: str, fmt: str, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        if fmt == "jsonl":
            for row in rows:
                fh.write(_json_line(row) + "\n")
            return
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = []
            for key in header:
                cell = _fmt(row.get(key))
                if "," in cell or '"' in cell:
                    cell = '"' + cell.replace('"', '""') + '"'
                cells.append(cell)
            fh.write(",".join(cells) + "\n")


def _emit(ns, header: list[str], rows: list[dict], human: list[str]) -> None:
    for line in human:
        print(line)
    if ns.out:
        _write_rows(ns.out, ns.format, header, rows)
        print(f"wrote {len(rows)} record(s) to {ns.out}")
    else:
        for row in rows:
            print(_json_line(row))


def _parse_range(text: str, name: str) -> np.ndarray:
    try:
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{name} must be start:stop:step, got {text!r}"
        ) from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"{name} has an empty or inverted range")
    n = int(round((stop - start) / step))
    return start + step * np.arange(n + 1)


def _parse_index(text: str) -> ModeIndex:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"index must be j,k,l, got {text!r}")
    try:
        j, k, l = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"index must be integers, got {text!r}") from None
    return ModeIndex(j, k, l)


_COMBO_TERM = re.compile(
    r"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\*\((\d+),(\d+),(\d+)\)"
)


def parse_combo(text: str) -> list[tuple[float, ModeIndex]]:
    """Parse a mode combination ``c1*(j,k,l)+c2*(j,k,l)+...``."""
    compact = text.replace(" ", "")
    if not compact:
        return []
    terms = []
    pos = 0
    while pos < len(compact):
        if compact[pos] == "+" and pos > 0:
            pos += 1
        match = _COMBO_TERM.match(compact, pos)
        if not match:
            raise ValueError(f"cannot parse combination at ...{compact[pos:]!r}")
        weight = float(match.group(1))
        index = ModeIndex(*(int(match.group(i)) for i in (2, 3, 4)))
        terms.append((weight, index))
        pos = match.end()
    return terms


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p1", type=float, default=None, help="Prandtl number")
    parser.add_argument("--p2", type=float, default=None, help="magnetic Prandtl number")
    parser.add_argument("--Q", type=float, default=None, help="Chandrasekhar number")
    parser.add_argument("--L1", type=float, default=None, help="box length along x1")
    parser.add_argument("--L2", type=float, default=None, help="box length along x2")
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument(
        "--format", choices=("csv", "jsonl"), default=None, help="output file format"
    )
    parser.add_argument("--seed", type=int, default=None, help="recorded in outputs")
    parser.add_argument(
        "--truncation", type=int, default=None, help="lattice bound override"
    )
    parser.add_argument("--config", default=None, help="flat key=value config file")


_COMMON_DEFAULTS = {
    "p1": 1.0,
    "p2": 1.0,
    "Q": 0.0,
    "L1": 2.0,
    "L2": 2.0,
    "format": "csv",
    "seed": 0,
}


def _apply_config(ns: argparse.Namespace, defaults: dict) -> argparse.Namespace:
    """Fill flags not given on the command line from --config, then defaults."""
    merged = dict(_COMMON_DEFAULTS)
    merged.update(defaults)
    config: dict[str, str] = {}
    if ns.config:
        with open(ns.config) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"config line {raw!r} is not key=value")
                key, value = (part.strip() for part in line.split("=", 1))
                config[key] = value
    given = {k for k, v in vars(ns).items() if v is not None} | set(config)
    for key, value in vars(ns).items():
        if value is not None:
            continue
        if key in config:
            default = merged.get(key)
            text = config[key]
            if isinstance(default, bool):
                setattr(ns, key, text.lower() in ("1", "true", "yes"))
            elif isinstance(default, int) and not isinstance(default, bool):
                setattr(ns, key, int(text))
            elif isinstance(default, float):
                setattr(ns, key, float(text))
            else:
                setattr(ns, key, text)
        elif key in merged:
            setattr(ns, key, merged[key])
    ns.given = frozenset(given)
    return ns


def _params(ns) -> FluidParams:
    return FluidParams(p1=ns.p1, p2=ns.p2, Q=ns.Q)


def _geom(ns) -> BoxGeometry:
    return BoxGeometry(L1=ns.L1, L2=ns.L2)


# ---------------------------------------------------------------------------
# single-point commands
# ---------------------------------------------------------------------------


def cmd_critical(ns) -> int:
    params, geom = _params(ns), _geom(ns)
    crit = critical_rayleigh(params, geom, bound=ns.truncation)
    first = crit.critical_set[0]
    q0 = None
    if 0.0 < params.p2 < 1.0:
        q0 = find_Q0(params.p1, params.p2, geom)
    record = {
        "command": "critical",
        "p1": params.p1,
        "p2": params.p2,
        "Q": params.Q,
        "L1": geom.L1,
        "L2": geom.L2,
        "R_r": crit.R_r,
        "R_c": crit.R_c,
        "R_first": crit.R_first,
        "kind": crit.kind,
        "critical_indices": [list(J.as_tuple()) for J in crit.critical_set],
        "alpha": math.sqrt(wave_numbers(first, geom).alpha_sq),
        "rho": crit.rho,
        "second_gap": crit.second_gap,
        "Q0_if_applicable": q0,
        "seed": ns.seed,
    }
    human = [
        f"onset: kind={crit.kind}  R_first={crit.R_first:.9g}",
        f"critical indices: {[J.as_tuple() for J in crit.critical_set]}",
        f"R_r={_fmt(crit.R_r)}  R_c={_fmt(crit.R_c)}  rho={_fmt(crit.rho)}",
    ]
    if q0 is not None:
        human.append(f"onset switch value Q0={q0:.9g}")
    _emit(ns, list(record.keys()), [record], human)
    return 0


def _state_dicts(states) -> list[dict]:
    return [
        {
            "pattern": s.pattern,
            "axis": s.axis,
            "count": s.count,
            "exists_supercritical": s.exists_supercritical,
            "amplitude_unit": s.amplitude_unit,
            "eigenvalues_unit": list(s.eigenvalues_unit),
            "stable": s.stable,
        }
        for s in states
    ]


def cmd_classify(ns) -> int:
    params, geom = _params(ns), _geom(ns)
    crit = critical_rayleigh(params, geom, bound=ns.truncation)
    if crit.kind != "real":
        raise InvalidRegime(
            "onset is oscillatory here; use the hopf command for complex onsets"
        )
    crit_set = {J.as_tuple() for J in crit.critical_set}

    hex_pair = transition_real.detect_hexagonal_geometry(geom)
    report = None
    if hex_pair is not None:
        I = ModeIndex(hex_pair[0], hex_pair[1], 1)
        J = ModeIndex(0, 2 * hex_pair[1], 1)
        if crit_set == {I.as_tuple(), J.as_tuple()}:
            report = transition_real.classify_hexagonal(params, geom, I, J, crit.R_r)
            roll_index = J
    if report is None:
        if len(crit.critical_set) != 1:
            raise UnsupportedCriticalSet(
                f"tied critical set {sorted(crit_set)} is not a hexagonal pair"
            )
        roll_index = crit.critical_set[0]
        report = transition_real.classify_simple(
            params, geom, roll_index, crit.R_r, near_tie_gap=crit.second_gap
        )

    sigma = transition_real.sigma_roll(params, geom, roll_index)
    qstar = transition_real.q_star(geom)
    pstar = transition_real.p_star(geom)
    coefs = report.coefficients
    record = {
        "command": "classify",
        "p1": params.p1,
        "p2": params.p2,
        "Q": params.Q,
        "L1": geom.L1,
        "L2": geom.L2,
        "kind": report.kind,
        "R_r": crit.R_r,
        "critical_indices": [list(J.as_tuple()) for J in crit.critical_set],
        "a": coefs.a,
        "b": coefs.b,
        "region": report.region.label if report.region else None,
        "type": report.transition_type,
        "inventory": _state_dicts(report.states),
        "thresholds": {"sigma_roll": sigma, "Qstar": qstar, "pstar": pstar},
        "pitchfork_constant": report.pitchfork_constant,
        "sector_half_angle": report.sector_half_angle,
        "seed": ns.seed,
    }
    human = [
        f"onset: {report.kind} at R_r={crit.R_r:.9g}, indices "
        f"{[J.as_tuple() for J in crit.critical_set]}",
        f"coefficients: a={_fmt(coefs.a)} b={_fmt(coefs.b)}",
        f"classification: type={report.transition_type}"
        + (f" region={report.region.label}" if report.region else ""),
        f"thresholds: sigma_roll={sigma:.9g} Qstar={qstar:.9g} pstar={pstar:.9g}",
    ]
    if report.sector_half_angle is not None:
        human.append(
            f"attracting sectors of half-angle {math.degrees(report.sector_half_angle):.4f} deg"
        )
    _emit(ns, list(record.keys()), [record], human)
    return 0


def cmd_hopf(ns) -> int:
    params, geom = _params(ns), _geom(ns)
    report = transition_hopf.hopf_coefficient(params, geom)
    record = {
        "command": "hopf",
        "p1": params.p1,
        "p2": params.p2,
        "Q": params.Q,
        "L1": geom.L1,
        "L2": geom.L2,
        "b": report.b,
        "rho": report.rho,
        "lambda_prime": report.lambda_prime,
        "type": report.transition_type,
        "radius_coefficient": report.radius_coefficient,
        "R_c": report.R_c,
        "Jc": list(report.Jc.as_tuple()),
        "seed": ns.seed,
    }
    human = [
        f"complex onset at R_c={report.R_c:.9g}, Jc={report.Jc.as_tuple()}, "
        f"rho={report.rho:.9g}",
        f"transition number b={report.b:.9e} -> {report.transition_type}",
        f"growth-rate slope {report.lambda_prime:.6e}; orbit radius "
        f"sqrt(lambda)*{report.radius_coefficient:.6e}",
    ]
    _emit(ns, list(record.keys()), [record], human)
    return 0


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


def _steady_critical(Q: float, geom: BoxGeometry):
    # p2 > 1 suppresses the oscillatory family; steady onset is p-free
    return critical_rayleigh(FluidParams(p1=1.0, p2=2.0, Q=Q), geom)


def cmd_scan(ns) -> int:
    if ns.mode == "minimizers":
        l1s = _parse_range(ns.L1_range, "--L1-range")
        l2s = _parse_range(ns.L2_range, "--L2-range")
        rows = []
        for L1 in l1s:
            for L2 in l2s:
                crit = _steady_critical(ns.Q, BoxGeometry(float(L1), float(L2)))
                first = crit.critical_set[0]
                rows.append(
                    {
                        "L1": float(L1),
                        "L2": float(L2),
                        "j": first.j1,
                        "k": first.j2,
                        "R_r": crit.R_r,
                        "ties": len(crit.critical_set),
                    }
                )
        header = ["L1", "L2", "j", "k", "R_r", "ties"]
        human = [
            f"minimizer map at Q={ns.Q:g}: {len(l1s)}x{len(l2s)} grid, "
            f"{len(rows)} rows"
        ]
        _emit(ns, header, rows, human)
        return 0

    if ns.mode == "hexlines":
        l2s = _parse_range(ns.L2_range, "--L2-range")
        lo, hi = float(l2s[0]), float(l2s[-1])
        rows = []
        seen_ratios = set()
        for j in range(1, ns.max_index + 1):
            for k in range(1, ns.max_index + 1):
                ratio = j / (k * math.sqrt(3.0))
                key = round(ratio, 12)
                if key in seen_ratios:
                    continue
                seen_ratios.add(key)
                for L2 in l2s:
                    L1 = ratio * float(L2)
                    if not lo <= L1 <= hi:
                        continue
                    geom = BoxGeometry(L1, float(L2))
                    crit = _steady_critical(ns.Q, geom)
                    crit_set = {J.as_tuple() for J in crit.critical_set}
                    is_critical = crit_set == {(j, k, 1), (0, 2 * k, 1)}
                    rows.append(
                        {
                            "j": j,
                            "k": k,
                            "L1": L1,
                            "L2": float(L2),
                            "R_r": crit.R_r,
                            "hex_critical": is_critical,
                        }
                    )
        rows.sort(key=lambda r: (r["j"], r["k"], r["L2"]))
        header = ["j", "k", "L1", "L2", "R_r", "hex_critical"]
        marked = sum(row["hex_critical"] for row in rows)
        human = [
            f"hexagonal lines at Q={ns.Q:g}: {len(rows)} line points, "
            f"{marked} with the hexagonal pair critical"
        ]
        _emit(ns, header, rows, human)
        return 0

    # regions: (p2, Q) plane at fixed geometry and p1
    p2s = _parse_range(ns.p2_range, "--p2-range")
    qs = _parse_range(ns.Q_range, "--Q-range")
    geom = _geom(ns)
    pair = transition_real.detect_hexagonal_geometry(geom)
    if pair is None:
        raise UnsupportedCriticalSet(
            f"region scan needs a hexagonal box, got L1/L2={geom.L1 / geom.L2:.6g}"
        )
    I = ModeIndex(pair[0], pair[1], 1)
    J = ModeIndex(0, 2 * pair[1], 1)
    rows = []
    for p2 in p2s:
        for Q in qs:
            params = FluidParams(p1=ns.p1, p2=float(p2), Q=float(Q))
            crit = critical_rayleigh(params, geom)
            crit_set = {K.as_tuple() for K in crit.critical_set}
            row = {
                "p2": float(p2),
                "Q": float(Q),
                "kind": crit.kind,
                "a": None,
                "b": None,
                "region": None,
            }
            if crit.kind == "real" and crit_set == {I.as_tuple(), J.as_tuple()}:
                report = transition_real.classify_hexagonal(params, geom, I, J, crit.R_r)
                row["a"] = report.coefficients.a
                row["b"] = report.coefficients.b
                row["region"] = report.region.label
            rows.append(row)
    header = ["p2", "Q", "kind", "a", "b", "region"]
    human = [
        f"region map on {len(p2s)}x{len(qs)} grid at p1={ns.p1:g}, "
        f"box=({geom.L1:g},{geom.L2:g})"
    ]
    _emit(ns, header, rows, human)
    return 0


# ---------------------------------------------------------------------------
# simulations
# ---------------------------------------------------------------------------


def _trajectory_rows(traj) -> list[dict]:
    rows = []
    for t, state in zip(traj.times, traj.states):
        row = {"t": float(t)}
        for axis, value in zip(("x", "y"), np.atleast_1d(state)):
            row[axis] = float(value)
        rows.append(row)
    return rows


def cmd_simulate(ns) -> int:
    if ns.mode == "sector":
        # the ray probe has its own tuned budget; the trajectory defaults
        # for --step and --n-steps are far too short for it
        probe_args = {"n_rays": ns.rays}
        if "step" in ns.given:
            probe_args["step"] = ns.step
        if "n_steps" in ns.given:
            probe_args["max_steps"] = ns.n_steps
        report = amplitude.sector_probe(ns.a, ns.b, ns.beta, **probe_args)
        rows = [
            {"angle_deg": math.degrees(float(angle)), "fate": fate}
            for angle, fate in zip(report.angles, report.fates)
        ]
        sectors = []
        for lo, hi in report.sectors:
            width = hi - lo if hi >= lo else hi - lo + 2.0 * math.pi
            sectors.append(
                {
                    "lo_deg": math.degrees(lo),
                    "hi_deg": math.degrees(hi),
                    "half_angle_deg": math.degrees(width / 2.0),
                }
            )
        human = [f"captured sectors: {len(sectors)}"]
        for s in sectors:
            human.append(
                f"  [{s['lo_deg']:.4f}, {s['hi_deg']:.4f}] deg, "
                f"half-angle {s['half_angle_deg']:.4f} deg"
            )
        if ns.out:
            _emit(ns, ["angle_deg", "fate"], rows, human)
        else:
            for line in human:
                print(line)
            print(_json_line({"command": "simulate-sector", "sectors": sectors}))
        return 0

    if ns.mode == "cubic":
        system = amplitude.Cubic1D(beta=ns.beta, coefficient=ns.coef)
        ic = [ns.x0]
    elif ns.mode == "hex":
        system = amplitude.HexSystem(a=ns.a, b=ns.b, beta=ns.beta)
        ic = [ns.x0, ns.y0]
    else:
        system = amplitude.HopfNormalForm(lam=ns.lam, rho=ns.rho, b=ns.b)
        ic = [ns.x0, ns.y0]

    try:
        traj = amplitude.integrate(
            system, ic, step=ns.step, n_steps=ns.n_steps, sample_every=ns.sample_every
        )
    except Diverged:
        if ns.expect_converge:
            raise
        print("trajectory diverged (escape threshold reached)")
        return 0

    rows = _trajectory_rows(traj)
    final = rows[-1]
    human = [f"integrated {ns.n_steps} steps of size {ns.step:g}; final state {final}"]
    if ns.mode == "hopf":
        tail = np.linalg.norm(traj.states[3 * len(traj.states) // 4 :], axis=1)
        measured = float(np.mean(tail))
        human.append(f"mean terminal radius {measured:.6g}")
        if ns.lam > 0.0 > ns.b:
            predicted = math.sqrt(ns.lam / abs(ns.b))
            human.append(f"predicted limit-cycle radius {predicted:.6g}")
    if ns.mode == "hex":
        states = amplitude.steady_states(ns.a, ns.b, ns.beta)
        if states:
            end = np.array([final["x"], final["y"]])
            nearest = min(
                float(np.linalg.norm(end - np.array(p.location))) for p in states
            )
            human.append(f"distance to nearest steady state {nearest:.3e}")
    header = list(rows[0].keys())
    _emit(ns, header, rows, human)
    return 0


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _quiver_svg(snapshot, width: float = 640.0) -> str:
    L1 = float(snapshot.x1[-1]) if snapshot.x1[-1] > 0 else 1.0
    L2 = float(snapshot.x2[-1]) if snapshot.x2[-1] > 0 else 1.0
    height = width * L2 / L1
    pad = 20.0
    sx = lambda x: pad + (width - 2 * pad) * x / L1
    sy = lambda y: pad + (height - 2 * pad) * (1.0 - y / L2)
    speed = np.hypot(snapshot.u1, snapshot.u2)
    top = float(np.max(speed))
    cell = (width - 2 * pad) / max(snapshot.nx - 1, 1)
    scale = 0.0 if top == 0.0 else 0.9 * cell / top
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="{pad:.1f}" y="{pad:.1f}" width="{width - 2 * pad:.1f}" '
        f'height="{height - 2 * pad:.1f}" fill="none" stroke="black"/>',
    ]
    for i in range(snapshot.nx):
        for j in range(snapshot.ny):
            x0 = sx(float(snapshot.x1[i]))
            y0 = sy(float(snapshot.x2[j]))
            dx = float(snapshot.u1[i, j]) * scale
            dy = -float(snapshot.u2[i, j]) * scale
            if abs(dx) < 1e-12 and abs(dy) < 1e-12:
                parts.append(
                    f'<circle cx="{x0:.2f}" cy="{y0:.2f}" r="0.6" fill="black"/>'
                )
                continue
            x1p, y1p = x0 + dx, y0 + dy
            parts.append(
                f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1p:.2f}" y2="{y1p:.2f}" '
                f'stroke="black" stroke-width="1"/>'
            )
            # arrow head: two short back-strokes
            angle = math.atan2(dy, dx)
            for off in (2.5, -2.5):
                ax = x1p - 0.3 * cell * math.cos(angle + off)
                ay = y1p - 0.3 * cell * math.sin(angle + off)
                parts.append(
                    f'<line x1="{x1p:.2f}" y1="{y1p:.2f}" x2="{ax:.2f}" y2="{ay:.2f}" '
                    f'stroke="black" stroke-width="1"/>'
                )
    parts.append("</svg>")
    return "\n".join(parts)


def cmd_render(ns) -> int:
    params, geom = _params(ns), _geom(ns)
    try:
        combo = parse_combo(ns.combo)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    combination = [
        (weight, fields.critical_eigenfield(J, params, geom)) for weight, J in combo
    ]
    snapshot = fields.pattern_snapshot(geom, combination, z=ns.z, nx=ns.nx, ny=ns.ny)
    rows = [
        {
            "x1": r[0],
            "x2": r[1],
            "u1": r[2],
            "u2": r[3],
            "w": r[4],
            "T": r[5],
            "H3": r[6],
        }
        for r in snapshot.rows()
    ]
    human = [
        f"sampled {len(combo)} mode(s) on a {ns.nx}x{ns.ny} grid at z={ns.z:g}"
    ]
    if ns.svg:
        with open(ns.svg, "w") as fh:
            fh.write(_quiver_svg(snapshot))
        human.append(f"wrote quiver to {ns.svg}")
    header = ["x1", "x2", "u1", "u2", "w", "T", "H3"]
    if ns.out:
        _emit(ns, header, rows, human)
    else:
        for line in human:
            print(line)
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(row[key]) for key in header))
    return 0


# ---------------------------------------------------------------------------
# parser assembly and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mhdconv",
        description="onset, transition-type and amplitude tools for boxed "
        "magnetoconvection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("critical", help="onset values at one parameter point")
    _add_common(p)
    p.set_defaults(run=cmd_critical, defaults={})

    p = sub.add_parser("classify", help="transition type of a real onset")
    _add_common(p)
    p.set_defaults(
        run=cmd_classify, defaults={"L1": HEX_L1_DEFAULT, "L2": HEX_L2_DEFAULT}
    )

    p = sub.add_parser("hopf", help="transition number of a complex onset")
    _add_common(p)
    # narrow channel: the onset mode is then a single roll, which is the
    # shape the oscillatory reduction is built for
    p.set_defaults(
        run=cmd_hopf, defaults={"p2": 0.5, "Q": 1000.0, "L1": 10.0, "L2": 0.1}
    )

    p = sub.add_parser("scan", help="grid sweeps")
    p.add_argument("mode", choices=("minimizers", "hexlines", "regions"))
    _add_common(p)
    p.add_argument("--L1-range", dest="L1_range", default=None)
    p.add_argument("--L2-range", dest="L2_range", default=None)
    p.add_argument("--p2-range", dest="p2_range", default=None)
    p.add_argument("--Q-range", dest="Q_range", default=None)
    p.add_argument("--max-index", dest="max_index", type=int, default=None)
    p.set_defaults(
        run=cmd_scan,
        defaults={
            "L1_range": "0.5:6:0.1",
            "L2_range": "0.5:6:0.1",
            "p2_range": "0.2:1:0.2",
            "Q_range": "0:40:10",
            "max_index": 4,
            "L1": HEX_L1_DEFAULT,
            "L2": HEX_L2_DEFAULT,
        },
    )

    p = sub.add_parser("simulate", help="reduced-ODE integrations")
    p.add_argument("mode", choices=("cubic", "hex", "hopf", "sector"))
    _add_common(p)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--coef", type=float, default=None, help="cubic coefficient")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--y0", type=float, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--n-steps", dest="n_steps", type=int, default=None)
    p.add_argument("--sample-every", dest="sample_every", type=int, default=None)
    p.add_argument("--rays", type=int, default=None)
    p.add_argument(
        "--expect-converge",
        action="store_true",
        help="treat divergence as a failure (exit 3)",
    )
    p.set_defaults(
        run=cmd_simulate,
        defaults={
            "a": -1.0,
            "b": 1.0,
            "beta": 0.01,
            "coef": -1.0,
            "lam": 0.01,
            "rho": 1.0,
            "x0": 0.1,
            "y0": 0.1,
            "step": 1e-3,
            "n_steps": 10_000,
            "sample_every": 10,
            "rays": 240,
        },
    )

    p = sub.add_parser("render", help="planform snapshot of a mode combination")
    _add_common(p)
    p.add_argument("--combo", default=None, help="e.g. '2*(2,1,1)+1*(0,2,1)'")
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--svg", default=None, help="also write an SVG quiver here")
    p.set_defaults(
        run=cmd_render,
        defaults={"combo": "", "z": 1.0, "nx": 24, "ny": 24},
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ns = _apply_config(ns, ns.defaults)
        return ns.run(ns)
    except UnsupportedCriticalSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return UNSUPPORTED_EXIT
    except MhdconvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
