#!/usr/bin/env python3
"""Deterministic generator for the bundled benchmark networks.

Produces case118.m and case300.m: synthetic MATPOWER-format networks with
the bus counts of the classic IEEE test systems. Each network is a densely
meshed low-reactance core (bus-section jumpers) feeding several radial
high-impedance chains, which gives the susceptance matrix a wide singular
spectrum with a large numerically-null tail.

Running this script rewrites the .m files in place; it is checked in so the
fixtures are reproducible, not because builds run it.
"""

import numpy as np

BASE_MVA = 100.0


def make_case(name, n_bus, core_n, n_chains, x_strong, x_chain, seed):
    r = np.random.default_rng(seed)
    branches = []  # (from, to, resistance, reactance, status)

    def add(i, j, x, status=1):
        branches.append((i, j, round(x * 0.05, 6), round(x, 6), status))

    # core ring
    for i in range(core_n):
        add(i, (i + 1) % core_n, x_strong * (0.5 + r.random()))
    # core chords, a couple doubled as parallel circuits
    chords = 0
    while chords < core_n:
        a, b = (int(v) for v in r.integers(0, core_n, 2))
        if a == b:
            continue
        add(a, b, x_strong * (0.5 + r.random()))
        if chords < 2:
            add(a, b, x_strong * (0.5 + r.random()))  # parallel circuit
        chords += 1
    # one retired core circuit, kept in the table with status 0
    add(0, 1, x_strong, status=0)

    # radial chains hanging off the core
    chain_buses = list(range(core_n, n_bus))
    per, extra = divmod(len(chain_buses), n_chains)
    idx = 0
    for c in range(n_chains):
        cnt = per + (1 if c < extra else 0)
        buses = chain_buses[idx:idx + cnt]
        idx += cnt
        prev = int(r.integers(0, core_n))
        for b in buses:
            add(prev, b, x_chain * (0.8 + 0.4 * r.random()))
            prev = b

    # bus table: id, type, Pd, Qd, Gs, Bs, area, Vm, Va, baseKV, zone, Vmax, Vmin
    bus_rows = []
    for i in range(n_bus):
        ext = i + 1
        btype = 3 if i == 0 else (2 if i < core_n else 1)
        pd = 0.0 if i < core_n else round(float(r.uniform(5, 80)), 2)
        qd = round(pd * 0.3, 2)
        bus_rows.append(
            f"\t{ext}\t{btype}\t{pd}\t{qd}\t0\t0\t1\t1.0\t0.0\t138\t1\t1.06\t0.94;")

    # branch table: fbus, tbus, r, x, b, rateA, rateB, rateC, ratio, angle, status, angmin, angmax
    br_rows = []
    for i, j, res, x, status in branches:
        br_rows.append(
            f"\t{i + 1}\t{j + 1}\t{res}\t{x}\t0\t0\t0\t0\t0\t0\t{status}\t-360\t360;")

    lines = [
        f"function mpc = {name}",
        f"%% synthetic {n_bus}-bus benchmark network (generated by gen_cases.py)",
        "mpc.version = '2';",
        f"mpc.baseMVA = {BASE_MVA};",
        "",
        "%% bus data",
        "mpc.bus = [",
        *bus_rows,
        "];",
        "",
        "%% branch data",
        "mpc.branch = [",
        *br_rows,
        "];",
        "",
    ]
    return "\n".join(lines)


def main():
    import pathlib
    here = pathlib.Path(__file__).resolve().parent
    specs = [
        ("case118", 118, 10, 3, 5e-5, 5.0, 118),
        ("case300", 300, 20, 6, 5e-5, 5.0, 300),
    ]
    for name, n, core, chains, xs, xc, seed in specs:
        text = make_case(name, n, core, chains, xs, xc, seed)
        (here / f"{name}.m").write_text(text)
        print(f"wrote {name}.m ({n} buses)")


if __name__ == "__main__":
    main()
