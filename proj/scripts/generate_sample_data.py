#!/usr/bin/env python3
"""Regenerates the bundled sample data files under data/.

data/sample_lines.par  -- synthetic line list in the HITRAN 2004 fixed-width
                          layout, with plausible sub-THz resonances for H2O,
                          O2, CO2 and CH4. Not measured data.
data/materials.csv     -- 20 synthetic material transmittance spectra on a
                          430-point grid, frequency_hz,<name>,... columns.
"""

import numpy as np

C = 299792458.0


def par_record(mol, iso, nu, s, g_air, g_self, n_air, d_air):
    def nolead(v, width, prec):
        t = f"{v:.{prec}f}"
        if t.startswith("0."):
            t = t[1:]
        elif t.startswith("-0."):
            t = "-" + t[2:]
        return t.rjust(width)

    rec = (
        f"{mol:2d}{iso:1d}{nu:12.6f}{s:10.3E}{0.0:10.3E}"
        + nolead(g_air, 5, 4)
        + nolead(g_self, 5, 4)
        + f"{0.0:10.4f}{n_air:4.2f}"
        + nolead(d_air, 8, 6)
    )
    return rec.ljust(160)


def thz_to_wavenumber(f_thz):
    return f_thz * 1e12 / (100.0 * C)


def make_par():
    # (molecule id, frequency THz, strength, g_air, g_self, n_air, d_air)
    lines = []
    h2o = [
        (0.3801, 1.0e-26), (0.4481, 2.0e-26), (0.5570, 5.0e-26),
        (0.6208, 1.5e-26), (0.7520, 4.5e-26), (0.9169, 1.2e-26),
        (0.9702, 3.5e-26), (0.9879, 4.0e-26),
    ]
    for f, s in h2o:
        lines.append(par_record(1, 1, thz_to_wavenumber(f), s,
                                0.0700, 0.3500, 0.70, -0.008000))
    o2 = [
        (0.1184, 0.6e-27), (0.4247, 1.0e-27), (0.4873, 1.2e-27),
        (0.7736, 1.5e-27), (0.8342, 1.1e-27),
    ]
    for f, s in o2:
        lines.append(par_record(7, 1, thz_to_wavenumber(f), s,
                                0.0450, 0.0450, 0.72, 0.000000))
    co2 = [(0.3162, 0.8e-26), (0.5528, 1.0e-26), (0.7913, 0.9e-26)]
    for f, s in co2:
        lines.append(par_record(2, 1, thz_to_wavenumber(f), s,
                                0.0650, 0.0900, 0.73, -0.005000))
    ch4 = [(0.2514, 3.0e-26), (0.5037, 4.0e-26), (0.7561, 3.5e-26),
           (0.9217, 3.0e-26)]
    for f, s in ch4:
        lines.append(par_record(6, 1, thz_to_wavenumber(f), s,
                                0.0550, 0.0750, 0.75, -0.006000))
    return "\n".join(lines) + "\n"


def make_materials(n_points=430, n_materials=20, seed=20260823):
    rng = np.random.default_rng(seed)
    f = np.linspace(0.2e12, 4.49e12, n_points)
    x = (f - f[0]) / (f[-1] - f[0])

    names = [
        "alumina", "aspirin", "baking_powder", "baking_soda", "chalk",
        "flour", "glucose", "lactose", "maltose", "paracetamol",
        "pe_pellet", "plaster", "quartz", "salt", "silica",
        "starch", "sucrose", "sulfur", "talc", "teflon",
    ]

    # Shared absorption bands; materials mix them with distinct weights so
    # the between-class structure is low-rank.
    n_basis = 6
    centers = rng.uniform(0.08, 0.92, n_basis)
    widths = rng.uniform(0.04, 0.10, n_basis)
    basis = np.stack(
        [np.exp(-0.5 * ((x - c) / w) ** 2) for c, w in zip(centers, widths)]
    )

    cols = {}
    for i, name in enumerate(names):
        baseline = 0.95 - 0.35 * x * rng.uniform(0.2, 1.8)
        weights = rng.uniform(0.0, 1.6, n_basis)
        weights[rng.permutation(n_basis)[: n_basis // 2]] *= 0.05
        depth = weights @ basis
        own = 0.05 * np.exp(
            -0.5 * ((x - rng.uniform(0.1, 0.9)) / rng.uniform(0.02, 0.05)) ** 2
        )
        t = baseline - 0.85 * depth / (1.0 + depth) - own
        cols[name] = np.clip(t, 0.02, 1.0)
    return f, cols


def pca_check(f, cols, snr_db=20.0, per_class=50, seed=7):
    """Mirror of the pipeline's PCA-variance acceptance computation."""
    from scipy.signal import savgol_filter

    rng = np.random.default_rng(seed)
    rows = []
    for name in sorted(cols):
        clean = cols[name]
        power = np.mean(clean**2)
        sd = np.sqrt(power / 10 ** (snr_db / 10))
        for _ in range(per_class):
            rows.append(clean + sd * rng.standard_normal(clean.size))
    X = np.array(rows)
    X = savgol_filter(X, 11, 3, axis=1)
    Xc = X - X.mean(axis=0)
    cov = Xc.T @ Xc / (X.shape[0] - 1)
    ev = np.sort(np.linalg.eigvalsh(cov))[::-1]
    return ev[:10].sum() / ev.sum()


def main():
    import os

    os.makedirs("data", exist_ok=True)
    with open("data/sample_lines.par", "w") as fh:
        fh.write(make_par())

    f, cols = make_materials()
    names = sorted(cols)
    with open("data/materials.csv", "w") as fh:
        fh.write("frequency_hz," + ",".join(names) + "\n")
        for i in range(f.size):
            fh.write(
                f"{f[i]:.17g},"
                + ",".join(f"{cols[n][i]:.17g}" for n in names)
                + "\n"
            )
    ratio = pca_check(f, cols)
    print(f"top-10 PCA explained variance at 20 dB: {ratio:.4f}")


if __name__ == "__main__":
    main()
