#!/usr/bin/env python3
"""Offline reference oracle for the statistical battery.

Runs scipy (plus a direct transcription of Dunn's z formula, which scipy
does not ship) over a mix of constructed and seeded-random datasets and
freezes the expected statistics/p-values as JSON fixtures. The C++ tests
load these files and must agree within 1e-6 on statistics and 1e-4 on
p-values.

Regenerate with:  python3 tests/oracle/gen_stats_fixtures.py
"""

import json
import math
from pathlib import Path

import numpy as np
from scipy import stats

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "stats"
RNG = np.random.RandomState(20250810)


def dunn_pairs(groups):
    """Dunn's rank-based pairwise z tests with tie correction.

    z_ij = (Rbar_i - Rbar_j) / sqrt((N(N+1)/12 - T/(12(N-1))) (1/n_i + 1/n_j))
    with T = sum(t^3 - t) over tie groups; two-sided normal p, Bonferroni
    multiplied by k(k-1)/2 and clamped to 1.
    """
    pooled = np.concatenate(groups)
    n_total = len(pooled)
    ranks = stats.rankdata(pooled)
    mean_ranks = []
    sizes = []
    cursor = 0
    for g in groups:
        mean_ranks.append(ranks[cursor:cursor + len(g)].mean())
        sizes.append(len(g))
        cursor += len(g)

    _, tie_counts = np.unique(pooled, return_counts=True)
    tie_sum = float(np.sum(tie_counts.astype(float) ** 3 - tie_counts))
    base_var = n_total * (n_total + 1) / 12.0 - tie_sum / (12.0 * (n_total - 1))
    k = len(groups)
    m = k * (k - 1) / 2

    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            se = math.sqrt(base_var * (1.0 / sizes[i] + 1.0 / sizes[j]))
            z = 0.0 if se == 0 else (mean_ranks[i] - mean_ranks[j]) / se
            p_raw = min(1.0, 2.0 * stats.norm.sf(abs(z)))
            pairs.append({
                "i": i, "j": j, "z": z,
                "p_raw": p_raw,
                "p_bonferroni": min(1.0, p_raw * m),
            })
    return pairs


def rnd_sample(n, kind):
    if kind == "normal":
        return RNG.normal(RNG.uniform(-5, 5), RNG.uniform(0.5, 4), n)
    if kind == "uniform":
        return RNG.uniform(-10, 10, n)
    if kind == "exponential":
        return RNG.exponential(RNG.uniform(0.5, 3), n)
    if kind == "lognormal":
        return RNG.lognormal(0, 1, n)
    if kind == "heavy_ties":
        return np.round(RNG.normal(0, 3, n))
    raise ValueError(kind)


def gen_shapiro():
    cases = []
    # pinned reference cases
    ref12 = RNG.normal(10, 2, 12)
    cases.append(("reference_n12", ref12))
    cases.append(("exponential_n30", RNG.exponential(1.0, 30)))
    cases.append(("tiny_n3", RNG.normal(0, 1, 3)))
    cases.append(("n4", RNG.normal(0, 1, 4)))
    cases.append(("n5", RNG.normal(0, 1, 5)))
    cases.append(("n11_smallbranch", RNG.normal(3, 1, 11)))
    cases.append(("n12_largebranch", RNG.normal(3, 1, 12)))
    kinds = ["normal", "uniform", "exponential", "lognormal", "heavy_ties"]
    for i in range(18):
        n = int(RNG.randint(6, 300))
        kind = kinds[i % len(kinds)]
        cases.append((f"random_{i}_{kind}_n{n}", rnd_sample(n, kind)))
    out = []
    for name, sample in cases:
        w, p = stats.shapiro(sample)
        out.append({"name": name, "sample": list(map(float, sample)),
                    "W": float(w), "p": float(p)})
    return out


def rnd_groups(k_lo=2, k_hi=5, n_lo=4, n_hi=40, kinds=("normal", "uniform", "exponential")):
    k = int(RNG.randint(k_lo, k_hi + 1))
    groups = []
    for i in range(k):
        n = int(RNG.randint(n_lo, n_hi))
        groups.append(rnd_sample(n, kinds[i % len(kinds)]))
    return groups


def gen_levene():
    out = []
    v1 = RNG.normal(0, 1, 20)
    v100 = RNG.normal(0, 10, 20)
    for center in ("mean", "median"):
        w, p = stats.levene(v1, v100, center=center)
        out.append({"name": f"variance_1_vs_100_{center}", "center": center,
                    "groups": [list(map(float, v1)), list(map(float, v100))],
                    "W": float(w), "p": float(p)})
    skew_a = RNG.exponential(1, 25)
    skew_b = RNG.exponential(2.5, 30)
    w, p = stats.levene(skew_a, skew_b, center="median")
    out.append({"name": "brown_forsythe_asymmetric", "center": "median",
                "groups": [list(map(float, skew_a)), list(map(float, skew_b))],
                "W": float(w), "p": float(p)})
    for i in range(21):
        groups = rnd_groups()
        center = "mean" if i % 2 == 0 else "median"
        w, p = stats.levene(*groups, center=center)
        out.append({"name": f"random_{i}_{center}", "center": center,
                    "groups": [list(map(float, g)) for g in groups],
                    "W": float(w), "p": float(p)})
    return out


def gen_anova():
    out = []
    # classic three-group textbook shape
    a = RNG.normal(5, 1, 12)
    b = RNG.normal(6, 1, 12)
    c = RNG.normal(8, 1, 12)
    f, p = stats.f_oneway(a, b, c)
    out.append({"name": "three_groups_separated",
                "groups": [list(map(float, g)) for g in (a, b, c)],
                "F": float(f), "p": float(p)})
    jit0 = 0.0 + RNG.normal(0, 1e-3, 3)
    jit1 = 1.0 + RNG.normal(0, 1e-3, 3)
    f, p = stats.f_oneway(jit0, jit1)
    out.append({"name": "zero_one_tiny_jitter",
                "groups": [list(map(float, jit0)), list(map(float, jit1))],
                "F": float(f), "p": float(p)})
    for i in range(20):
        groups = rnd_groups()
        f, p = stats.f_oneway(*groups)
        out.append({"name": f"random_{i}",
                    "groups": [list(map(float, g)) for g in groups],
                    "F": float(f), "p": float(p)})
    return out


def gen_kruskal():
    out = []
    tied = [np.round(RNG.normal(0, 2, 18)), np.round(RNG.normal(1, 2, 22)), np.round(RNG.normal(0.5, 2, 15))]
    h, p = stats.kruskal(*tied)
    out.append({"name": "tied_heavy",
                "groups": [list(map(float, g)) for g in tied],
                "H": float(h), "p": float(p)})
    for i in range(21):
        kinds = ("heavy_ties",) if i % 3 == 0 else ("normal", "lognormal", "uniform")
        groups = rnd_groups(kinds=kinds)
        h, p = stats.kruskal(*groups)
        out.append({"name": f"random_{i}",
                    "groups": [list(map(float, g)) for g in groups],
                    "H": float(h), "p": float(p)})
    return out


def gen_dunn():
    out = []
    sep = [RNG.normal(0, 1, 15), RNG.normal(6, 1, 18), RNG.normal(12, 1, 12)]
    out.append({"name": "three_separated",
                "groups": [list(map(float, g)) for g in sep],
                "pairs": dunn_pairs(sep)})
    for i in range(20):
        groups = rnd_groups(k_lo=3, k_hi=5)
        out.append({"name": f"random_{i}",
                    "groups": [list(map(float, g)) for g in groups],
                    "pairs": dunn_pairs(groups)})
    return out


def gen_correlations():
    pearson_out = []
    spearman_out = []
    x48 = RNG.uniform(0, 100, 48)
    y48 = 0.3 * x48 + RNG.normal(0, 20, 48)
    r, p = stats.pearsonr(x48, y48)
    pearson_out.append({"name": "n48_reference", "x": list(map(float, x48)), "y": list(map(float, y48)),
                        "r": float(r), "p": float(p)})
    rho, sp = stats.spearmanr(x48, y48)
    spearman_out.append({"name": "n48_reference", "x": list(map(float, x48)), "y": list(map(float, y48)),
                         "rho": float(rho), "p": float(sp)})
    for i in range(21):
        n = int(RNG.randint(5, 120))
        x = RNG.uniform(-50, 50, n)
        slope = RNG.uniform(-2, 2)
        noise = RNG.uniform(0.1, 40)
        y = slope * x + RNG.normal(0, noise, n)
        if i % 4 == 0:
            x = np.round(x / 5)  # inject ties
        r, p = stats.pearsonr(x, y)
        pearson_out.append({"name": f"random_{i}", "x": list(map(float, x)), "y": list(map(float, y)),
                            "r": float(r), "p": float(p)})
        rho, sp = stats.spearmanr(x, y)
        spearman_out.append({"name": f"random_{i}", "x": list(map(float, x)), "y": list(map(float, y)),
                             "rho": float(rho), "p": float(sp)})
    return pearson_out, spearman_out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    pearson_cases, spearman_cases = gen_correlations()
    files = {
        "shapiro_cases.json": gen_shapiro(),
        "levene_cases.json": gen_levene(),
        "anova_cases.json": gen_anova(),
        "kruskal_cases.json": gen_kruskal(),
        "dunn_cases.json": gen_dunn(),
        "pearson_cases.json": pearson_cases,
        "spearman_cases.json": spearman_cases,
    }
    for name, cases in files.items():
        with open(OUT / name, "w") as fh:
            json.dump(cases, fh)
            fh.write("\n")
        print(f"{name}: {len(cases)} cases")


if __name__ == "__main__":
    main()
