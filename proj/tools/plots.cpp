#include "plots.hpp"

namespace canardlab::cli {

namespace {

const char* kPrelude = R"PY(#!/usr/bin/env python3
import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent


def read(name):
    with open(HERE / name, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


def column(rows, key, cast=float):
    return [cast(r[key]) for r in rows]


def draw_nullclines(ax):
    path = HERE / "nullclines.csv"
    if not path.exists():
        return
    rows = read("nullclines.csv")
    styles = {"u=0": "k:", "v=0": "k:", "v=g(u)": "r--", "v=u+e2": "b--"}
    for name, style in styles.items():
        sel = [r for r in rows if r["curve"] == name]
        if sel:
            ax.plot(column(sel, "u"), column(sel, "v"), style, lw=1, label=name)

)PY";

std::string with_prelude(const char* body) { return std::string(kPrelude) + body; }

}  // namespace

std::string simulate_plot_script() {
    return with_prelude(R"PY(
rows = read("trajectory.csv")
fig, ax = plt.subplots(figsize=(6, 5))
draw_nullclines(ax)
ax.plot(column(rows, "u"), column(rows, "v"), color="purple", lw=1, label="trajectory")
if rows:
    ax.set_ylim(-0.01, 1.3 * max(column(rows, "v")) + 0.01)
ax.set_xlabel("u (prey)")
ax.set_ylabel("v (predator)")
ax.legend(loc="upper right", fontsize=8)
fig.tight_layout()
fig.savefig(HERE / "simulate.png", dpi=150)
)PY");
}

std::string manifold_plot_script() {
    return with_prelude(R"PY(
rows = read("manifold.csv")
colors = {"Attractive": "tab:blue", "Repulsive": "tab:red", "Fold": "black"}
fig, ax = plt.subplots(figsize=(6, 5))
for tag, color in colors.items():
    sel = [r for r in rows if r["tag"] == tag]
    size = 40 if tag == "Fold" else 4
    ax.scatter(column(sel, "u"), column(sel, "v"), s=size, color=color, label=tag)
ax.set_xlabel("u")
ax.set_ylabel("v")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(HERE / "manifold.png", dpi=150)
)PY");
}

std::string cycle_plot_script() {
    return with_prelude(R"PY(
rows = read("cycle.csv")
fig, (ax, ax_log) = plt.subplots(1, 2, figsize=(11, 5))
draw_nullclines(ax)
ax.plot(column(rows, "u"), column(rows, "v"), color="green", lw=1.2, label="limit cycle")
ax.set_ylim(-0.01, 1.3 * max(column(rows, "v")))
ax.set_xlabel("u")
ax.set_ylabel("v")
ax.legend(fontsize=8)
ax_log.plot(column(rows, "ln_u"), column(rows, "v"), color="green", lw=1.2)
ax_log.set_xlabel("ln u")
ax_log.set_ylabel("v")
fig.tight_layout()
fig.savefig(HERE / "cycle.png", dpi=150)
)PY");
}

std::string blowup_plot_script() {
    return with_prelude(R"PY(
rows = read("k2_family.csv")
fig, ax = plt.subplots(figsize=(6, 5))
for orbit in sorted({int(r["orbit"]) for r in rows}):
    sel = [r for r in rows if int(r["orbit"]) == orbit]
    ax.plot(column(sel, "x2"), column(sel, "y2"), lw=1)
if min(column(rows, "x2")) > 0:
    ax.set_xscale("log")
else:
    ax.set_xscale("symlog", linthresh=1e-2)
ax.set_xlabel("x2")
ax.set_ylabel("y2")
fig.tight_layout()
fig.savefig(HERE / "blowup.png", dpi=150)
)PY");
}

std::string sweep_plot_script() {
    return with_prelude(R"PY(
rows = read("convergence.csv")
ref = read("reference_cycle.csv")
fig, (ax, ax_ref) = plt.subplots(1, 2, figsize=(11, 5))
ax.loglog(column(rows, "eps"), column(rows, "d"), "o-", label="d(cycle, reference)")
ax.set_xlabel("eps")
ax.set_ylabel("Hausdorff distance")
ax.legend(fontsize=8)
ax_ref.plot(column(ref, "u"), column(ref, "v"), "k-", lw=1.5)
ax_ref.set_xlabel("u")
ax_ref.set_ylabel("v")
fig.tight_layout()
fig.savefig(HERE / "sweep.png", dpi=150)
)PY");
}

std::string singular_cycle_plot_script() {
    return with_prelude(R"PY(
rows = read("singular_cycle.csv")
fig, ax = plt.subplots(figsize=(6, 5))
draw_nullclines(ax)
ax.plot(column(rows, "u"), column(rows, "v"), "k-", lw=1.5, label="singular cycle")
ax.set_ylim(-0.01, 1.3 * max(column(rows, "v")))
for r in rows:
    if r["tag"] in ("A", "B", "C", "D"):
        ax.annotate(r["tag"], (float(r["u"]), float(r["v"])), textcoords="offset points", xytext=(4, 4))
ax.set_xlabel("u")
ax.set_ylabel("v")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(HERE / "singular_cycle.png", dpi=150)
)PY");
}

}  // namespace canardlab::cli
