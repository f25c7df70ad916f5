from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from ..model.space import OrderedSpace


def plot_layer_profile(
    df: pd.DataFrame, out_dir: Path, title_prefix: str = ""
) -> Path | None:
    """Grouped bars: atoms per layer for every signature."""
    if df.empty or not {"kappa", "layer", "atoms"} <= set(df.columns):
        return None
    out_dir.mkdir(parents=True, exist_ok=True)
    pivot = df.pivot_table(
        index="kappa", columns="layer", values="atoms", aggfunc="sum", sort=False
    ).fillna(0)

    ax = pivot.plot(kind="bar", figsize=(max(6, len(pivot) * 0.8), 4))
    ax.set_xlabel("signature")
    ax.set_ylabel("atoms")
    ax.set_title(f"{title_prefix}layer profile")
    ax.legend(title="layer")
    plt.tight_layout()
    path = out_dir / "layer_profile.png"
    plt.savefig(path)
    plt.close()
    return path


def plot_phase_spectrum(
    phases: np.ndarray, space: OrderedSpace, out_dir: Path, q: int | None = None
) -> Path | None:
    """Recovered phases per point on [0, 1), with the 1/q grid when known."""
    if phases.size == 0:
        return None
    out_dir.mkdir(parents=True, exist_ok=True)
    plt.figure(figsize=(8, 4))
    for col, point in enumerate(space):
        plt.scatter(
            phases[:, col], np.full(phases.shape[0], col), s=12, label=str(point)
        )
    if q is not None:
        for k in range(q):
            plt.axvline(k / q, color="0.9", linewidth=0.5, zorder=0)
    plt.yticks(range(len(space)), [str(p) for p in space])
    plt.xlim(0, 1)
    plt.xlabel("phase (turns)")
    plt.ylabel("point")
    plt.title("joint eigenphases")
    plt.tight_layout()
    path = out_dir / "phase_spectrum.png"
    plt.savefig(path)
    plt.close()
    return path
