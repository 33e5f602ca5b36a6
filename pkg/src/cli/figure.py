"""
Type-II error decay figure
"""

import logging
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from .formatting import atomic_write  # noqa: E402

logger = logging.getLogger(__name__)

SERIES = {
    "beta_identity": "identity test",
    "beta_z": "Z-symmetry test",
    "beta_t": "T-symmetry test",
}


def render_beta_curve(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    """
    Write a self-contained SVG: optimal type-II error against n on a log scale.

    Args:
        frame: Curve table with column n and one column per series (decimal strings)
        path: Output SVG path
    """
    plt.rcParams["svg.fonttype"] = "path"
    plt.rcParams["svg.hashsalt"] = "symtest"
    fig, ax = plt.subplots(figsize=(6, 4))
    for column, label in SERIES.items():
        ax.plot(frame["n"], frame[column].astype(float), marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("number of queries n")
    ax.set_ylabel("optimal type-II error")
    ax.legend()
    fig.tight_layout()

    try:
        atomic_write(path, lambda temp: fig.savefig(temp, format="svg", metadata={"Date": None}))
    finally:
        plt.close(fig)
    logger.info(f"Wrote figure to {path}")
