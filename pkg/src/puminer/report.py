"""Figure rendering for comparison reports.

The CSV stays the machine-readable contract; these helpers render the
usual per-k summary charts (candidate counts, runtime, final threshold)
next to it.
"""

from __future__ import annotations

import os
from collections import defaultdict


def render_compare_figures(rows: list[dict], out_dir: str) -> list[str]:
    """Render one figure per metric from compare rows
    (k, config, candidates, listsConstructed, runtime, finalMinutil).
    Returns the written file paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    by_config: dict[str, list[dict]] = defaultdict(list)
    for row in rows:
        by_config[row["config"]].append(row)
    for series in by_config.values():
        series.sort(key=lambda r: r["k"])

    specs = [
        ("candidates", "Candidates visited", "candidates.png"),
        ("runtime", "Runtime (s)", "runtime.png"),
        ("finalMinutil", "Final utility floor", "minutil.png"),
    ]
    written = []
    configs = sorted(by_config)
    for column, label, filename in specs:
        fig, ax = plt.subplots(figsize=(6, 4))
        n = len(configs)
        width = 0.8 / max(n, 1)
        ks = sorted({r["k"] for r in rows})
        for ci, config in enumerate(configs):
            values = {r["k"]: r[column] for r in by_config[config]}
            xs = [i + ci * width for i in range(len(ks))]
            ax.bar(xs, [values.get(k, 0) for k in ks], width=width, label=config)
        ax.set_xticks([i + width * (n - 1) / 2 for i in range(len(ks))])
        ax.set_xticklabels([str(k) for k in ks])
        ax.set_xlabel("k")
        ax.set_ylabel(label)
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, filename)
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
