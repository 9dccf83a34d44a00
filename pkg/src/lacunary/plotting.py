"""PNG figures written next to the CSV reports."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.markersize": 4,
}


def plot_bench(records, path, *, xkey="degree"):
    """Median time against log2(degree) (or sparsity), one line per algorithm."""
    import math
    import statistics
    groups = {}
    for rec in records:
        groups.setdefault(rec.algorithm, {}).setdefault(getattr(rec, xkey), []).append(rec.seconds)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        for alg, by_x in sorted(groups.items()):
            xs = sorted(by_x)
            ys = [statistics.median(by_x[x]) for x in xs]
            px = [math.log2(x) for x in xs] if xkey == "degree" else xs
            ax.plot(px, ys, "o-", label=alg)
            for x, pts in zip(px, (by_x[x] for x in xs)):
                ax.plot([x] * len(pts), pts, ".", color="0.6", ms=2)
        ax.set_xlabel("log2(degree)" if xkey == "degree" else "terms")
        ax.set_ylabel("seconds")
        ax.set_yscale("log")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path


def plot_conjecture(records, path):
    """lhs against rhs of the truncated-power inequality; points above the diagonal violate it."""
    pts = [(rec.rhs, rec.lhs, rec.violated) for rec in records if not rec.degenerate]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4, 4))
        ok = [(x, y) for x, y, v in pts if not v]
        bad = [(x, y) for x, y, v in pts if v]
        if ok:
            ax.plot(*zip(*ok), ".", ms=2, alpha=0.5, label="holds")
        if bad:
            ax.plot(*zip(*bad), "x", color="crimson", label="violated")
        top = max([max(x, y) for x, y, _ in pts], default=1)
        ax.plot([0, top], [0, top], "k--", lw=0.8)
        ax.set_xlabel("tau(h^r mod x^2s) + r")
        ax.set_ylabel("tau(h^i mod x^2s)")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path
