"""Figure rendering for the CLI report path.

Each CLI command can render its table to a PNG next to the delimited output
(--plot).  Rendering is headless (Agg) and optional; nothing here feeds back
into the numerics.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render"]


def _plot_bounds(rows, ax):
    g = [r["gamma"] for r in rows]
    for key, style in (("lb_epi", "-"), ("ub_genie", "--"),
                       ("ub_cpuc", ":"), ("mi_antipodal", "-.")):
        ax.plot(g, [r[key] for r in rows], style, label=key)
    ax.set_xscale("log")
    ax.set_xlabel(r"$\gamma = P/\lambda^2$")
    ax.set_ylabel("rate [nats]")
    ax.set_title("Cauchy-channel capacity bounds")


def _plot_ba(rows, ax):
    g = [r["gamma"] for r in rows]
    ax.plot(g, [r["ba_rate"] for r in rows], "o-", label="BA rate")
    ax.set_xscale("log")
    ax.set_xlabel(r"$\gamma = P/\lambda^2$")
    ax.set_ylabel("rate [nats]")
    ax.set_title("Blahut-Arimoto capacity approximation")


def _plot_gmi(rows, ax):
    curves = {}
    for r in rows:
        curves.setdefault(r["lambda2_over_sigma2"], []).append(r)
    for ratio, pts in sorted(curves.items()):
        pts = sorted(pts, key=lambda r: r["snr"])
        ax.plot([r["snr"] for r in pts], [r["gmi"] for r in pts], "o-",
                label=rf"$\lambda^2/\sigma^2 = {ratio:g}$")
    pts = sorted(rows, key=lambda r: r["snr"])
    ax.plot([r["snr"] for r in pts], [r["awgn_capacity"] for r in pts],
            "k--", label="AWGN capacity")
    ax.set_xlabel(r"$P/\sigma^2$")
    ax.set_ylabel("GMI [nats]")
    ax.set_title("GMI of the Cauchy-metric decoder on AWGN")


def _plot_decode(rows, ax):
    curves = {}
    for r in rows:
        curves.setdefault(r["ensemble"], []).append(r)
    for kind, pts in sorted(curves.items()):
        pts = sorted(pts, key=lambda r: r["N"])
        n = [r["N"] for r in pts]
        ax.errorbar(n, [r["mc_error"] for r in pts],
                    yerr=[3.0 * r["std_error"] for r in pts],
                    fmt="o-", capsize=3, label=kind)
        lim = pts[0]["analytic_limit"]
        if lim is not None:
            ax.axhline(lim, color="gray", linestyle=":", linewidth=1)
    ax.set_xscale("log")
    ax.set_xlabel("block length N")
    ax.set_ylabel("two-codeword error rate")
    ax.set_title("Decoding error vs block length (3-sigma bars)")


def _plot_vector(rows, ax):
    p = [r["P_over_lambda2"] for r in rows]
    ax.plot(p, [r["lb_selection"] for r in rows], "o-", label="selection lower bound")
    ax.plot(p, [r["ub_genie_mc"] for r in rows], "s--", label="genie upper bound (MC)")
    ax.set_xscale("log")
    ax.set_xlabel(r"$P/\lambda^2$")
    ax.set_ylabel("rate [nats]")
    ax.set_title(f"Vector receiver, h = {rows[0]['h']}")


_RENDERERS = {
    "bounds": _plot_bounds,
    "ba": _plot_ba,
    "gmi": _plot_gmi,
    "decode-sim": _plot_decode,
    "vector": _plot_vector,
}


def render(command: str, rows: list, path: str) -> None:
    """Render the rows of one CLI command to a PNG at path."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        _RENDERERS[command](rows, ax)
        ax.legend(fontsize=9)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
