"""Optional matplotlib rendering of profile curves.

Kept separate so the core library never imports matplotlib; profile
figures are rendered only when the CLI is asked for them.
"""

from __future__ import annotations


def render_profile(abscissa, psi, psi_sq, path, xlabel, title):
    """Draw psi and psi^2 against the abscissa and save to path."""
    try:
        import matplotlib
    except ImportError as exc:
        raise RuntimeError(
            "figure output needs matplotlib; install the 'figures' extra"
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(abscissa, psi, label="psi", color="tab:blue")
    ax.plot(abscissa, psi_sq, label="psi^2", color="tab:orange",
            linestyle="--")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("amplitude")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
