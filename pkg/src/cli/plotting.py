from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from regge.asymptotics import PolePrediction  # noqa: E402
from regge.contour import SearchRegion  # noqa: E402
from regge.poles import ReggePole  # noqa: E402
from utils.logging_config import get_logger  # noqa: E402

logger = get_logger(__name__)


def plot_poles(poles: Sequence[ReggePole], path: Path,
               predictions: Sequence[PolePrediction] = (),
               region: Optional[SearchRegion] = None,
               title: str = "Regge poles") -> Path:
    """
    Static SVG scatter of located poles in the ν-plane.

    Args:
        poles: Located poles; clusters are drawn with a distinct marker
        path: Output file
        predictions: Lambert-W predictions drawn as a dashed curve
        region: Search rectangle, outlined when given
        title: Figure title

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed ids and no date keep repeated runs byte-identical
    with plt.rc_context({"svg.hashsalt": "reggescat", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 6))
        if region is not None:
            corners = list(region.corners) + [region.corners[0]]
            ax.plot([c.real for c in corners], [c.imag for c in corners], color="0.6", lw=0.8,
                    label="search region")
        if predictions:
            ax.plot([p.nu_predicted.real for p in predictions], [p.nu_predicted.imag for p in predictions],
                    "--", color="tab:orange", lw=1.0, label="Lambert-W prediction")
        simple = [p for p in poles if not p.is_cluster]
        clusters = [p for p in poles if p.is_cluster]
        ax.scatter([p.nu.real for p in simple], [p.nu.imag for p in simple], s=14,
                   color="tab:blue", label="poles")
        if clusters:
            ax.scatter([p.nu.real for p in clusters], [p.nu.imag for p in clusters], s=30,
                       marker="s", facecolors="none", edgecolors="tab:red", label="clusters")
        ax.set_xlabel("Re ν")
        ax.set_ylabel("Im ν")
        ax.set_title(title)
        ax.grid(True, lw=0.3)
        ax.legend(loc="upper right", fontsize="small")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info("pole scatter with %d poles written to %s", len(poles), path)
    return path
