"""Bandwidth-vs-bytes figure rendering with fitted-model overlays.

Measured samples draw as solid curves, one per (test, order) group; the
fitted model draws as a dashed curve evaluated over the same byte range.
For the mesh tests only the highest order (7 when present) gets an
overlay, matching the convention of the original figures.
"""

from dataclasses import dataclass, field

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first

from .io import FitEntry, SampleRow, read_fits, read_samples  # noqa: E402

MESH_TESTS = ("bs6", "bs7")


@dataclass(frozen=True)
class RenderOptions:
    log_x: bool = False
    title: str | None = None
    dpi: int = 150
    model_points: int = 200


@dataclass(frozen=True)
class Curve:
    test: str
    order: int | None
    bytes: np.ndarray
    gbps: np.ndarray


@dataclass
class RenderResult:
    out_path: str
    measured: list[Curve] = field(default_factory=list)
    model: list[Curve] = field(default_factory=list)


def group_samples(rows: list[SampleRow]) -> dict[tuple, list[SampleRow]]:
    groups: dict[tuple, list[SampleRow]] = {}
    for row in rows:
        groups.setdefault((row.test, row.order), []).append(row)
    return groups


def model_gbps(fit: FitEntry, nbytes: np.ndarray) -> np.ndarray:
    """Modeled effective bandwidth in GB/s: (B * 1e-9) / (T0 + B / Wmax)."""
    return (nbytes * 1e-9) / (fit.T0_s + nbytes / fit.Wmax_Bps)


def _overlay_groups(groups, fits) -> dict[tuple, FitEntry]:
    """Select which (test, order) groups get a dashed model curve."""
    by_key = {(f.test, f.order): f for f in fits}
    chosen: dict[tuple, FitEntry] = {}
    for test in {t for t, _ in groups}:
        orders = [o for t, o in groups if t == test]
        if test in MESH_TESTS:
            fitted = [o for o in orders if (test, o) in by_key and o is not None]
            if not fitted:
                continue
            pick = 7 if 7 in fitted else max(fitted)
            chosen[(test, pick)] = by_key[(test, pick)]
        else:
            for o in orders:
                if (test, o) in by_key:
                    chosen[(test, o)] = by_key[(test, o)]
    return chosen


def _label(test, order):
    return f"{test} N={order}" if order is not None else test


def render(csv_path: str, fit_json_path: str | None, out_image_path: str,
           options: RenderOptions = RenderOptions()) -> RenderResult:
    """Render the figure to out_image_path (format from the file extension).

    Returns the plotted measured and model curves so callers can check the
    drawn values against the fit report.
    """
    rows = read_samples(csv_path)
    fits = read_fits(fit_json_path) if fit_json_path else []
    groups = group_samples(rows)
    overlays = _overlay_groups(groups, fits)

    result = RenderResult(out_path=out_image_path)
    fig, ax = plt.subplots(figsize=(7, 5))
    for (test, order), rows_ in sorted(groups.items(),
                                       key=lambda kv: (kv[0][0], kv[0][1] or 0)):
        rows_ = sorted(rows_, key=lambda r: r.bytes)
        nbytes = np.array([r.bytes for r in rows_], dtype=np.float64)
        gbps = np.array([r.bandwidth_GBps for r in rows_])
        ax.plot(nbytes / 1e9, gbps, "-", label=_label(test, order))
        result.measured.append(Curve(test, order, nbytes, gbps))

        fit = overlays.get((test, order))
        if fit is not None and nbytes[-1] > nbytes[0]:
            bgrid = np.geomspace(nbytes[0], nbytes[-1], options.model_points)
            mg = model_gbps(fit, bgrid)
            ax.plot(bgrid / 1e9, mg, "--", label=f"model {_label(test, order)}")
            result.model.append(Curve(test, order, bgrid, mg))

    ax.set_xlabel("Data moved (GB)")
    ax.set_ylabel("Bandwidth (GB/s)")
    if options.log_x:
        ax.set_xscale("log")
    if options.title:
        ax.set_title(options.title)
    ax.grid(True, which="major", alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_image_path, dpi=options.dpi)
    plt.close(fig)
    return result
