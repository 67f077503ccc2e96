"""The permutation spectrum test plot, rendered as standalone SVG.

Two panels on a shared vertical (scaled intensity) axis:

* left: bars of the scaled intensity at each fundamental frequency in
  the Nyquist range (0, 1/2];
* right: a mirrored kernel-density silhouette of the simulated null MSI
  values, with horizontal lines at its quartiles.

The observed MSI is marked as a dot on both panels.  Output is plain
SVG markup written by this module, so rendering is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .permutation import NullDistribution, TestResult
from .spectral import SpectrumAnalysis


@dataclass(frozen=True)
class PlotModel:
    """Everything the figure shows, before any pixel mapping."""

    frequencies: np.ndarray
    bar_heights: np.ndarray
    density_grid: np.ndarray
    density_values: np.ndarray
    quartiles: tuple[float, float, float]
    observed_msi: float
    peak_frequency: float
    p_value: float


def silverman_bandwidth(values: np.ndarray) -> float:
    """0.9 * min(sd, IQR/1.34) * m**(-1/5), with a floor for flat samples."""
    m = values.size
    sd = float(values.std(ddof=1)) if m > 1 else 0.0
    q1, q3 = np.quantile(values, [0.25, 0.75])
    iqr = float(q3 - q1)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    if spread <= 0.0:
        spread = max(abs(float(values[0])), 1.0) * 1e-3
    return 0.9 * spread * m ** (-0.2)


def gaussian_kde(values: np.ndarray, grid: np.ndarray, bandwidth: float) -> np.ndarray:
    z = (grid[:, None] - values[None, :]) / bandwidth
    kernel = np.exp(-0.5 * z * z)
    return kernel.sum(axis=1) / (values.size * bandwidth * np.sqrt(2.0 * np.pi))


def build_plot_model(
    result: TestResult,
    null: NullDistribution,
    analysis: SpectrumAnalysis,
    grid_points: int = 200,
) -> PlotModel:
    frequencies, bars = analysis.nyquist_spectrum()
    values = null.msi_values
    bandwidth = silverman_bandwidth(values)
    low = max(0.0, float(values.min()) - 3.0 * bandwidth)  # MSI is non-negative
    high = float(values.max()) + 3.0 * bandwidth
    grid = np.linspace(low, high, grid_points)
    density = gaussian_kde(values, grid, bandwidth)
    return PlotModel(
        frequencies=frequencies,
        bar_heights=bars,
        density_grid=grid,
        density_values=density,
        quartiles=null.quartiles(),
        observed_msi=result.observed_msi,
        peak_frequency=result.peak_frequency,
        p_value=result.p_value,
    )


# ---------------------------------------------------------------- SVG ----

_WIDTH, _HEIGHT = 760, 420
_MARGIN = dict(left=56, right=16, top=40, bottom=46)
_GAP = 42  # between the two panels
_BAR_COLOR = "#4878a8"
_VIOLIN_COLOR = "#b8b8c8"
_QUARTILE_COLOR = "#555566"
_MARKER_COLOR = "#c03028"


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def _axis_ticks(top: float, count: int = 5) -> list[float]:
    return [top * i / count for i in range(count + 1)]


def render_plot_svg(model: PlotModel) -> str:
    inner_width = _WIDTH - _MARGIN["left"] - _MARGIN["right"] - _GAP
    left_width = round(inner_width * 0.62)
    right_width = inner_width - left_width
    left_x = _MARGIN["left"]
    right_x = left_x + left_width + _GAP
    plot_top = _MARGIN["top"]
    plot_bottom = _HEIGHT - _MARGIN["bottom"]
    plot_height = plot_bottom - plot_top

    y_top = 1.05 * max(
        model.observed_msi,
        float(model.bar_heights.max()),
        float(model.density_grid.max()),
        model.quartiles[2],
    )

    def y_px(value: float) -> float:
        return plot_bottom - (value / y_top) * plot_height

    def fx_px(freq: float) -> float:
        return left_x + (freq / 0.5) * left_width

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{left_x}" y="22" font-size="15">Permutation spectrum test'
        f' (p = {model.p_value:.4g})</text>',
    ]

    # shared vertical axis with ticks on the left panel
    for tick in _axis_ticks(y_top):
        ty = y_px(tick)
        parts.append(
            f'<line x1="{left_x - 4}" y1="{ty:.2f}" x2="{left_x}" y2="{ty:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left_x - 8}" y="{ty + 4:.2f}" text-anchor="end">{_fmt(tick)}</text>'
        )
    parts.append(
        f'<line x1="{left_x}" y1="{plot_top}" x2="{left_x}" y2="{plot_bottom}" stroke="black"/>'
    )
    parts.append(
        f'<text x="14" y="{(plot_top + plot_bottom) / 2:.2f}" transform="rotate(-90 14 '
        f'{(plot_top + plot_bottom) / 2:.2f})" text-anchor="middle">scaled intensity</text>'
    )

    # left panel: intensity bars over the Nyquist range
    bar_width = max(1.0, 0.8 * left_width / len(model.frequencies))
    for freq, height in zip(model.frequencies, model.bar_heights):
        x = fx_px(float(freq))
        top = y_px(float(height))
        parts.append(
            f'<rect class="intensity-bar" x="{x - bar_width / 2:.2f}" y="{top:.2f}" '
            f'width="{bar_width:.2f}" height="{plot_bottom - top:.2f}" fill="{_BAR_COLOR}"/>'
        )
    parts.append(
        f'<line x1="{left_x}" y1="{plot_bottom}" x2="{left_x + left_width}" '
        f'y2="{plot_bottom}" stroke="black"/>'
    )
    for tick in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
        tx = fx_px(tick)
        parts.append(
            f'<line x1="{tx:.2f}" y1="{plot_bottom}" x2="{tx:.2f}" y2="{plot_bottom + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{tx:.2f}" y="{plot_bottom + 18}" text-anchor="middle">{_fmt(tick)}</text>'
        )
    parts.append(
        f'<text x="{left_x + left_width / 2:.2f}" y="{_HEIGHT - 8}" text-anchor="middle">frequency</text>'
    )

    # right panel: mirrored null density with quartile lines
    centre = right_x + right_width / 2
    half_width = 0.45 * right_width
    peak = float(model.density_values.max())
    scale = half_width / peak if peak > 0 else 0.0
    right_side = [
        f"{centre + v * scale:.2f},{y_px(float(g)):.2f}"
        for g, v in zip(model.density_grid, model.density_values)
    ]
    left_side = [
        f"{centre - v * scale:.2f},{y_px(float(g)):.2f}"
        for g, v in zip(model.density_grid[::-1], model.density_values[::-1])
    ]
    parts.append(
        f'<polygon class="null-density" points="{" ".join(right_side + left_side)}" '
        f'fill="{_VIOLIN_COLOR}" stroke="none"/>'
    )
    for quartile in model.quartiles:
        qy = y_px(quartile)
        parts.append(
            f'<line class="quartile" x1="{centre - half_width:.2f}" y1="{qy:.2f}" '
            f'x2="{centre + half_width:.2f}" y2="{qy:.2f}" stroke="{_QUARTILE_COLOR}"/>'
        )
    parts.append(
        f'<text x="{centre:.2f}" y="{_HEIGHT - 8}" text-anchor="middle">null MSI density</text>'
    )

    # observed MSI marker on both panels
    my = y_px(model.observed_msi)
    parts.append(
        f'<circle class="observed-msi" cx="{fx_px(model.peak_frequency):.2f}" cy="{my:.2f}" '
        f'r="4" fill="{_MARKER_COLOR}"/>'
    )
    parts.append(
        f'<circle class="observed-msi" cx="{centre:.2f}" cy="{my:.2f}" r="4" '
        f'fill="{_MARKER_COLOR}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_plot(
    result: TestResult,
    null: NullDistribution,
    analysis: SpectrumAnalysis,
    path,
) -> None:
    """Write the two-panel test plot for one finished test run."""
    model = build_plot_model(result, null, analysis)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(render_plot_svg(model))
