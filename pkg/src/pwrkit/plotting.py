"""Dependency-free SVG rendering of ratio convergence traces.

The chart is built from f-strings with fixed-precision coordinates, so the
same trace always yields byte-identical output; that makes plots diffable
and directly comparable in tests.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import PwrTrace

_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

_MARGIN_LEFT = 58.0
_MARGIN_RIGHT = 24.0
_MARGIN_TOP = 20.0
_MARGIN_BOTTOM = 46.0
_LEGEND_WIDTH = 180.0


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _tick_step(span: float) -> float:
    """A round step from {1, 2, 5} * 10^e giving four to eight ticks."""
    if span <= 0.0:
        return 1.0
    raw = span / 5.0
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for factor in (1.0, 2.0, 5.0, 10.0):
        if raw <= factor * magnitude:
            return factor * magnitude
    return 10.0 * magnitude


def render_convergence_svg(trace: PwrTrace, width: int = 820, height: int = 420) -> str:
    """One polyline per node of r(k) against k, with a colour legend.

    Non-finite sentinel ratios are dropped from their polyline; a trace with
    no finite ratio at all cannot be drawn and raises.
    """
    if trace.k_max < 2:
        raise ValueError("plot needs a trace with k_max >= 2")
    ratio_rows = np.stack(trace.ratios)
    finite = np.isfinite(ratio_rows)
    if not finite.any():
        raise ValueError("trace has no finite ratios to plot")

    y_min = float(ratio_rows[finite].min())
    y_max = float(ratio_rows[finite].max())
    if y_min == y_max:
        y_min -= 0.5
        y_max += 0.5
    pad = 0.05 * (y_max - y_min)
    y_min -= pad
    y_max += pad

    plot_left = _MARGIN_LEFT
    plot_right = width - _MARGIN_RIGHT - _LEGEND_WIDTH
    plot_top = _MARGIN_TOP
    plot_bottom = height - _MARGIN_BOTTOM

    def x_of(k: float) -> float:
        return plot_left + (k - 1.0) / (trace.k_max - 1.0) * (plot_right - plot_left)

    def y_of(value: float) -> float:
        rel = (value - y_min) / (y_max - y_min)
        return plot_bottom - rel * (plot_bottom - plot_top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]

    # Axes with integer k ticks and round-valued ratio ticks.
    axis = "#333333"
    parts.append(
        f'<line x1="{plot_left:.2f}" y1="{plot_bottom:.2f}" x2="{plot_right:.2f}" '
        f'y2="{plot_bottom:.2f}" stroke="{axis}" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{plot_left:.2f}" y1="{plot_top:.2f}" x2="{plot_left:.2f}" '
        f'y2="{plot_bottom:.2f}" stroke="{axis}" stroke-width="1"/>'
    )
    k_step = max(1, math.ceil((trace.k_max - 1) / 12))
    for k in range(1, trace.k_max + 1, k_step):
        x = x_of(k)
        parts.append(
            f'<line x1="{x:.2f}" y1="{plot_bottom:.2f}" x2="{x:.2f}" '
            f'y2="{plot_bottom + 5.0:.2f}" stroke="{axis}" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 18.0:.2f}" font-size="11" '
            f'text-anchor="middle" fill="{axis}">{k}</text>'
        )
    step = _tick_step(y_max - y_min)
    tick = math.ceil(y_min / step) * step
    while tick <= y_max + 1e-12:
        y = y_of(tick)
        label = f"{round(tick, 10):g}"
        parts.append(
            f'<line x1="{plot_left - 5.0:.2f}" y1="{y:.2f}" x2="{plot_left:.2f}" '
            f'y2="{y:.2f}" stroke="{axis}" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{plot_left:.2f}" y1="{y:.2f}" x2="{plot_right:.2f}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{plot_left - 9.0:.2f}" y="{y + 3.5:.2f}" font-size="11" '
            f'text-anchor="end" fill="{axis}">{label}</text>'
        )
        tick += step
    mid_x = (plot_left + plot_right) / 2.0
    parts.append(
        f'<text x="{mid_x:.2f}" y="{height - 10.0:.2f}" font-size="12" '
        f'text-anchor="middle" fill="{axis}">iteration k</text>'
    )
    mid_y = (plot_top + plot_bottom) / 2.0
    parts.append(
        f'<text x="16.00" y="{mid_y:.2f}" font-size="12" text-anchor="middle" '
        f'fill="{axis}" transform="rotate(-90 16.00 {mid_y:.2f})">power-weakness ratio</text>'
    )

    legend_x = plot_right + 24.0
    legend_y = plot_top + 8.0
    for idx, name in enumerate(trace.labels):
        color = _PALETTE[idx % len(_PALETTE)]
        points = [
            f"{x_of(k):.2f},{y_of(float(ratio_rows[k - 1, idx])):.2f}"
            for k in range(1, trace.k_max + 1)
            if finite[k - 1, idx]
        ]
        if points:
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.6" '
                f'points="{" ".join(points)}"/>'
            )
        row_y = legend_y + idx * 18.0
        parts.append(
            f'<line x1="{legend_x:.2f}" y1="{row_y:.2f}" x2="{legend_x + 20.0:.2f}" '
            f'y2="{row_y:.2f}" stroke="{color}" stroke-width="2.5"/>'
        )
        parts.append(
            f'<text x="{legend_x + 26.0:.2f}" y="{row_y + 3.5:.2f}" font-size="11" '
            f'fill="{axis}">{_escape(name)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
