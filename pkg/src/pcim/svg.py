"""Tiny deterministic SVG writer.

Only what the figures need: lines, rectangles, circles, polylines and text.
Coordinates are rounded to three decimals so output is byte-stable.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape


def _n(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Canvas:
    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self.items: list[str] = []

    def line(self, x1, y1, x2, y2, stroke="#000", width=1.0, dash: str | None = None) -> None:
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" '
            f'stroke="{stroke}" stroke-width="{_n(width)}"{extra}/>'
        )

    def rect(self, x, y, w, h, fill="#000") -> None:
        self.items.append(
            f'<rect x="{_n(x)}" y="{_n(y)}" width="{_n(max(w, 0.5))}" height="{_n(h)}" fill="{fill}"/>'
        )

    def circle(self, cx, cy, r, fill="#000") -> None:
        self.items.append(f'<circle cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(r)}" fill="{fill}"/>')

    def polyline(self, pts, stroke="#000", width=1.0, dash: str | None = None) -> None:
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        path = " ".join(f"{_n(x)},{_n(y)}" for x, y in pts)
        self.items.append(
            f'<polyline points="{path}" fill="none" stroke="{stroke}" stroke-width="{_n(width)}"{extra}/>'
        )

    def text(self, x, y, s: str, size=11, anchor="start") -> None:
        self.items.append(
            f'<text x="{_n(x)}" y="{_n(y)}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(s)}</text>'
        )

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(self.width)}" '
            f'height="{_n(self.height)}" viewBox="0 0 {_n(self.width)} {_n(self.height)}">'
        )
        body = "\n".join(["<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>", *self.items])
        return f"{head}\n{body}\n</svg>\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.render())
