"""SVG pictures of filament instances.

One path element per filament above a drawn axis: semicircles as analytic
arc commands, polylines as line commands, abstract filaments as dashed
semicircles over their spans (marked approximate, since only their spans are
known). Output bytes are a pure function of the document and highlight set.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .geometry import PolylineFilament, SemicircleFilament
from .instfile import InstanceDocument

_PAD = 24.0
_TARGET_WIDTH = 800.0
_AXIS_OVERHANG = 12.0


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(doc: InstanceDocument,
               highlight: frozenset[str] | set[str] | None = None) -> str:
    inst = doc.instance
    highlight = frozenset(highlight or ())
    unknown = highlight - set(doc.ids)
    if unknown:
        raise ValueError(f"highlight ids not in instance: {sorted(unknown)}")

    xs: list[float] = [0.0] if not inst.filaments else []
    top = 1.0
    for f in inst.filaments:
        xs += [float(f.left), float(f.right)]
        if isinstance(f, PolylineFilament):
            top = max(top, max(float(p.y) for p in f.vertices))
        else:
            top = max(top, (float(f.right) - float(f.left)) / 2)
    lo, hi = min(xs), max(xs)
    span = max(hi - lo, 1.0)
    scale = (_TARGET_WIDTH - 2 * _PAD) / span

    def sx(x: float) -> float:
        return _PAD + (x - lo) * scale

    axis_y = _PAD + top * scale
    width = _TARGET_WIDTH
    height = axis_y + _PAD

    def sy(y: float) -> float:
        return axis_y - y * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
        f' height="{_fmt(height)}"'
        f' viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<line x1="{_fmt(_PAD - _AXIS_OVERHANG)}" y1="{_fmt(axis_y)}"'
        f' x2="{_fmt(width - _PAD + _AXIS_OVERHANG)}" y2="{_fmt(axis_y)}"'
        ' stroke="#888" stroke-width="1"/>',
    ]
    for i, f in enumerate(inst.filaments):
        fid = doc.ids[i]
        hot = fid in highlight
        stroke = "#d03030" if hot else "#222222"
        swidth = "2.5" if hot else "1.2"
        extra = ""
        if isinstance(f, PolylineFilament):
            d = f"M {_fmt(sx(float(f.vertices[0].x)))} {_fmt(sy(float(f.vertices[0].y)))}"
            for p in f.vertices[1:]:
                d += f" L {_fmt(sx(float(p.x)))} {_fmt(sy(float(p.y)))}"
        else:
            if not isinstance(f, SemicircleFilament):
                extra = ' stroke-dasharray="6 3" data-approximate="true"'
            radius = (float(f.right) - float(f.left)) / 2 * scale
            d = (f"M {_fmt(sx(float(f.left)))} {_fmt(axis_y)}"
                 f" A {_fmt(radius)} {_fmt(radius)} 0 0 1"
                 f" {_fmt(sx(float(f.right)))} {_fmt(axis_y)}")
        parts.append(f'<path id={quoteattr("f-" + fid)} d="{escape(d)}"'
                     f' fill="none" stroke="{stroke}"'
                     f' stroke-width="{swidth}"{extra}/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
