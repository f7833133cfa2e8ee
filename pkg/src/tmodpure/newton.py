"""Newton polygons of polynomials in t over K((sigma)) and the purity classification.

The polygon of ``sum c_i t^i`` is the lower convex hull of the points
``(i, v(c_i))``.  A module is abelian when every slope of the polygon of its
last invariant factor is positive, pure when the polygon has a single edge,
and then its weight is the reciprocal of that slope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionExhausted


def lower_hull(points):
    """Lower convex hull (monotone chain) of integer or rational points.

    Points sharing an x-coordinate keep only the lowest one.  Collinear
    interior points are dropped, so consecutive slopes strictly increase.
    """
    best = {}
    for x, y in points:
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def hull_value(vertices, x):
    """Height of the hull at abscissa ``x`` (None outside its x-range)."""
    if not vertices or x < vertices[0][0] or x > vertices[-1][0]:
        return None
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:]):
        if x1 <= x <= x2:
            return Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
    return Fraction(vertices[0][1])


@dataclass
class NewtonPolygon:
    points: list
    vertices: list
    edges: list  # (slope: Fraction, horizontal length: int)

    @classmethod
    def from_points(cls, points) -> "NewtonPolygon":
        points = sorted(points)
        vertices = lower_hull(points)
        edges = []
        for (x1, y1), (x2, y2) in zip(vertices, vertices[1:]):
            edges.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
        return cls(list(points), vertices, edges)

    @property
    def slopes(self):
        return [s for s, _ in self.edges]

    def value_at(self, x):
        return hull_value(self.vertices, x)

    def shifted(self, k: int) -> "NewtonPolygon":
        return NewtonPolygon.from_points([(x, y + k) for x, y in self.points])

    def to_dict(self) -> dict:
        return {
            "points": [[x, y] for x, y in self.points],
            "vertices": [[x, y] for x, y in self.vertices],
            "edges": [{"slope": _fmt(s), "length": n} for s, n in self.edges],
        }

    def __eq__(self, other):
        # the polygon is its hull; points strictly above it carry no information
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return (self.vertices, self.edges) == (other.vertices, other.edges)


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def newton_polygon(p) -> NewtonPolygon:
    """Newton polygon of a TPoly.

    Exact-zero coefficients contribute no point.  A truncated coefficient
    whose known window is zero is harmless when its valuation bound lies
    strictly above the hull of the certified points; otherwise the polygon
    is undecided and PrecisionExhausted is raised.
    """
    certified, pending = [], []
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        if c.is_indeterminate():
            pending.append((i, c.lower_bound()))
        else:
            certified.append((i, c.valuation()))
    if pending:
        vertices = lower_hull(certified)
        for i, bound in pending:
            h = hull_value(vertices, i)
            if h is None or not bound > h:
                raise PrecisionExhausted(
                    f"coefficient of t^{i} is O(s^{bound}) and may change the polygon",
                    needed=i)
    return NewtonPolygon.from_points(certified)


@dataclass
class Classification:
    abelian: bool
    pure: bool | None
    weight: Fraction | None
    rank: int | None
    slopes: list
    polygon: NewtonPolygon
    d: int
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "abelian": self.abelian,
            "pure": self.pure,
            "weight": None if self.weight is None else _fmt(self.weight),
            "rank": self.rank,
            "slopes": [_fmt(s) for s in self.slopes],
            "d": self.d,
            "polygon": self.polygon.to_dict(),
            "warnings": list(self.warnings),
        }


def classify(polygon: NewtonPolygon, d: int) -> Classification:
    slopes = polygon.slopes
    abelian = all(s > 0 for s in slopes)
    pure = weight = rank = None
    warnings = []
    if abelian:
        pure = len(slopes) == 1
        if pure:
            weight = 1 / slopes[0]
            r = d * slopes[0]
            if r.denominator == 1:
                rank = int(r)
            else:
                warnings.append(f"d*slope = {_fmt(r)} is not an integer; rank left undefined")
    return Classification(abelian, pure, weight, rank, slopes, polygon, d, warnings)


def classify_tmodule(D, prec=None, pivot_seed=None):
    """Classification of a t-module; returns ``(Classification, DiagResult)``."""
    from .smith import char_matrix, diagonalize

    M = char_matrix(D)
    prec_try = prec
    last = None
    for _ in range(3):
        res = diagonalize(M, prec=prec_try, pivot_seed=pivot_seed)
        try:
            poly = newton_polygon(res.diagonal[-1])
        except PrecisionExhausted as err:
            last = err
            prec_try = 2 * res.prec_used
            continue
        c = classify(poly, D.d)
        c.warnings.extend(res.notes)
        return c, res
    raise PrecisionExhausted(f"Newton polygon undecided after escalation: {last}")


# --- plots --------------------------------------------------------------------

def plot_ascii(polygon: NewtonPolygon, cell: int = 4) -> str:
    """Text plot: x = t-degree, y = sigma-valuation; ``@`` vertex, ``o`` point, ``.`` edge."""
    pts = polygon.points
    if not pts:
        return "(empty polygon)"
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, x1 = 0, max(xs)
    y0, y1 = min(min(ys), 0), max(max(ys), 0)
    width = (x1 - x0) * cell + 1
    grid = {}
    verts = set(polygon.vertices)
    for col in range(width):
        h = polygon.value_at(Fraction(col, cell) + x0)
        if h is not None:
            grid[(round(h), col)] = "."
    for x, y in pts:
        grid[(y, (x - x0) * cell)] = "@" if (x, y) in verts else "o"
    label_w = max(len(str(y0)), len(str(y1)))
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = "".join(grid.get((y, c), "+" if c % cell == 0 and y == 0 else
                               ("-" if y == 0 else " ")) for c in range(width))
        lines.append(f"{y:>{label_w}} |{row.rstrip()}")
    lines.append(" " * label_w + " +" + "-" * width)
    axis = "".join(str(x).ljust(cell) for x in range(x0, x1 + 1))
    lines.append(" " * (label_w + 2) + axis.rstrip())
    return "\n".join(lines)


def plot_svg(polygon: NewtonPolygon, title: str = "", scale: int = 60) -> str:
    """Deterministic SVG plot with filled markers and solid hull edges."""
    pts = polygon.points or [(0, 0)]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, x1 = 0, max(max(xs), 1)
    y0, y1 = min(min(ys), 0), max(max(ys), 0)
    margin = 50
    w = (x1 - x0) * scale + 2 * margin
    h = (y1 - y0) * scale + 2 * margin

    def sx(x):
        return margin + (x - x0) * scale

    def sy(y):
        return margin + (y1 - y) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{w // 2}" y="20" text-anchor="middle" font-size="14">'
                   f'{_escape(title)}</text>')
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{sx(x)}" y1="{sy(y1)}" x2="{sx(x)}" y2="{sy(y0)}" '
                   'stroke="#ddd" stroke-width="1"/>')
        out.append(f'<text x="{sx(x)}" y="{sy(y0) + 20}" text-anchor="middle" '
                   f'font-size="12">{x}</text>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="{sx(x0)}" y1="{sy(y)}" x2="{sx(x1)}" y2="{sy(y)}" '
                   'stroke="#ddd" stroke-width="1"/>')
        out.append(f'<text x="{sx(x0) - 10}" y="{sy(y) + 4}" text-anchor="end" '
                   f'font-size="12">{y}</text>')
    out.append(f'<line x1="{sx(x0)}" y1="{sy(0)}" x2="{sx(x1)}" y2="{sy(0)}" '
               'stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{sx(0)}" y1="{sy(y0)}" x2="{sx(0)}" y2="{sy(y1)}" '
               'stroke="black" stroke-width="1"/>')
    if len(polygon.vertices) > 1:
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in polygon.vertices)
        out.append(f'<polyline points="{coords}" fill="none" stroke="black" '
                   'stroke-width="2"/>')
    verts = set(polygon.vertices)
    for x, y in polygon.points:
        r = 5 if (x, y) in verts else 4
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="{r}" fill="black"/>')
        out.append(f'<text x="{sx(x) + 8}" y="{sy(y) - 8}" font-size="11">({x},{y})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
