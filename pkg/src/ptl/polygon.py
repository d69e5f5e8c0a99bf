"""Newton polygons as multisets of exact rational slopes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _as_slopes(pairs) -> tuple[tuple[Fraction, int], ...]:
    acc: Counter = Counter()
    for slope, mult in pairs:
        slope = Fraction(slope)
        if mult < 0:
            raise ValueError("negative multiplicity")
        if mult:
            acc[slope] += int(mult)
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class NewtonPolygon:
    """Slopes in increasing order with multiplicities; starts at (0, 0)."""

    slopes: tuple[tuple[Fraction, int], ...]

    def __init__(self, pairs: Iterable = ()):
        object.__setattr__(self, "slopes", _as_slopes(pairs))

    @classmethod
    def from_slope_list(cls, slopes: Iterable) -> NewtonPolygon:
        return cls((s, 1) for s in slopes)

    @classmethod
    def ordinary(cls, g: int) -> NewtonPolygon:
        return cls([(0, g), (1, g)])

    @classmethod
    def supersingular(cls, g: int) -> NewtonPolygon:
        return cls([(Fraction(1, 2), 2 * g)])

    @classmethod
    def elementary(cls, c: int, d: int, copies: int = 1) -> NewtonPolygon:
        """(c/d, (d-c)/d) with d slopes of each, repeated ``copies`` times."""
        lam = Fraction(c, d)
        if lam == Fraction(1, 2):
            return cls([(lam, 2 * copies * lam.denominator)])
        return cls([(lam, lam.denominator * copies), (1 - lam, lam.denominator * copies)])

    @property
    def length(self) -> int:
        return sum(m for _, m in self.slopes)

    @property
    def genus(self) -> int:
        return self.length // 2

    @property
    def total_height(self) -> Fraction:
        return sum((s * m for s, m in self.slopes), Fraction(0))

    def multiplicity(self, slope) -> int:
        slope = Fraction(slope)
        return next((m for s, m in self.slopes if s == slope), 0)

    def slope_list(self) -> list[Fraction]:
        return [s for s, m in self.slopes for _ in range(m)]

    def vertices(self) -> list[tuple[int, Fraction]]:
        pts = [(0, Fraction(0))]
        for s, m in self.slopes:
            x, y = pts[-1]
            pts.append((x + m, y + s * m))
        return pts

    def height(self, x) -> Fraction:
        """Height of the polygon above abscissa ``x`` (0 <= x <= length)."""
        x = Fraction(x)
        y = Fraction(0)
        left = 0
        for s, m in self.slopes:
            if x <= left + m:
                return y + s * (x - left)
            y += s * m
            left += m
        if x == left:
            return y
        raise ValueError(f"x = {x} outside [0, {left}]")

    def heights(self) -> list[Fraction]:
        return [self.height(x) for x in range(self.length + 1)]

    def is_symmetric(self) -> bool:
        return all(m == self.multiplicity(1 - s) for s, m in self.slopes)

    def has_integral_breakpoints(self) -> bool:
        return all(y.denominator == 1 for _, y in self.vertices())

    def slopes_in_unit_interval(self) -> bool:
        return all(0 <= s <= 1 for s, _ in self.slopes)

    def is_valid_abelian(self) -> bool:
        return (
            self.length % 2 == 0
            and self.slopes_in_unit_interval()
            and self.is_symmetric()
            and self.has_integral_breakpoints()
            and self.total_height == self.genus
        )

    def is_supersingular(self) -> bool:
        return all(s == Fraction(1, 2) for s, _ in self.slopes) and self.length > 0

    def is_ordinary(self) -> bool:
        return self.multiplicity(0) == self.genus and self.multiplicity(1) == self.genus

    @property
    def p_rank(self) -> int:
        return self.multiplicity(0)

    def __add__(self, other: NewtonPolygon) -> NewtonPolygon:
        return NewtonPolygon(list(self.slopes) + list(other.slopes))

    def label(self) -> str:
        """Compact name such as ``ord^2+(1/4,3/4)+ss^2``."""
        if not self.slopes:
            return "empty"
        parts = []
        rest = dict(self.slopes)
        ords = min(rest.get(Fraction(0), 0), rest.get(Fraction(1), 0))
        if ords:
            parts.append("ord" if ords == 1 else f"ord^{ords}")
            rest[Fraction(0)] -= ords
            rest[Fraction(1)] -= ords
        for s in sorted(rest):
            if s >= Fraction(1, 2) or not rest[s]:
                continue
            d = s.denominator
            pair = min(rest[s], rest.get(1 - s, 0))
            copies = pair // d
            if copies:
                name = f"({s},{1 - s})"
                parts.append(name if copies == 1 else f"{name}^{copies}")
                rest[s] -= copies * d
                rest[1 - s] -= copies * d
        half = rest.get(Fraction(1, 2), 0)
        if half and half % 2 == 0:
            parts.append("ss" if half == 2 else f"ss^{half // 2}")
            rest[Fraction(1, 2)] = 0
        leftover = [(s, m) for s, m in sorted(rest.items()) if m]
        if leftover:
            parts.append("[" + ",".join(f"{s}^{m}" for s, m in leftover) + "]")
        return "+".join(parts)

    def as_strings(self) -> list[str]:
        """Slopes with multiplicity as "num/den" strings."""
        return [f"{s.numerator}/{s.denominator}" for s in self.slope_list()]

    @classmethod
    def parse(cls, text: str) -> NewtonPolygon:
        """Read either a label (``ord^2+(1/4,3/4)+ss``) or a slope list (``0^2,1/2^4,1^2``)."""
        text = "".join(text.split())
        if not text:
            raise ValueError("empty polygon")
        if any(text.startswith(w) for w in ("ord", "ss", "(")):
            out = cls()
            for part in text.split("+"):
                body, _, rep = part.partition("^")
                copies = int(rep) if rep else 1
                if body == "ord":
                    out = out + cls.ordinary(copies)
                elif body == "ss":
                    out = out + cls.supersingular(copies)
                elif body.startswith("(") and body.endswith(")"):
                    lo, hi = (Fraction(x) for x in body[1:-1].split(","))
                    if lo + hi != 1 or lo >= hi:
                        raise ValueError(f"{body} is not a pair (c/d, (d-c)/d)")
                    out = out + cls.elementary(lo.numerator, lo.denominator, copies)
                else:
                    raise ValueError(f"unknown polygon piece {part!r}")
            return out
        pairs = []
        for tok in text.split(","):
            slope, _, mult = tok.partition("^")
            pairs.append((Fraction(slope), int(mult) if mult else 1))
        return cls(pairs)

    def __str__(self):
        return self.label()


def lower_convex_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Vertices of the lower convex hull of points sorted by abscissa."""
    hull: list[tuple[int, Fraction]] = []
    for pt in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] when it lies on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def polygon_from_points(points: Sequence[tuple[int, Fraction]]) -> NewtonPolygon:
    hull = lower_convex_hull(points)
    pairs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        pairs.append((Fraction(y2 - y1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(pairs)
