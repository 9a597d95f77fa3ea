"""Exact rational polynomials and piecewise polynomials on [0, 1]."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class Poly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        c = [Fraction(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c) or (Fraction(0),)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return Poly([c / s for c in self.coeffs])

    def __pow__(self, k: int):
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def antiderivative(self) -> "Poly":
        """The antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def derivative(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:] or [0])

    def integral(self, a=0, b=1) -> Fraction:
        prim = self.antiderivative()
        return prim(Fraction(b)) - prim(Fraction(a))

    def __repr__(self):
        return f"Poly({', '.join(map(str, self.coeffs))})"


T = Poly([0, 1])
ONE = Poly([1])


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Polynomial pieces on consecutive intervals [t_i, t_{i+1}] covering [0, 1]."""
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if len(bps) != len(self.pieces) + 1 or bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must run from 0 to 1 with one more entry than pieces")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must increase strictly")

    @classmethod
    def single(cls, poly: Poly) -> "PiecewisePolynomial":
        return cls((Fraction(0), Fraction(1)), (poly,))

    def piece_at(self, t) -> Poly:
        for b, piece in zip(self.breakpoints[1:], self.pieces):
            if t <= b:
                return piece
        return self.pieces[-1]

    def __call__(self, t):
        return self.piece_at(t)(t)

    def integral(self) -> Fraction:
        return sum((p.integral(a, b) for a, b, p in
                    zip(self.breakpoints, self.breakpoints[1:], self.pieces)), Fraction(0))

    def grid(self, points: int = 101) -> list[Fraction]:
        """Equally spaced rational grid merged with the breakpoints."""
        g = {Fraction(i, points - 1) for i in range(points)}
        return sorted(g | set(self.breakpoints))

    def is_monotone(self) -> bool:
        """Nondecreasing check: the derivative of each piece is sampled at 201
        equally spaced points of its interval, endpoints included.  A grid test,
        not a proof."""
        # TODO: replace the grid with exact real-root isolation of the derivative
        for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            d = p.derivative()
            if any(d(a + (b - a) * Fraction(i, 200)) < 0 for i in range(201)):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "breakpoints": [str(b) for b in self.breakpoints],
            "pieces": [[str(c) for c in p.coeffs] for p in self.pieces],
        }

    @classmethod
    def from_json(cls, data) -> "PiecewisePolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Fraction(b) for b in data["breakpoints"]),
                   tuple(Poly(Fraction(c) for c in piece) for piece in data["pieces"]))


def grid_points(points: int = 101, extra: Sequence[Fraction] = ()) -> list[Fraction]:
    return sorted({Fraction(i, points - 1) for i in range(points)} | set(extra))
