"""Exact arithmetic in the rational Picard group of Mbar_{g,n}.

The divisor basis is the Hodge class lambda, the cotangent classes
psi_1, ..., psi_n, the irreducible boundary class delta_0, and the
separating boundary classes delta_{i:S} for 0 <= i <= g and
S a subset of {1, ..., n}.  A separating class names the locus of curves
with a node splitting off a genus-i piece carrying exactly the marked
points in S, so delta_{i:S} = delta_{g-i:S^c} and an index is stored in a
canonical form.  Genus-0 pieces need at least two marked points besides
the node, which rules out (0, S) with |S| < 2 and its mirror (g, S) with
|S| > n - 2.

All coefficients are fractions.Fraction; there is no floating point in
this module.  Values are immutable after construction and all operations
are pure, so everything here is safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DimensionMismatch, InvalidIndex, WrongGenus

Rational = Fraction | int


def _frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(x: Rational) -> str:
    x = _frac(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


@dataclass(frozen=True, order=True)
class BoundaryIndex:
    """Canonical name of a separating boundary divisor.

    The representative with the smaller genus part is stored; on a tie
    (i = g - i) the side containing marked point 1 is kept, which in
    particular rewrites (i, {}) to (i, {1..n}).
    """

    i: int
    points: tuple[int, ...]  # sorted marked-point labels

    @property
    def point_set(self) -> frozenset[int]:
        return frozenset(self.points)

    def __str__(self) -> str:
        return "delta_{%d:{%s}}" % (self.i, ",".join(map(str, self.points)))


def _check_gn(g: int, n: int) -> None:
    if g < 2:
        raise InvalidIndex("genus must be >= 2, got g=%s" % (g,))
    if n < 1:
        raise InvalidIndex("need n >= 1 marked points, got n=%s" % (n,))


def _class_is_valid(g: int, n: int, i: int, size: int) -> bool:
    # A genus-0 side must carry >= 2 marked points; stated on both
    # representatives: i = 0 forces |S| >= 2, i = g forces |S| <= n - 2.
    if i == 0 and size < 2:
        return False
    if i == g and size > n - 2:
        return False
    return True


def canonicalize_index(g: int, n: int, i: int, S: Iterable[int]) -> BoundaryIndex:
    """Return the canonical representative of delta_{i:S} on Mbar_{g,n}.

    Raises InvalidIndex when neither (i, S) nor (g-i, S^c) names a
    boundary divisor.
    """
    _check_gn(g, n)
    S = frozenset(S)
    if not 0 <= i <= g:
        raise InvalidIndex("genus part i=%s outside [0, %s]" % (i, g))
    if not all(isinstance(p, int) and 1 <= p <= n for p in S):
        raise InvalidIndex("marked points %s not a subset of {1..%s}" % (sorted(S), n))
    if not _class_is_valid(g, n, i, len(S)):
        raise InvalidIndex(
            "(i=%d, S=%s) is not a boundary divisor on Mbar_{%d,%d}"
            % (i, sorted(S), g, n)
        )
    comp = frozenset(range(1, n + 1)) - S
    if i < g - i:
        keep_i, keep_S = i, S
    elif i > g - i:
        keep_i, keep_S = g - i, comp
    else:
        keep_i, keep_S = (i, S) if 1 in S else (i, comp)
    return BoundaryIndex(keep_i, tuple(sorted(keep_S)))


def boundary_term(g: int, n: int, i: int, S: Iterable[int]):
    """Classify the formal symbol delta_{i:S} for term accumulation.

    Returns ("delta", BoundaryIndex) for an actual boundary divisor,
    ("psi", j) for the degenerate singleton case delta_{0:{j}} = -psi_j,
    and ("zero", None) for delta_{0:{}} which is no divisor at all.
    Anything else raises InvalidIndex.
    """
    _check_gn(g, n)
    S = frozenset(S)
    if not 0 <= i <= g:
        raise InvalidIndex("genus part i=%s outside [0, %s]" % (i, g))
    if not all(isinstance(p, int) and 1 <= p <= n for p in S):
        raise InvalidIndex("marked points %s not a subset of {1..%s}" % (sorted(S), n))
    if _class_is_valid(g, n, i, len(S)):
        return ("delta", canonicalize_index(g, n, i, S))
    comp = frozenset(range(1, n + 1)) - S
    if i == 0 and len(S) == 1:
        return ("psi", next(iter(S)))
    if i == g and len(comp) == 1:
        return ("psi", next(iter(comp)))
    if (i == 0 and not S) or (i == g and not comp):
        return ("zero", None)
    raise InvalidIndex(
        "(i=%d, S=%s) names no boundary divisor on Mbar_{%d,%d}" % (i, sorted(S), g, n)
    )


def canonical_boundary_indices(g: int, n: int) -> list[BoundaryIndex]:
    """All separating boundary classes on Mbar_{g,n}, each exactly once."""
    _check_gn(g, n)
    labels = range(1, n + 1)
    out = []
    for i in range(0, g // 2 + 1):
        for size in range(0, n + 1):
            if not _class_is_valid(g, n, i, size):
                continue
            if 2 * i > g:
                continue
            for S in combinations(labels, size):
                if 2 * i == g and 1 not in S:
                    continue  # the mirror representative carries label 1
                out.append(BoundaryIndex(i, S))
    return out


class _PicardVector:
    """Shared coefficient storage for divisor classes and curve functionals."""

    __slots__ = ("g", "n", "lam", "psi", "delta0", "boundary")

    def __init__(self, g, n, lam=0, psi=None, delta0=0, boundary=None):
        _check_gn(g, n)
        self.g = g
        self.n = n
        self.lam = _frac(lam)
        psi = tuple(_frac(c) for c in (psi or (0,) * n))
        if len(psi) != n:
            raise DimensionMismatch("expected %d psi coefficients" % n)
        self.psi = psi
        self.delta0 = _frac(delta0)
        items = {}
        for idx, c in sorted((boundary or {}).items()):
            c = _frac(c)
            if c:
                items[idx] = c
        self.boundary = items

    # -- coefficient access ------------------------------------------------

    def psi_coeff(self, j: int) -> Fraction:
        if not 1 <= j <= self.n:
            raise InvalidIndex("psi index %s outside 1..%d" % (j, self.n))
        return self.psi[j - 1]

    def boundary_coeff(self, i: int, S: Iterable[int]) -> Fraction:
        idx = canonicalize_index(self.g, self.n, i, S)
        return self.boundary.get(idx, Fraction(0))

    def _coeffs(self):
        return (self.lam, self.psi, self.delta0, self.boundary)

    def _same_space(self, other) -> None:
        if (self.g, self.n) != (other.g, other.n):
            raise DimensionMismatch(
                "operands live on Mbar_{%d,%d} and Mbar_{%d,%d}"
                % (self.g, self.n, other.g, other.n)
            )

    # -- linear structure ----------------------------------------------------

    def _combine(self, other, r: Rational):
        self._same_space(other)
        r = _frac(r)
        boundary = dict(self.boundary)
        for idx, c in other.boundary.items():
            boundary[idx] = boundary.get(idx, Fraction(0)) + r * c
        return type(self)(
            self.g,
            self.n,
            self.lam + r * other.lam,
            tuple(a + r * b for a, b in zip(self.psi, other.psi)),
            self.delta0 + r * other.delta0,
            boundary,
        )

    def add(self, other):
        return self._combine(other, 1)

    def sub(self, other):
        return self._combine(other, -1)

    def scale(self, r: Rational):
        r = _frac(r)
        return type(self)(
            self.g,
            self.n,
            r * self.lam,
            tuple(r * c for c in self.psi),
            r * self.delta0,
            {idx: r * c for idx, c in self.boundary.items()},
        )

    __add__ = add
    __sub__ = sub

    def __mul__(self, r):
        return self.scale(r)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not (self.lam or self.delta0 or any(self.psi) or self.boundary)

    # -- serialization -------------------------------------------------------

    def to_jsonable(self) -> dict:
        d = {
            "g": self.g,
            "n": self.n,
            "lambda": format_rational(self.lam),
            "psi": [format_rational(c) for c in self.psi],
            "delta0": format_rational(self.delta0),
            "boundary": [
                {"i": idx.i, "S": list(idx.points), "c": format_rational(c)}
                for idx, c in sorted(self.boundary.items())
            ],
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable())

    def __repr__(self):
        return "%s(g=%d, n=%d, %s)" % (
            type(self).__name__,
            self.g,
            self.n,
            self.to_json(),
        )


def _parse_boundary(g, n, entries):
    # entries naming the same class under mirrored indices accumulate
    out: dict[BoundaryIndex, Fraction] = {}
    for e in entries:
        idx = canonicalize_index(g, n, e["i"], e["S"])
        out[idx] = out.get(idx, Fraction(0)) + parse_rational(e["c"])
    return out


class DivisorClass(_PicardVector):
    """A rational divisor class on Mbar_{g,n}, stored in the standard basis."""

    def equals(self, other: "DivisorClass") -> bool:
        """Coefficientwise equality; for g = 2 equality of normal forms.

        The genus-2 Picard group carries the single relation
        lambda = delta_0/10 + delta_1/5, so classes there agree exactly
        when their lambda-free normal forms do.
        """
        self._same_space(other)
        if self.g == 2:
            a, b = g2_normal_form(self), g2_normal_form(other)
        else:
            a, b = self, other
        return a._coeffs() == b._coeffs()

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.equals(other)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    @classmethod
    def from_jsonable(cls, d: Mapping) -> "DivisorClass":
        g, n = int(d["g"]), int(d["n"])
        return cls(
            g,
            n,
            parse_rational(d["lambda"]),
            tuple(parse_rational(c) for c in d["psi"]),
            parse_rational(d["delta0"]),
            _parse_boundary(g, n, d["boundary"]),
        )

    @classmethod
    def from_json(cls, s: str) -> "DivisorClass":
        return cls.from_jsonable(json.loads(s))


class CurveFunctional(_PicardVector):
    """Intersection numbers of a one-parameter family against the basis.

    Pairing a functional with a DivisorClass is the bilinear form
    sum over basis elements of (functional value) * (class coefficient).
    """

    def pair(self, d: DivisorClass) -> Fraction:
        self._same_space(d)
        total = self.lam * d.lam + self.delta0 * d.delta0
        total += sum(a * b for a, b in zip(self.psi, d.psi))
        for idx, c in self.boundary.items():
            total += c * d.boundary.get(idx, Fraction(0))
        return total

    def __eq__(self, other):
        if not isinstance(other, CurveFunctional):
            return NotImplemented
        self._same_space(other)
        return self._coeffs() == other._coeffs()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def to_jsonable(self) -> dict:
        d = super().to_jsonable()
        d["functional"] = True
        return d

    @classmethod
    def from_jsonable(cls, d: Mapping) -> "CurveFunctional":
        g, n = int(d["g"]), int(d["n"])
        return cls(
            g,
            n,
            parse_rational(d["lambda"]),
            tuple(parse_rational(c) for c in d["psi"]),
            parse_rational(d["delta0"]),
            _parse_boundary(g, n, d["boundary"]),
        )


def pair(f: CurveFunctional, d: DivisorClass) -> Fraction:
    return f.pair(d)


def add(a, b):
    return a.add(b)


def scale(a, r: Rational):
    return a.scale(r)


def zero_class(g: int, n: int) -> DivisorClass:
    return DivisorClass(g, n)


def lambda_class(g: int, n: int) -> DivisorClass:
    return DivisorClass(g, n, lam=1)


def psi_class(g: int, n: int, j: int) -> DivisorClass:
    psi = [0] * n
    psi[j - 1] = 1
    return DivisorClass(g, n, psi=psi)


def delta0_class(g: int, n: int) -> DivisorClass:
    return DivisorClass(g, n, delta0=1)


def boundary_class(g: int, n: int, i: int, S: Iterable[int]) -> DivisorClass:
    return DivisorClass(g, n, boundary={canonicalize_index(g, n, i, S): 1})


def genus1_boundary_sum(g: int, n: int) -> DivisorClass:
    """Sum of all distinct boundary classes with a genus-1 side (g = 2 only)."""
    if g != 2:
        raise WrongGenus("genus-1 boundary total only defined for g=2")
    total = {}
    for idx in canonical_boundary_indices(g, n):
        if idx.i == 1:
            total[idx] = Fraction(1)
    return DivisorClass(g, n, boundary=total)


def g2_normal_form(d: DivisorClass) -> DivisorClass:
    """Unique representative with zero lambda coefficient, genus 2 only.

    Substitutes lambda = delta_0/10 + (1/5) * (sum of the distinct
    genus-1 boundary classes); idempotent by construction.
    """
    if d.g != 2:
        raise WrongGenus("normal form uses the genus-2 relation, got g=%d" % d.g)
    if not d.lam:
        return d
    relation = delta0_class(2, d.n).scale(Fraction(1, 10)).add(
        genus1_boundary_sum(2, d.n).scale(Fraction(1, 5))
    )
    return d.sub(lambda_class(2, d.n).scale(d.lam)).add(relation.scale(d.lam))


def equals(a: DivisorClass, b: DivisorClass) -> bool:
    return a.equals(b)


class Accumulator:
    """Builder that accumulates coefficient contributions term by term.

    Boundary contributions are routed through boundary_term, so repeated
    names for the same geometric class pile up on one canonical key, a
    delta_{0:{j}}-shaped term lands on psi_j with flipped sign, and a
    delta_{0:{}}-shaped term is dropped.
    """

    def __init__(self, g: int, n: int):
        _check_gn(g, n)
        self.g = g
        self.n = n
        self.lam = Fraction(0)
        self.psi = [Fraction(0)] * n
        self.delta0 = Fraction(0)
        self.boundary: dict[BoundaryIndex, Fraction] = {}

    def add_lambda(self, c: Rational) -> None:
        self.lam += _frac(c)

    def add_delta0(self, c: Rational) -> None:
        self.delta0 += _frac(c)

    def add_psi(self, j: int, c: Rational) -> None:
        if not 1 <= j <= self.n:
            raise InvalidIndex("psi index %s outside 1..%d" % (j, self.n))
        self.psi[j - 1] += _frac(c)

    def add_boundary(self, i: int, S: Iterable[int], c: Rational) -> None:
        kind, payload = boundary_term(self.g, self.n, i, S)
        if kind == "delta":
            self.boundary[payload] = self.boundary.get(payload, Fraction(0)) + _frac(c)
        elif kind == "psi":
            self.add_psi(payload, -_frac(c))
        # "zero": nothing to record

    def add_boundary_strict(self, idx: BoundaryIndex, c: Rational) -> None:
        self.boundary[idx] = self.boundary.get(idx, Fraction(0)) + _frac(c)

    def divisor_class(self) -> DivisorClass:
        return DivisorClass(self.g, self.n, self.lam, self.psi, self.delta0, self.boundary)

    def functional(self) -> CurveFunctional:
        return CurveFunctional(self.g, self.n, self.lam, self.psi, self.delta0, self.boundary)
