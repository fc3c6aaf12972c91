"""Boundary test curves on Mbar_{g,2g-2} and their enumerative oracles.

Three families of one-parameter families of stable curves, each pinned
down by a genus split i and a marked-point split s:

* family A: a fixed genus-i curve carrying p_1..p_s is attached at a
  point that sweeps a fixed genus-(g-i) curve carrying the rest;
* family B: two fixed curves glued at a node, with p_{s+1} sweeping the
  genus-i side;
* family C: two fixed curves joined through a three-pointed rational
  bridge, with p_{s+1} sweeping the bridge.

curve_a/curve_b/curve_c return the intersection numbers of the family
against the whole divisor basis as a CurveFunctional.  The oracle_*
functions return independently derived intersection numbers of the same
families against the divisor class of the quadratic-differential stratum
with signature (1^{2g-2}, 2^{g-1}); the two routes are compared by the
audit in qstrata.classes, and the known disagreements are reported there
rather than patched here.

Degenerate parameter corners whose unstable component would be
contracted keep their functional meaning through the delta_{0:{j}} =
-psi_j bookkeeping in the accumulator; the one spec that is rejected
(family A with i=0, s=1) is the one whose contraction would hand the
moving role to a different labelled point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidSpec
from .picard import Accumulator, CurveFunctional

FAMILIES = ("A", "B", "C")


@dataclass(frozen=True, order=True)
class TestCurveSpec:
    family: str
    g: int
    i: int
    s: int

    def __post_init__(self):
        validate_spec(self.family, self.g, self.i, self.s)

    def __str__(self):
        return "%s_{%d:%d} (g=%d)" % (self.family, self.i, self.s, self.g)


def validate_spec(family: str, g: int, i: int, s: int) -> None:
    if family not in FAMILIES:
        raise InvalidSpec("unknown family %r" % (family,))
    if g < 2:
        raise InvalidSpec("test curves need g >= 2")
    if not 0 <= i <= g:
        raise InvalidSpec("i=%d outside [0, %d]" % (i, g))
    if family == "A":
        if not 1 <= s <= 2 * g - 2:
            raise InvalidSpec("family A needs 1 <= s <= 2g-2")
        if i == g and s > 2 * g - 5:
            raise InvalidSpec("family A with i=g needs s <= 2g-5")
        if i == 0 and s < 2:
            # the genus-0 side would carry two special points and be
            # contracted onto the moving attachment point
            raise InvalidSpec("family A with i=0 needs s >= 2")
    elif family == "B":
        if not 0 <= s <= 2 * g - 3:
            raise InvalidSpec("family B needs 0 <= s <= 2g-3")
        if i == 0 and s < 2:
            raise InvalidSpec("family B with i=0 needs s >= 2")
    else:
        if not 0 <= s <= 2 * g - 4:
            raise InvalidSpec("family C needs 0 <= s <= 2g-4")
        if i == 0 and s < 1:
            raise InvalidSpec("family C with i=0 needs s >= 1")
        if i == g and s > 2 * g - 5:
            raise InvalidSpec("family C with i=g needs s <= 2g-5")


def valid_specs(g: int) -> Iterator[TestCurveSpec]:
    """All admissible (family, i, s) at genus g, in deterministic order."""
    for family in FAMILIES:
        for i in range(0, g + 1):
            for s in range(0, 2 * g - 1):
                try:
                    yield TestCurveSpec(family, g, i, s)
                except InvalidSpec:
                    continue


def curve_a(g: int, i: int, s: int) -> CurveFunctional:
    validate_spec("A", g, i, s)
    n = 2 * g - 2
    acc = Accumulator(g, n)
    base = set(range(1, s + 1))
    acc.add_boundary(i, base, -(4 * g - 2 * i - 4 - s))
    for j in range(s + 1, n + 1):
        acc.add_boundary(i, base | {j}, 1)
        acc.add_psi(j, 1)
    return acc.functional()


def curve_b(g: int, i: int, s: int) -> CurveFunctional:
    validate_spec("B", g, i, s)
    n = 2 * g - 2
    acc = Accumulator(g, n)
    base = set(range(1, s + 1))
    acc.add_boundary(i, base, 1)
    acc.add_boundary(i, base | {s + 1}, -1)
    acc.add_psi(s + 1, 2 * i - 1 + s)
    for j in range(1, s + 1):
        acc.add_psi(j, 1)
        acc.add_boundary(0, {j, s + 1}, 1)
    return acc.functional()


def curve_c(g: int, i: int, s: int) -> CurveFunctional:
    validate_spec("C", g, i, s)
    n = 2 * g - 2
    acc = Accumulator(g, n)
    base = set(range(1, s + 1))
    tail = set(range(s + 3, n + 1))
    acc.add_boundary(i, base, -1)
    acc.add_boundary(g - i, tail, -1)
    acc.add_psi(s + 1, 1)
    acc.add_psi(s + 2, 1)
    acc.add_boundary(0, {s + 1, s + 2}, 1)
    acc.add_boundary(i, base | {s + 1}, 1)
    acc.add_boundary(g - i, tail | {s + 1}, 1)
    return acc.functional()


def curve_functional(spec: TestCurveSpec) -> CurveFunctional:
    builder = {"A": curve_a, "B": curve_b, "C": curve_c}[spec.family]
    return builder(spec.g, spec.i, spec.s)


def oracle_a_dot_qg(g: int, i: int, s: int) -> int:
    """Intersection of A_{i:s} with the signature-(1^{2g-2}, 2^{g-1}) class.

    Counted by the degree of the tuple-to-line-bundle map on each side of
    the node, with the s = 2g-2 corner split into a torsion-twisted count
    plus a Weierstrass-point count.
    """
    validate_spec("A", g, i, s)
    if s != 2 * g - 2:
        return 4 ** (g - 1) * (s - 2 * i) ** 2 * (g - i)
    return (4 ** (g - i) - 1) * 4**i * (g - i - 1) ** 2 * (g - i) + 4**i * (
        g - i
    ) * (g - i + 1) * (g - i - 1)


def oracle_b_dot_qg(g: int, i: int, s: int) -> int:
    validate_spec("B", g, i, s)
    if s == 0:
        # the collision of the moving point with the node is excluded
        return 4 ** (g - 1) * i - 4 ** (g - i) * i
    return 4 ** (g - 1) * i


def oracle_c_dot_qg(g: int, i: int, s: int) -> int:
    validate_spec("C", g, i, s)
    if s == 0:
        return 4 ** (g - i) * i
    if s == 2 * g - 4:
        return 4**i * (g - i)
    return 0


def oracle(spec: TestCurveSpec) -> int:
    fn = {"A": oracle_a_dot_qg, "B": oracle_b_dot_qg, "C": oracle_c_dot_qg}[spec.family]
    return fn(spec.g, spec.i, spec.s)
