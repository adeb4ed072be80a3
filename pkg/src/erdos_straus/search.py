"""Staged witness search: which family covers a given q, and how.

The pipeline mirrors the original notebook programs: a small cube probe
over {1..3}^3, then a wide sweep over x up to (1 + sqrt(4q+1))/2 trying the
first three families in order, then the x(x-1) check.  The first hit, in
that fixed order, is the classification that drives all tallies.

`legacy_coverage_scan` additionally reproduces a quirk of the original
coverage program: its cube stage evaluated the family equations with a
leftover numeric x from the previous q's wide sweep (the loop variable was
global), so after the first wide dispatch the "cube" degrades to a probe
over (y, z) at that single stale x.  The published tallies and CSVs include
the handful of small-q classifications that quirk produces, so coverage
scans emulate it; the effect is provably confined to q <= 35*(sqrt(q)+2),
i.e. nothing beyond q ~ 1400 can ever be touched.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator, NamedTuple, Optional

from .families import PolyId, WitnessTriple, eval_poly
from .numutil import divisors_ascending


class Witness(NamedTuple):
    q: int
    poly: PolyId
    triple: WitnessTriple


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the staged search; the defaults reproduce the original runs."""

    cube_bound: int = 3
    record_first_only: bool = True

    def __post_init__(self) -> None:
        if self.cube_bound < 1:
            raise ValueError("cube_bound must be >= 1")


_DEFAULT = SearchConfig()

# Above this q no cube probe (proper or stale-x) can match: a cube value at
# probe x0 is at most 35*x0, and x0 never exceeds sqrt(q) + 2.
LEGACY_PROBE_LIMIT = 2048


def _checked_witness(q: int, poly: PolyId, t: WitnessTriple) -> Witness:
    assert eval_poly(poly, t) == q, (q, poly, t)
    return Witness(q, poly, t)


def small_cube_search(q: int, cfg: SearchConfig = _DEFAULT) -> Optional[Witness]:
    """Family-major probe of P1..P3 over the cube [1, cube_bound]^3."""
    if q < 1:
        raise ValueError("q must be >= 1")
    b = cfg.cube_bound
    for poly in (PolyId.P1, PolyId.P2, PolyId.P3):
        for x in range(1, b + 1):
            for y in range(1, b + 1):
                for z in range(1, b + 1):
                    t = WitnessTriple(x, y, z)
                    if eval_poly(poly, t) == q:
                        return _checked_witness(q, poly, t)
    return None


def solve_p1_given_x(q: int, x: int) -> Optional[tuple[int, int]]:
    """Smallest-y solution of P1(x, y, z) = q for fixed x, if any.

    P1 = q rearranges to (4x-1) * yz = q + x, so a solution exists iff
    4x-1 divides q+x with positive quotient; (1, quotient) is returned.
    """
    if q < 1 or x < 1:
        raise ValueError("q and x must be >= 1")
    m = 4 * x - 1
    n = q + x
    if n % m == 0 and n >= m:
        return 1, n // m
    return None


def solve_p2_given_x(q: int, x: int) -> Optional[tuple[int, int]]:
    """First solution of P2(x, y, z) = q for fixed x, if any.

    P2 = q rearranges to z * M = q + x with M = y(4x-1) - x, so M runs over
    divisors of q+x that are congruent to -x mod 4x-1 and at least 3x-1
    (y >= 1).  The smallest such divisor wins.
    """
    if q < 1 or x < 1:
        raise ValueError("q and x must be >= 1")
    m4 = 4 * x - 1
    n = q + x
    lo = 3 * x - 1
    target = (-x) % m4
    for d in divisors_ascending(n):
        if d >= lo and d % m4 == target:
            return (d + x) // m4, n // d
    return None


def solve_p3_given_x(q: int, x: int) -> Optional[int]:
    """Solution y of P3(x, y) = q for fixed x, if any.

    P3 = q rearranges to y * (8x-6) = q + 3x - 2.
    """
    if q < 1 or x < 1:
        raise ValueError("q and x must be >= 1")
    m = 8 * x - 6
    n = q + 3 * x - 2
    if n % m == 0 and n >= m:
        return n // m
    return None


def check_p4(q: int) -> Optional[int]:
    """x with x(x-1) = q, if q is a product of consecutive integers."""
    if q < 1:
        raise ValueError("q must be >= 1")
    x = (1 + isqrt(4 * q + 1)) // 2
    return x if x * (x - 1) == q else None


def x_sweep_bound(q: int) -> int:
    """Upper end of the wide sweep: floor((1 + sqrt(4q+1)) / 2), exactly."""
    return (1 + isqrt(4 * q + 1)) // 2


def wide_search(q: int) -> Optional[Witness]:
    """Stages B and C only: the wide x sweep, then the x(x-1) check.

    This is the per-q workhorse; for q > LEGACY_PROBE_LIMIT it is the whole
    classification (no cube probe can reach such q).
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    for x in range(1, x_sweep_bound(q) + 1):
        yz = solve_p1_given_x(q, x)
        if yz is not None:
            return _checked_witness(q, PolyId.P1, WitnessTriple(x, *yz))
        yz = solve_p2_given_x(q, x)
        if yz is not None:
            return _checked_witness(q, PolyId.P2, WitnessTriple(x, *yz))
        y = solve_p3_given_x(q, x)
        if y is not None:
            return _checked_witness(q, PolyId.P3, WitnessTriple(x, y, 1))
    x = check_p4(q)
    if x is not None:
        return _checked_witness(q, PolyId.P4, WitnessTriple(x, 1, 1))
    return None


def staged_search(q: int, cfg: SearchConfig = _DEFAULT) -> Optional[Witness]:
    """Full staged pipeline: cube probe, wide sweep, x(x-1) check."""
    hit = small_cube_search(q, cfg)
    if hit is not None:
        return hit
    return wide_search(q)


def _wide_solved_x(q: int) -> tuple[Optional[Witness], int]:
    """wide_search plus the x value the sweep stopped at (for scan state)."""
    w = wide_search(q)
    if w is None:
        return None, x_sweep_bound(q) + 1
    return w, w.triple.x


def _probe_cube(q: int, x0: int, bound: int) -> Optional[Witness]:
    """The degraded cube: families in order at the single stale x0."""
    for poly in (PolyId.P1, PolyId.P2, PolyId.P3):
        for y in range(1, bound + 1):
            for z in range(1, bound + 1):
                t = WitnessTriple(x0, y, z)
                if eval_poly(poly, t) == q:
                    return _checked_witness(q, poly, t)
    return None


def legacy_coverage_scan(
    qs: Iterable[int], cfg: SearchConfig = _DEFAULT
) -> Iterator[tuple[int, Optional[Witness]]]:
    """Classify a q sequence with the original program's scan semantics.

    The proper cube runs until the first wide dispatch; from then on the
    cube stage probes (y, z) at the stale x left by the last wide sweep.
    Deterministic for a fixed sequence, independent of how callers batch
    the results afterwards.
    """
    stale: Optional[int] = None
    for q in qs:
        if q > LEGACY_PROBE_LIMIT:
            # No probe can reach here; state no longer matters.
            yield q, wide_search(q)
            continue
        if stale is None:
            hit = small_cube_search(q, cfg)
        else:
            hit = _probe_cube(q, stale, cfg.cube_bound)
        if hit is not None:
            yield q, hit
        else:
            w, stale = _wide_solved_x(q)
            yield q, w


def _validate_p2_prime(q: int, x: int, y: int, z: int) -> bool:
    return (4 * x - 1) * (4 * y * z - 1) - 4 * x * z == 4 * q + 1


def _p2_divisor_instance(a: int, x: int) -> Optional[tuple[int, int]]:
    """(y, z) with (4x-1)(4yz-1) - 4xz = a for fixed x, via divisors.

    The identity rearranges to z * E = a + 4x - 1 with
    E = (4x-1)(4y-1) - 1, so E runs over divisors whose successor is a
    multiple of 4x-1 with quotient congruent to 3 mod 4.
    """
    n = a + 4 * x - 1
    m = 4 * x - 1
    for e in divisors_ascending(n):
        if (e + 1) % m == 0:
            t = (e + 1) // m
            if t >= 3 and t % 4 == 3:
                return (t + 1) // 4, n // e
    return None


def prime_witness_search(q: int) -> Optional[tuple[int, int, int]]:
    """Witness (x, y, z) with (4x-1)(4yz-1) - 4xz = 4q+1, staged.

    Callers gate on 4q+1 being prime; the search itself only needs q >= 1.
    Stage order matches the original prime program: x in {1,2,3} by divisor
    enumeration, then y in {1,2,3} and z in {1,2,3} by x sweeps, then
    x in [4, xmax] by divisor enumeration.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    a = 4 * q + 1
    xmax = (1 + isqrt(a)) // 2

    for x in (1, 2, 3):
        yz = _p2_divisor_instance(a, x)
        if yz is not None and _validate_p2_prime(q, x, *yz):
            return (x, *yz)
    for y in (1, 2, 3):
        for x in range(1, xmax + 1):
            e = (4 * x - 1) * (4 * y - 1) - 1
            n = a + 4 * x - 1
            if n % e == 0 and _validate_p2_prime(q, x, y, n // e):
                return (x, y, n // e)
    for z in (1, 2, 3):
        for x in range(1, xmax + 1):
            den = 4 * z * (4 * x - 1)
            num = a - 1 + 4 * x + 4 * x * z
            if num % den == 0:
                y = num // den
                if y >= 1 and _validate_p2_prime(q, x, y, z):
                    return (x, y, z)
    for x in range(4, xmax + 1):
        yz = _p2_divisor_instance(a, x)
        if yz is not None and _validate_p2_prime(q, x, *yz):
            return (x, *yz)
    return None
