"""Sparse rulers: mark sets whose pairwise differences cover 0..D.

A ruler needs far fewer than D+1 marks; the square-root construction below
gets by with at most 2*ceil(sqrt(D)) of them.  Distance classes of marks are
what the covariance estimator reads, and the coverage deficiency Delta
measures how thinly each distance is represented.
"""

import math
from dataclasses import dataclass, field

from spcov.errors import NotRulerError, SpcovError


def is_ruler(marks, D: int) -> bool:
    """True if every distance 0..D is an absolute difference of two marks.

    Marks outside {0..D} make the set invalid.
    """
    if D < 0:
        raise SpcovError("is_ruler requires D >= 0")
    mark_set = set(int(m) for m in marks)
    if not mark_set:
        return False
    if min(mark_set) < 0 or max(mark_set) > D:
        return False
    diffs = {abs(a - b) for a in mark_set for b in mark_set}
    return diffs >= set(range(D + 1))


@dataclass(frozen=True)
class Ruler:
    """Verified mark set covering all distances 0..D.

    Construction re-checks coverage, so holding a Ruler means holding a
    proof of coverage.  Marks are stored sorted ascending.
    """

    D: int
    marks: tuple = field(default=())

    def __post_init__(self) -> None:
        if self.D < 0:
            raise SpcovError("Ruler requires D >= 0")
        marks = tuple(sorted(int(m) for m in self.marks))
        if len(set(marks)) != len(marks):
            raise SpcovError("Ruler marks must be distinct")
        object.__setattr__(self, "marks", marks)
        if not is_ruler(marks, self.D):
            raise NotRulerError(
                f"marks {list(marks)} do not cover all distances 0..{self.D}"
            )

    @property
    def size(self) -> int:
        return len(self.marks)


def sqrt_ruler(D: int) -> Ruler:
    """Ruler of size O(sqrt(D)): a dense run 0..q plus a coarse tail.

    q = ceil(sqrt(D)); marks are {0, 1, ..., q} united with
    {D - k*q : k = 0..q-2}.  Any s <= D splits as s = (D - k*q) - r with
    r in 0..q, so the two blocks cover everything.  Coverage is re-verified
    on every call; the size never exceeds 2q (plus the D=0 singleton).
    """
    if D < 0:
        raise SpcovError("sqrt_ruler requires D >= 0")
    q = math.isqrt(D)
    if q * q < D:
        q += 1
    marks = set(range(q + 1))
    marks.update(D - k * q for k in range(q - 1))
    return Ruler(D=D, marks=tuple(marks))


def pair_classes(r: Ruler) -> tuple:
    """Unordered mark pairs grouped by their absolute difference.

    Element s holds the pairs at distance s, sorted lexicographically.
    Distance 0 is represented by the diagonal singletons (m, m), one per
    mark, so every class is nonempty for a valid ruler.
    """
    classes = [[] for _ in range(r.D + 1)]
    for m in r.marks:
        classes[0].append((m, m))
    n = len(r.marks)
    for idx_a in range(n):
        for idx_b in range(idx_a + 1, n):
            a, b = r.marks[idx_a], r.marks[idx_b]
            classes[b - a].append((a, b))
    for s, cls in enumerate(classes):
        if not cls:
            raise NotRulerError(f"not a ruler: no mark pair at distance {s}")
        cls.sort()
    return tuple(tuple(cls) for cls in classes)


def coverage_deficiency(pc) -> float:
    """Delta = sum over distances s of 1/|class s|.

    Smaller is better: a complete ruler spreads each distance over many
    pairs, while a minimal ruler leaves most distances with one pair and
    Delta close to D.
    """
    if not pc:
        raise SpcovError("coverage_deficiency requires at least one class")
    for s, cls in enumerate(pc):
        if not cls:
            raise NotRulerError(f"not a ruler: no mark pair at distance {s}")
    return float(sum(1.0 / len(cls) for cls in pc))
