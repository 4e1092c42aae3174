"""Permutation value type and constructions.

Permutations are finite sequences in one-line notation: position i (1-based)
holds value ``values[i-1]``, and the values form a bijection onto {1..n}.
The empty permutation (n = 0) is written ``EMPTY`` and acts as the neutral
element of the direct sum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    EmptyOperand,
    IndexOutOfRange,
    InvalidShape,
    NotAPermutation,
    OperandTooShort,
    TooLarge,
)

__all__ = [
    "Permutation",
    "EMPTY",
    "from_one_line",
    "parse_permutation",
    "standardize",
    "contains",
    "delete_point",
    "direct_sum",
    "skew_sum",
    "interleave",
    "skew_interleave",
    "iterated_sum",
    "iterated_interleave_21",
    "Shape",
    "SINGLE21",
    "PLAIN",
    "LEFT_CAPPED",
    "RIGHT_CAPPED",
    "BOTH_CAPPED",
    "SHAPE_KINDS",
    "realize_shape",
    "OscillationId",
    "oscillation",
    "oscillating_sequence_prefix",
    "classify_oscillation",
    "is_increasing_oscillation",
    "SumDecomposition",
    "sum_decompose",
    "is_sum_indecomposable",
    "family_sum",
    "family_interleave",
    "inverse",
    "reverse",
    "complement",
    "is_simple",
    "is_identity",
    "is_reverse_identity",
]

_MAX_KEY_LENGTH = 255


class Permutation:
    """An immutable permutation in one-line notation."""

    __slots__ = ("values", "_hash")

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if n and (min(vals) < 1 or max(vals) > n or len(set(vals)) != n):
            raise NotAPermutation(
                f"values {vals!r} are not a bijection onto 1..{n}"
            )
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_hash", hash(vals))

    @classmethod
    def _wrap(cls, vals: tuple[int, ...]) -> "Permutation":
        """Wrap an already-validated value tuple without re-checking."""
        self = object.__new__(cls)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_hash", hash(vals))
        return self

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Permutation is immutable")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, position: int) -> int:
        """Value at 1-based position."""
        if not 1 <= position <= len(self.values):
            raise IndexOutOfRange(
                f"position {position} outside 1..{len(self.values)}"
            )
        return self.values[position - 1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Permutation):
            return self.values == other.values
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"Permutation({list(self.values)!r})"

    @property
    def key(self) -> bytes:
        """Canonical byte key; usable as a compact map key."""
        if len(self.values) > _MAX_KEY_LENGTH:
            raise TooLarge(
                f"no byte key for length {len(self.values)} > {_MAX_KEY_LENGTH}"
            )
        return bytes(self.values)


EMPTY = Permutation(())


def from_one_line(seq: Iterable[int]) -> Permutation:
    """Build a validated permutation from a one-line value sequence."""
    return Permutation(seq)


_BARE_DIGITS = re.compile(r"^\d+$")


def parse_permutation(text: str) -> Permutation:
    """Parse comma- or space-separated values; bare digits allowed for n <= 9."""
    stripped = text.strip()
    if stripped == "":
        return EMPTY
    if _BARE_DIGITS.match(stripped):
        if len(stripped) <= 9 and "0" not in stripped:
            return Permutation(int(ch) for ch in stripped)
        if len(stripped) <= 9:
            raise NotAPermutation(f"bare digit string {text!r} contains 0")
        raise NotAPermutation(
            f"bare digit form only allowed for length <= 9: {text!r}"
        )
    parts = [p for p in re.split(r"[,\s]+", stripped) if p]
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise NotAPermutation(f"cannot parse {text!r} as a permutation") from exc
    return Permutation(vals)


def standardize(values: Sequence[int]) -> Permutation:
    """Pattern of an arbitrary sequence of distinct numbers."""
    order = sorted(values)
    rank = {v: i + 1 for i, v in enumerate(order)}
    if len(rank) != len(values):
        raise NotAPermutation(f"values {values!r} are not distinct")
    return Permutation._wrap(tuple(rank[v] for v in values))


# ---------------------------------------------------------------------------
# Containment
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _neighbor_bounds(s: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """For each index i of the pattern: the earlier index with the tightest
    smaller value, and the earlier index with the tightest larger value
    (-1 when absent)."""
    k = len(s)
    lo_idx = [-1] * k
    hi_idx = [-1] * k
    for i in range(k):
        lo = hi = -1
        si = s[i]
        for j in range(i):
            sj = s[j]
            if sj < si and (lo < 0 or sj > s[lo]):
                lo = j
            elif sj > si and (hi < 0 or sj < s[hi]):
                hi = j
        lo_idx[i] = lo
        hi_idx[i] = hi
    return tuple(lo_idx), tuple(hi_idx)


def contains(sigma: Permutation, pi: Permutation) -> bool:
    """True iff some subsequence of pi is order-isomorphic to sigma."""
    s = sigma.values
    p = pi.values
    k = len(s)
    n = len(p)
    if k > n:
        return False
    if k == n:
        return s == p
    if k <= 1:
        return True
    lo_idx, hi_idx = _neighbor_bounds(s)
    placed = [0] * k

    def place(i: int, start: int) -> bool:
        if i == k:
            return True
        li = lo_idx[i]
        hi = hi_idx[i]
        lo_val = placed[li] if li >= 0 else 0
        hi_val = placed[hi] if hi >= 0 else n + 1
        for pos in range(start, n - (k - i) + 1):
            v = p[pos]
            if lo_val < v < hi_val:
                placed[i] = v
                if place(i + 1, pos + 1):
                    return True
        return False

    return place(0, 0)


def strictly_contains(sigma: Permutation, pi: Permutation) -> bool:
    """True iff sigma < pi in the containment order (contained and distinct)."""
    return sigma.values != pi.values and contains(sigma, pi)


# ---------------------------------------------------------------------------
# Point deletion
# ---------------------------------------------------------------------------


def _delete_value_at(vals: tuple[int, ...], index0: int) -> tuple[int, ...]:
    """Remove the point at 0-based index and renormalize values."""
    v = vals[index0]
    return tuple(
        (x - 1 if x > v else x)
        for i, x in enumerate(vals)
        if i != index0
    )


def delete_point(pi: Permutation, position: int) -> Permutation:
    """Remove the point at the 1-based position and renormalize."""
    n = len(pi.values)
    if not 1 <= position <= n:
        raise IndexOutOfRange(f"position {position} outside 1..{n}")
    return Permutation._wrap(_delete_value_at(pi.values, position - 1))


# ---------------------------------------------------------------------------
# Sums and interleaves
# ---------------------------------------------------------------------------


def direct_sum(a: Permutation, b: Permutation) -> Permutation:
    """a with b appended above and to the right of it."""
    m = len(a.values)
    return Permutation._wrap(a.values + tuple(v + m for v in b.values))


def skew_sum(a: Permutation, b: Permutation) -> Permutation:
    """a lifted above b, followed by b."""
    m = len(b.values)
    return Permutation._wrap(tuple(v + m for v in a.values) + b.values)


def _swap_values(vals: tuple[int, ...], x: int, y: int) -> tuple[int, ...]:
    return tuple(y if v == x else x if v == y else v for v in vals)


def interleave(a: Permutation, b: Permutation) -> Permutation:
    """Direct sum with the largest point of a and smallest point of b exchanged."""
    if not a.values or not b.values:
        raise EmptyOperand("interleave requires nonempty operands")
    m = len(a.values)
    return Permutation._wrap(_swap_values(direct_sum(a, b).values, m, m + 1))


def skew_interleave(a: Permutation, b: Permutation) -> Permutation:
    """Skew sum with the smallest point of a and largest point of b exchanged."""
    if not a.values or not b.values:
        raise EmptyOperand("skew_interleave requires nonempty operands")
    m = len(b.values)
    return Permutation._wrap(_swap_values(skew_sum(a, b).values, m, m + 1))


def iterated_sum(alpha: Permutation, r: int) -> Permutation:
    """Direct sum of r copies of alpha."""
    if r < 1:
        raise OperandTooShort(f"iterated_sum needs r >= 1, got {r}")
    m = len(alpha.values)
    out: list[int] = []
    for i in range(r):
        shift = i * m
        out.extend(v + shift for v in alpha.values)
    return Permutation._wrap(tuple(out))


def iterated_interleave_21(k: int) -> Permutation:
    """Left-to-right interleave of k copies of 21 (length 2k)."""
    if k < 1:
        raise OperandTooShort(f"iterated_interleave_21 needs k >= 1, got {k}")
    vals: list[int] = []
    for i in range(1, k + 1):
        vals.append(2 * i + 1 if i < k else 2 * k)
        vals.append(2 * i - 2 if i > 1 else 1)
    return Permutation._wrap(tuple(vals))


# ---------------------------------------------------------------------------
# Shapes of indecomposable permutations inside increasing oscillations
# ---------------------------------------------------------------------------

SINGLE21 = "Single21"
PLAIN = "Plain"
LEFT_CAPPED = "LeftCapped"
RIGHT_CAPPED = "RightCapped"
BOTH_CAPPED = "BothCapped"

SHAPE_KINDS = (SINGLE21, PLAIN, LEFT_CAPPED, RIGHT_CAPPED, BOTH_CAPPED)


@dataclass(frozen=True)
class Shape:
    """A shape kind together with its 21-block count k.

    k always counts 21-blocks.  Plain shapes need k >= 2 (a single block is
    the Single21 shape); capped shapes need k >= 1; Single21 has k = 1.
    """

    kind: str
    k: int = 1

    def __post_init__(self) -> None:
        if self.kind not in SHAPE_KINDS:
            raise InvalidShape(f"unknown shape kind {self.kind!r}")
        if self.kind == SINGLE21:
            if self.k != 1:
                raise InvalidShape("Single21 has fixed k = 1")
        elif self.kind == PLAIN:
            if self.k < 2:
                raise InvalidShape("Plain requires k >= 2")
        elif self.k < 1:
            raise InvalidShape(f"{self.kind} requires k >= 1")

    @property
    def length(self) -> int:
        """Length of the realized permutation."""
        if self.kind == SINGLE21:
            return 2
        base = 2 * self.k
        if self.kind == PLAIN:
            return base
        if self.kind == BOTH_CAPPED:
            return base + 2
        return base + 1


_ONE = Permutation._wrap((1,))


def realize_shape(s: Shape) -> Permutation:
    """The permutation of the given shape (caps attached here only)."""
    if s.kind == SINGLE21:
        return Permutation._wrap((2, 1))
    chain = iterated_interleave_21(s.k)
    if s.kind == PLAIN:
        return chain
    if s.kind == LEFT_CAPPED:
        return interleave(_ONE, chain)
    if s.kind == RIGHT_CAPPED:
        return interleave(chain, _ONE)
    return interleave(interleave(_ONE, chain), _ONE)


# ---------------------------------------------------------------------------
# Increasing oscillations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OscillationId:
    """Identifies the oscillation W_n (leading descent) or M_n (leading ascent)."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("W", "M"):
            raise InvalidShape(f"oscillation kind must be W or M, got {self.kind!r}")
        if self.n < 1:
            raise InvalidShape(f"oscillation length must be >= 1, got {self.n}")


def oscillation(id: OscillationId) -> Permutation:
    """Realize W_n / M_n (W_1 = M_1 = 1; W_2 = M_2 = 21)."""
    n = id.n
    if n == 1:
        return _ONE
    if n == 2:
        return Permutation._wrap((2, 1))
    half = n // 2
    if id.kind == "W":
        if n % 2 == 0:
            return iterated_interleave_21(half)
        return realize_shape(Shape(RIGHT_CAPPED, half))
    if n % 2 == 0:
        return realize_shape(Shape(BOTH_CAPPED, half - 1))
    return realize_shape(Shape(LEFT_CAPPED, half))


def oscillating_sequence_prefix(m: int) -> Permutation:
    """Pattern of the first m terms of the sequence 4, 1, 6, 3, 8, 5, ..."""
    if m < 1:
        raise OperandTooShort(f"prefix length must be >= 1, got {m}")
    seq = []
    for pos in range(1, m + 1):
        i = (pos + 1) // 2
        seq.append(2 * i + 2 if pos % 2 == 1 else 2 * i - 1)
    return standardize(seq)


def classify_oscillation(pi: Permutation) -> Optional[Shape]:
    """The unique Shape realizing pi, or None."""
    n = len(pi.values)
    candidates: list[Shape] = []
    if n == 2:
        candidates.append(Shape(SINGLE21))
    elif n >= 4 and n % 2 == 0:
        candidates.append(Shape(PLAIN, n // 2))
        candidates.append(Shape(BOTH_CAPPED, (n - 2) // 2))
    elif n >= 3:
        candidates.append(Shape(LEFT_CAPPED, (n - 1) // 2))
        candidates.append(Shape(RIGHT_CAPPED, (n - 1) // 2))
    for shape in candidates:
        if realize_shape(shape).values == pi.values:
            return shape
    return None


def is_increasing_oscillation(pi: Permutation) -> bool:
    """True iff pi is 1 or realizes one of the five shapes."""
    return len(pi.values) == 1 or classify_oscillation(pi) is not None


# ---------------------------------------------------------------------------
# Sum decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SumDecomposition:
    """Maximal decomposition into sum-indecomposable components."""

    source: Permutation
    components: tuple[Permutation, ...]

    def prefix(self, i: int) -> Permutation:
        """Direct sum of the first i components (i = 0 gives the empty one)."""
        if not 0 <= i <= len(self.components):
            raise IndexOutOfRange(f"prefix index {i} outside 0..{len(self.components)}")
        cut = sum(len(c.values) for c in self.components[:i])
        return Permutation._wrap(self.source.values[:cut])

    def suffix(self, i: int) -> Permutation:
        """Direct sum of the components after the first i."""
        if not 0 <= i <= len(self.components):
            raise IndexOutOfRange(f"suffix index {i} outside 0..{len(self.components)}")
        cut = sum(len(c.values) for c in self.components[:i])
        return Permutation._wrap(tuple(v - cut for v in self.source.values[cut:]))


def _component_cuts(vals: tuple[int, ...]) -> list[int]:
    """End positions (1-based) of sum components."""
    cuts = []
    running_max = 0
    for i, v in enumerate(vals, start=1):
        if v > running_max:
            running_max = v
        if running_max == i:
            cuts.append(i)
    return cuts


def sum_decompose(pi: Permutation) -> SumDecomposition:
    vals = pi.values
    comps: list[Permutation] = []
    start = 0
    for cut in _component_cuts(vals):
        comps.append(Permutation._wrap(tuple(v - start for v in vals[start:cut])))
        start = cut
    return SumDecomposition(pi, tuple(comps))


def is_sum_indecomposable(pi: Permutation) -> bool:
    """True iff pi is nonempty and has exactly one sum component."""
    return len(pi.values) > 0 and len(_component_cuts(pi.values)) == 1


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def family_sum(alpha: Permutation) -> set[Permutation]:
    """{alpha, 1+alpha, alpha+1, 1+alpha+1} under direct sum."""
    if not alpha.values:
        raise EmptyOperand("family_sum requires a nonempty permutation")
    lifted = direct_sum(_ONE, alpha)
    return {alpha, lifted, direct_sum(alpha, _ONE), direct_sum(lifted, _ONE)}


def family_interleave(alpha: Permutation) -> set[Permutation]:
    """{alpha, 1(.)alpha, alpha(.)1, 1(.)alpha(.)1} under interleave."""
    if not alpha.values:
        raise EmptyOperand("family_interleave requires a nonempty permutation")
    if len(alpha.values) < 2:
        raise OperandTooShort("family_interleave requires length > 1")
    lifted = interleave(_ONE, alpha)
    return {alpha, lifted, interleave(alpha, _ONE), interleave(lifted, _ONE)}


# ---------------------------------------------------------------------------
# Symmetries and structural predicates
# ---------------------------------------------------------------------------


def inverse(pi: Permutation) -> Permutation:
    vals = pi.values
    out = [0] * len(vals)
    for pos, v in enumerate(vals, start=1):
        out[v - 1] = pos
    return Permutation._wrap(tuple(out))


def reverse(pi: Permutation) -> Permutation:
    return Permutation._wrap(pi.values[::-1])


def complement(pi: Permutation) -> Permutation:
    n = len(pi.values)
    return Permutation._wrap(tuple(n + 1 - v for v in pi.values))


def is_identity(pi: Permutation) -> bool:
    return all(v == i for i, v in enumerate(pi.values, start=1))


def is_reverse_identity(pi: Permutation) -> bool:
    n = len(pi.values)
    return all(v == n + 1 - i for i, v in enumerate(pi.values, start=1))


def is_simple(pi: Permutation) -> bool:
    """True iff pi maps no nontrivial contiguous index interval onto a
    contiguous value interval."""
    vals = pi.values
    n = len(vals)
    if n <= 2:
        return True
    for start in range(n):
        lo = hi = vals[start]
        for end in range(start + 1, n):
            v = vals[end]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            width = end - start + 1
            if width == n:
                break
            if hi - lo + 1 == width:
                return False
    return True
