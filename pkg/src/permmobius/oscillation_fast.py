"""Inequality-only Möbius evaluation for increasing-oscillation upper bounds.

Containment of shaped permutations inside an increasing oscillation is
governed by point-count inequalities alone.  Every shape with k 21-blocks
consumes q points per direct-sum copy (q = 3 for a bare 21 taken as a
direct-sum block, 2k+2 for uncapped/singly-capped chains, 2k+4 for a
doubly-capped chain), adjusted by a small per-(shape, upper-bound-class)
offset b, and each attached cap costs 2 more.  A copy budget of 2n points
is available, where n is the class parameter of the upper bound.

All minimum/maximum block counts, minimal copy counts and weights below are
closed-form consequences of those inequalities; no pattern matching is
performed on this path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    InvalidShape,
    NotAnOscillation,
    NotContained,
    Overflow,
    PreconditionViolation,
    RangeError,
)
from .perms import (
    BOTH_CAPPED,
    LEFT_CAPPED,
    PLAIN,
    RIGHT_CAPPED,
    SHAPE_KINDS,
    SINGLE21,
    OscillationId,
    Permutation,
    Shape,
    classify_oscillation,
    is_sum_indecomposable,
    oscillation,
    realize_shape,
)

__all__ = [
    "PiClass",
    "EmbeddingBudget",
    "pi_class_of",
    "shape_of_pi",
    "min_points",
    "fits_in_pi",
    "raw_min_k",
    "min_k",
    "max_k",
    "min_r_osc",
    "weight_osc",
    "mobius_oscillation",
    "trace_oscillation",
    "principal_mu_series",
    "clear_oscillation_memo",
]

W_EVEN = "W_even"
W_ODD = "W_odd"
M_EVEN = "M_even"
M_ODD = "M_odd"

_PI_KINDS = (W_EVEN, W_ODD, M_EVEN, M_ODD)

_SENTINEL_K = 1 << 30

_INT64_GUARD = 1 << 62


@dataclass(frozen=True)
class PiClass:
    """Parity class of an oscillation upper bound with its table parameter n
    (length 2n for the even kinds, 2n-1 for the odd kinds)."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in _PI_KINDS:
            raise InvalidShape(f"unknown upper-bound class {self.kind!r}")
        if self.n < 1:
            raise InvalidShape(f"class parameter must be >= 1, got {self.n}")

    @property
    def length(self) -> int:
        return 2 * self.n if self.kind.endswith("even") else 2 * self.n - 1

    @property
    def budget(self) -> int:
        """Total points available for embeddings: always 2n."""
        return 2 * self.n

    @property
    def oscillation_id(self) -> OscillationId:
        return OscillationId(self.kind[0], self.length)


def pi_class_of(id: OscillationId) -> PiClass:
    """The parity class of W_n / M_n."""
    if id.n % 2 == 0:
        kind = W_EVEN if id.kind == "W" else M_EVEN
        return PiClass(kind, id.n // 2)
    kind = W_ODD if id.kind == "W" else M_ODD
    return PiClass(kind, (id.n + 1) // 2)


def shape_of_pi(pi: PiClass) -> Optional[Shape]:
    """The Shape realizing the upper bound (None for length 1)."""
    if pi.length == 1:
        return None
    if pi.length == 2:
        return Shape(SINGLE21)
    if pi.kind == W_EVEN:
        return Shape(PLAIN, pi.n)
    if pi.kind == W_ODD:
        return Shape(RIGHT_CAPPED, pi.n - 1)
    if pi.kind == M_EVEN:
        return Shape(BOTH_CAPPED, pi.n - 1)
    return Shape(LEFT_CAPPED, pi.n - 1)


# Per-copy point cost of a shape as a direct-sum block.
def _copy_cost(kind: str, k: int) -> int:
    if kind == SINGLE21:
        return 3
    if kind == BOTH_CAPPED:
        return 2 * k + 4
    return 2 * k + 2


# Offset b of the containment inequality  q*r + b + 2*caps <= 2n,
# indexed by (shape kind, upper-bound class).  Omitted pairs have b = 0.
_B_OFFSET = {
    (SINGLE21, W_EVEN): -1,
    (SINGLE21, M_EVEN): -1,
    (PLAIN, W_EVEN): -2,
    (LEFT_CAPPED, W_ODD): 2,
    (RIGHT_CAPPED, M_ODD): 2,
    (BOTH_CAPPED, M_EVEN): -2,
}


def _offset(shape_kind: str, pi: PiClass) -> int:
    return _B_OFFSET.get((shape_kind, pi.kind), 0)


@dataclass(frozen=True)
class EmbeddingBudget:
    """Point accounting for embedding r copies of a shape into an upper bound."""

    shape: Shape
    k: int
    r: int
    pi: PiClass
    min_points: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise PreconditionViolation(f"copy count must be >= 1, got {self.r}")


def min_points(shape: Shape, r: int, pi: PiClass) -> int:
    """Minimum number of points of the upper bound consumed by r uncapped
    direct-sum copies of the shape."""
    if r < 1:
        raise PreconditionViolation(f"copy count must be >= 1, got {r}")
    return _copy_cost(shape.kind, shape.k) * r + _offset(shape.kind, pi)


def embedding_budget(shape: Shape, r: int, pi: PiClass) -> EmbeddingBudget:
    return EmbeddingBudget(shape, shape.k, r, pi, min_points(shape, r, pi))


def fits_in_pi(
    shape: Shape,
    r: int,
    pi: PiClass,
    caps: tuple[bool, bool] = (False, False),
) -> bool:
    """Whether r copies of the shape, with the given leading/trailing caps
    attached, embed in the upper bound: min_points + 2*caps <= 2n."""
    return min_points(shape, r, pi) + 2 * sum(caps) <= pi.budget


def sigma_class(sigma: Permutation) -> PiClass:
    """Parity class of an oscillation lower bound (length-2 resolves to W)."""
    n = len(sigma.values)
    if n == 2 and sigma.values == (2, 1):
        return PiClass(W_EVEN, 1)
    shape = classify_oscillation(sigma)
    if shape is None:
        raise NotAnOscillation(f"{sigma} is not an increasing oscillation")
    if shape.kind == PLAIN:
        return PiClass(W_EVEN, shape.k)
    if shape.kind == RIGHT_CAPPED:
        return PiClass(W_ODD, shape.k + 1)
    if shape.kind == BOTH_CAPPED:
        return PiClass(M_EVEN, shape.k + 1)
    return PiClass(M_ODD, shape.k + 1)


# Smallest block count k for which a lower bound of the given parity class
# (parameter n) is contained in the shape's realization, per shape kind.
# _SENTINEL_K marks the always-false row (no k works).
def _raw_min_k_table(shape_kind: str, cls: str, n: int) -> int:
    if shape_kind == SINGLE21:
        return n if cls == W_EVEN else _SENTINEL_K
    if shape_kind == PLAIN:
        return n + 1 if cls == M_EVEN else n
    if shape_kind == LEFT_CAPPED:
        return n - 1 if cls == M_ODD else n
    if shape_kind == RIGHT_CAPPED:
        return n - 1 if cls == W_ODD else n
    if shape_kind == BOTH_CAPPED:
        return n if cls == W_EVEN else n - 1
    raise InvalidShape(f"unknown shape kind {shape_kind!r}")


def raw_min_k(
    sigma: Permutation, shape_kind: str, pi_length: Optional[int] = None
) -> int:
    """Table minimum of the block count k for sigma to embed in the shape;
    the always-false row returns a sentinel (pi_length when supplied) that
    empties any k-range it bounds."""
    if len(sigma.values) <= 1:
        raise PreconditionViolation("raw_min_k requires |sigma| > 1")
    cls = sigma_class(sigma)
    k = _raw_min_k_table(shape_kind, cls.kind, cls.n)
    if k >= _SENTINEL_K and pi_length is not None:
        return pi_length
    return k


def _structural_min_k(shape_kind: str) -> int:
    return 2 if shape_kind == PLAIN else 1


def min_k(sigma: Permutation, shape_kind: str) -> int:
    """Lower end of the block-count range for the shape.

    For sigma = 1 every shape embeds it from the smallest realizable block
    count.  For the bare-21 shape the range is reported from 1: when sigma
    is neither 1 nor 21 the lone term is annihilated by mu(sigma, 21) = 0,
    so the printed range is harmless.
    """
    if shape_kind not in SHAPE_KINDS:
        raise InvalidShape(f"unknown shape kind {shape_kind!r}")
    structural = _structural_min_k(shape_kind)
    if len(sigma.values) == 1:
        return structural
    if shape_kind == SINGLE21:
        return 1
    return max(raw_min_k(sigma, shape_kind), structural)


def _engine_min_k(sigma: Permutation, shape_kind: str) -> int:
    """Smallest block count whose term can be nonzero in the shape sum."""
    structural = _structural_min_k(shape_kind)
    if len(sigma.values) == 1:
        return structural
    return max(raw_min_k(sigma, shape_kind), structural)


def max_k(shape_kind: str, pi: PiClass) -> int:
    """Largest block count embeddable at r = 1, reduced by one when the
    shape coincides with the upper bound's own shape (excluding the upper
    bound itself from the candidate list); never negative."""
    b = _offset(shape_kind, pi)
    budget = pi.budget
    if shape_kind == SINGLE21:
        k = 1 if 3 + b <= budget else 0
    elif shape_kind == BOTH_CAPPED:
        k = (budget - b - 4) // 2
    else:
        k = (budget - b - 2) // 2
    pi_shape = shape_of_pi(pi)
    if pi_shape is not None and pi_shape.kind == shape_kind:
        k -= 1
    return max(k, 0)


def min_r_osc(shape_kind: str, k: int, pi: PiClass) -> int:
    """Smallest copy count r whose doubly-capped family member no longer
    fits: the least r with q*r > 2n - b - 4, solved in closed form."""
    q = _copy_cost(shape_kind, k)
    t = pi.budget - _offset(shape_kind, pi)
    return max(1, (t - 4) // q + 1)


def weight_osc(sigma: Permutation, shape_kind: str, k: int, pi: PiClass) -> int:
    """Reported weight of the shape's k-block member, at r = min_r_osc:
    +1 when even the uncapped r copies no longer fit, -1 when r copies fit
    but r+1 do not, 0 otherwise."""
    if not (min_k(sigma, shape_kind) <= k <= max_k(shape_kind, pi)):
        raise PreconditionViolation(
            f"block count {k} outside [{min_k(sigma, shape_kind)}, "
            f"{max_k(shape_kind, pi)}] for {shape_kind}"
        )
    q = _copy_cost(shape_kind, k)
    t = pi.budget - _offset(shape_kind, pi)
    r = max(1, (t - 4) // q + 1)
    if q * r > t:
        return 1
    if q * (r + 1) > t:
        return -1
    return 0


def _weight_signed(shape_kind: str, k: int, pi: PiClass) -> int:
    """Signed summation weight of the shape's k-block member.

    Together with the leading minus of the recursion this reproduces the
    reported weights: a member whose singly-capped extension already fails
    to fit contributes with opposite sign to one that only fails at r+1.
    """
    q = _copy_cost(shape_kind, k)
    t = pi.budget - _offset(shape_kind, pi)
    r = max(1, (t - 4) // q + 1)
    if q * r > t:
        return 0
    if q * r > t - 2:
        return 1
    if q * (r + 1) > t:
        return -1
    return 0


# Oscillation realized by a shape's k-block member.
def _shape_member_id(shape_kind: str, k: int) -> OscillationId:
    if shape_kind == SINGLE21:
        return OscillationId("W", 2)
    if shape_kind == PLAIN:
        return OscillationId("W", 2 * k)
    if shape_kind == LEFT_CAPPED:
        return OscillationId("M", 2 * k + 1)
    if shape_kind == RIGHT_CAPPED:
        return OscillationId("W", 2 * k + 1)
    return OscillationId("M", 2 * k + 2)


_memo: dict[tuple[bytes, str, int], int] = {}


def clear_oscillation_memo() -> None:
    _memo.clear()


def _sigma_leq_osc(sigma: Permutation, id: OscillationId) -> bool:
    """Containment of an oscillation lower bound in an oscillation: every
    strictly shorter oscillation embeds; equal length requires equality."""
    n = len(sigma.values)
    if n > id.n:
        return False
    if n == id.n:
        return sigma == oscillation(id)
    return True


def _mu_osc_filled(sigma: Permutation, id: OscillationId) -> int:
    """Memoized mu(sigma, oscillation); all shorter entries must be present."""
    length = id.n
    slen = len(sigma.values)
    if length < slen:
        return 0
    if length == slen:
        return 1 if sigma == oscillation(id) else 0
    if length == slen + 1:
        return -1
    key = (sigma.key, id.kind, id.n)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    pi = pi_class_of(id)
    total = 0
    for shape_kind in SHAPE_KINDS:
        lo = _engine_min_k(sigma, shape_kind)
        hi = max_k(shape_kind, pi)
        for k in range(lo, hi + 1):
            w = _weight_signed(shape_kind, k, pi)
            if w:
                member = _shape_member_id(shape_kind, k)
                total += w * _mu_osc_filled(sigma, member)
    if abs(total) >= _INT64_GUARD:
        raise Overflow("oscillation Möbius value exceeds the 64-bit guard")
    value = -total
    _memo[key] = value
    return value


def _fill_memo(sigma: Permutation, up_to: int) -> None:
    """Populate the memo for both classes at every length, shortest first,
    so evaluation never recurses deeply."""
    start = len(sigma.values) + 2
    for length in range(start, up_to + 1):
        for kind in ("W", "M"):
            _mu_osc_filled(sigma, OscillationId(kind, length))


def _resolve_upper(pi: Union[OscillationId, Permutation]) -> OscillationId:
    if isinstance(pi, OscillationId):
        return pi
    if isinstance(pi, Permutation):
        n = len(pi.values)
        if n == 1:
            return OscillationId("W", 1)
        shape = classify_oscillation(pi)
        if shape is None:
            raise NotAnOscillation(f"{pi} is not an increasing oscillation")
        id = _shape_member_id(shape.kind, shape.k)
        if shape.kind == SINGLE21:
            id = OscillationId("W", 2)
        return id
    raise NotAnOscillation(f"cannot interpret {pi!r} as an oscillation")


def mobius_oscillation(
    sigma: Permutation, pi: Union[OscillationId, Permutation]
) -> int:
    """mu(sigma, pi) for an increasing-oscillation upper bound, computed
    purely from the containment inequalities."""
    id = _resolve_upper(pi)
    if len(sigma.values) == 1:
        if not _sigma_leq_osc(sigma, id):
            raise NotContained(f"{sigma} is not contained in the upper bound")
        return _principal_value(id.n)
    if not is_sum_indecomposable(sigma) or (
        len(sigma.values) > 1 and classify_oscillation(sigma) is None
    ):
        raise NotAnOscillation(
            f"{sigma} is not a sum-indecomposable increasing oscillation"
        )
    if not _sigma_leq_osc(sigma, id):
        raise NotContained(f"{sigma} is not contained in the upper bound")
    if id.n - len(sigma.values) >= 2 and id.n >= 4:
        _fill_memo(sigma, id.n)
    return _mu_osc_filled(sigma, id)


def trace_oscillation(
    sigma: Permutation, pi: Union[OscillationId, Permutation]
) -> list[str]:
    """Human-readable evaluation tables: the per-shape block-count ranges,
    then one line per candidate member with its r, reported weight and
    Möbius value."""
    id = _resolve_upper(pi)
    pic = pi_class_of(id)
    lines: list[str] = []
    rows: list[str] = []
    for shape_kind in SHAPE_KINDS:
        lo = min_k(sigma, shape_kind)
        hi = max_k(shape_kind, pi=pic)
        lines.append(f"shape={shape_kind} min_k={lo} max_k={hi}")
        engine_lo = _engine_min_k(sigma, shape_kind)
        emitted = False
        for k in range(max(lo, engine_lo), hi + 1):
            member = _shape_member_id(shape_kind, k)
            if not _sigma_leq_osc(sigma, member):
                continue
            q = _copy_cost(shape_kind, k)
            t = pic.budget - _offset(shape_kind, pic)
            r = max(1, (t - 4) // q + 1)
            w = 1 if q * r > t else (-1 if q * (r + 1) > t else 0)
            mu = mobius_oscillation(sigma, member)
            alpha = realize_shape(Shape(shape_kind, k))
            rows.append(f"alpha={alpha} r={r} weight={w} mu={mu}")
            emitted = True
        if not emitted:
            if shape_kind == SINGLE21:
                rows.append("alpha=2 1 no possibilities")
            else:
                rows.append(f"shape={shape_kind} no possibilities")
    return lines + rows


# ---------------------------------------------------------------------------
# Principal series: mu(1, W_n) = mu(1, M_n) at scale
# ---------------------------------------------------------------------------

_principal: list[int] = [0, 1, -1, 1]


def _even_divisor_lists(limit: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(limit + 1)]
    for q in range(4, limit + 1, 2):
        for v in range(q, limit + 1, q):
            divs[v].append(q)
    return divs


def _extend_principal(n_max: int) -> None:
    """Fill the principal series up to length n_max by the closed-form
    divisor scan.

    For every shape other than the bare 21 the copy cost q is even and at
    least q_min; with t = 2n - b, a member contributes +1 exactly when some
    multiple of q lands in (t-2, t] (q divides t or t-1) and -1 exactly when
    the minimal multiple beyond t-4 lands in (t-4, t-2] (q divides t-2 or
    t-3).  The bare-21 shape has q = 3 and is resolved by (t-4) mod 3.
    The member matching the upper bound's own shape and block count is
    excluded.
    """
    mu = _principal
    if n_max < len(mu):
        return
    divs = _even_divisor_lists(n_max + 4)
    for n in range(len(mu), n_max + 1):
        even = n % 2 == 0
        budget = n if even else n + 1
        pi_kind = W_EVEN if even else W_ODD
        pi_shape_kind = PLAIN if even else RIGHT_CAPPED
        pi_k = n // 2 if even else (n - 1) // 2
        total = 0

        # Bare 21 as a direct-sum block: q = 3.
        t = budget - _B_OFFSET.get((SINGLE21, pi_kind), 0)
        s = (t - 4) % 3
        if s == 0:
            total += mu[2]
        elif s == 1:
            total -= mu[2]

        for shape_kind, q_min, cap_cost, len_off in (
            (PLAIN, 6, 2, -2),
            (LEFT_CAPPED, 4, 2, -1),
            (RIGHT_CAPPED, 4, 2, -1),
            (BOTH_CAPPED, 6, 4, -2),
        ):
            t = budget - _B_OFFSET.get((shape_kind, pi_kind), 0)
            for val, sign in ((t, 1), (t - 1, 1), (t - 2, -1), (t - 3, -1)):
                if val < q_min:
                    continue
                for q in divs[val]:
                    if q < q_min:
                        continue
                    k = (q - cap_cost) // 2
                    if shape_kind == pi_shape_kind and k == pi_k:
                        continue
                    total += sign * mu[q + len_off]
        if abs(total) >= _INT64_GUARD:
            raise Overflow("principal series value exceeds the 64-bit guard")
        mu.append(-total)


def _principal_value(length: int) -> int:
    if length >= len(_principal):
        _extend_principal(length)
    return _principal[length]


def principal_mu_series(n_max: int) -> list[int]:
    """mu(1, W_n) (equal to mu(1, M_n)) for n = 0..n_max; index 0 is unused.

    The fill is iterative and shares the module-level series, so ascending
    and out-of-order callers observe identical values.
    """
    if n_max < 1:
        raise RangeError(f"series length must be >= 1, got {n_max}")
    _extend_principal(n_max)
    return list(_principal[: n_max + 1])
