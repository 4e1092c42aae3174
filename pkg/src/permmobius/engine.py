"""General Möbius computation and the engine dispatcher.

Decomposable upper bounds are reduced by the component recursions
(``mobius_prop1`` / ``mobius_prop2`` / ``mobius_cor3``).  Indecomposable
upper bounds use the weighted contributing-set recursion
(``mobius_theorem``): mu(sigma, pi) is minus the sum of mu(sigma, alpha)
times a {-1, 0, +1} weight over the sum-indecomposable alpha strictly
below pi, where the weight of alpha depends on which of the direct-sum
family members built from alpha still embed in pi.  Increasing-oscillation
upper bounds are routed to the inequality-only fast path.
"""

from __future__ import annotations

import os
from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionViolation, TooLarge
from .oscillation_fast import mobius_oscillation
from .perms import (
    Permutation,
    classify_oscillation,
    contains,
    is_identity,
    is_reverse_identity,
    is_sum_indecomposable,
    sum_decompose,
)
from .poset import DEFAULT_DOWNSET_CAP, _downset_ctx, mobius_naive

__all__ = [
    "MobiusCache",
    "WeightedContribution",
    "MobiusEngine",
    "min_r_general",
    "weight_general",
    "contributing_set",
    "mobius",
    "mobius_theorem",
    "mobius_prop1",
    "mobius_prop2",
    "mobius_cor3",
    "default_engine",
]

ENGINE_NAMES = ("auto", "naive", "general", "oscillation")

_DEFAULT_CACHE_BYTES = 256 * 1024 * 1024
_ENTRY_OVERHEAD = 48


class MobiusCache:
    """LRU value cache keyed by (lower key, upper key), bounded in bytes."""

    def __init__(self, max_bytes: Optional[int] = None):
        if max_bytes is None:
            max_bytes = int(
                os.environ.get("MOBIUS_CACHE_BYTES", _DEFAULT_CACHE_BYTES)
            )
        self.max_bytes = max_bytes
        self._entries: OrderedDict[tuple[bytes, bytes], int] = OrderedDict()
        self._bytes = 0
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def size_bytes(self) -> int:
        return self._bytes

    @staticmethod
    def _cost(key: tuple[bytes, bytes]) -> int:
        return len(key[0]) + len(key[1]) + _ENTRY_OVERHEAD

    def get(self, key: tuple[bytes, bytes]) -> Optional[int]:
        entry = self._entries.get(key)
        if entry is None:
            self.misses += 1
            return None
        self._entries.move_to_end(key)
        self.hits += 1
        return entry

    def put(self, key: tuple[bytes, bytes], value: int) -> None:
        if key in self._entries:
            self._entries.move_to_end(key)
            self._entries[key] = value
            return
        self._entries[key] = value
        self._bytes += self._cost(key)
        while self._bytes > self.max_bytes and self._entries:
            old_key, _ = self._entries.popitem(last=False)
            self._bytes -= self._cost(old_key)

    def clear(self) -> None:
        self._entries.clear()
        self._bytes = 0


@dataclass(frozen=True)
class WeightedContribution:
    """A sum-indecomposable candidate with its minimal copy count and weight."""

    alpha: Permutation
    r: int
    weight: int


# ---------------------------------------------------------------------------
# Weight function on the general path
# ---------------------------------------------------------------------------


def _shift(vals: tuple[int, ...], offset: int) -> tuple[int, ...]:
    return tuple(v + offset for v in vals)


def _iterated_sum_vals(alpha: tuple[int, ...], r: int) -> tuple[int, ...]:
    block = len(alpha)
    out: list[int] = []
    for i in range(r):
        out.extend(v + i * block for v in alpha)
    return tuple(out)


def min_r_general(alpha: Permutation, pi: Permutation) -> int:
    """Smallest r >= 1 such that 1 + (r copies of alpha) + 1 (direct sums)
    is not strictly below pi; bounded by |pi| // |alpha| + 1.  Strictness
    matters when pi itself has that capped-stack form: the capped stack then
    falls outside the half-open interval the recursion sums over."""
    a = alpha.values
    n = len(pi.values)
    block = len(a)
    for r in range(1, n // block + 2):
        stack = _iterated_sum_vals(a, r)
        capped = (1,) + _shift(stack, 1) + (len(stack) + 2,)
        if len(capped) >= n or not contains(Permutation._wrap(capped), pi):
            return r
    raise PreconditionViolation(
        f"no terminating copy count for {alpha} inside {pi}"
    )


def _weight_from_tests(
    stack_below: bool,
    left_below: bool,
    right_below: bool,
    longer_below: bool,
) -> int:
    return (
        (1 if stack_below else 0)
        - (1 if left_below else 0)
        - (1 if right_below else 0)
        + (1 if longer_below else 0)
    )


def weight_general(sigma: Permutation, alpha: Permutation, pi: Permutation) -> int:
    """Weight of alpha toward mu(sigma, pi): with r minimal as above and
    S the direct sum of r copies of alpha, counts which of S, 1+S, S+1
    and the (r+1)-copy stack are strictly below pi (inclusion-exclusion
    over the direct-sum family built from alpha)."""
    a = alpha.values
    p = pi.values
    r = min_r_general(alpha, pi)

    def strictly_below(vals: tuple[int, ...]) -> bool:
        if len(vals) >= len(p):
            return False
        return contains(Permutation._wrap(vals), pi)

    stack = _iterated_sum_vals(a, r)
    return _weight_from_tests(
        strictly_below(stack),
        strictly_below((1,) + _shift(stack, 1)),
        strictly_below(stack + (len(stack) + 1,)),
        strictly_below(_iterated_sum_vals(a, r + 1)),
    )


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class MobiusEngine:
    """Dispatcher over the naive oracle, the component recursions, the
    contributing-set recursion, and the oscillation fast path."""

    def __init__(
        self,
        cache: Optional[MobiusCache] = None,
        downset_cap: int = DEFAULT_DOWNSET_CAP,
        max_cached_upper_len: Optional[int] = None,
    ):
        self.cache = cache if cache is not None else MobiusCache()
        self.downset_cap = downset_cap
        self.max_cached_upper_len = max_cached_upper_len
        self.stats = {"naive_fallbacks": 0, "theorem_calls": 0}
        # Candidate lists (alpha index, alpha, r, weight) per upper bound.
        self._candidates: OrderedDict[
            tuple[int, ...], list[tuple[int, Permutation, int, int]]
        ] = OrderedDict()
        self._candidates_max = 4096

    # -- candidate enumeration -------------------------------------------

    def _candidate_list(self, pi: Permutation):
        """Sum-indecomposable members strictly below pi with nonzero weight;
        sigma-independent, so cached per upper bound."""
        cached = self._candidates.get(pi.values)
        if cached is not None:
            self._candidates.move_to_end(pi.values)
            return cached
        ctx = _downset_ctx(pi)
        n = len(pi.values)
        index = ctx.index

        def strictly_below(vals: tuple[int, ...]) -> bool:
            return len(vals) < n and vals in index

        out: list[tuple[int, Permutation, int, int]] = []
        for idx, member in enumerate(ctx.members):
            a = member.values
            block = len(a)
            if block == 0 or block >= n or not is_sum_indecomposable(member):
                continue
            r = 0
            for cand in range(1, n // block + 2):
                stack = _iterated_sum_vals(a, cand)
                capped = (1,) + _shift(stack, 1) + (len(stack) + 2,)
                if len(capped) >= n or capped not in index:
                    r = cand
                    break
            stack = _iterated_sum_vals(a, r)
            w = _weight_from_tests(
                strictly_below(stack),
                strictly_below((1,) + _shift(stack, 1)),
                strictly_below(stack + (len(stack) + 1,)),
                strictly_below(_iterated_sum_vals(a, r + 1)),
            )
            if w:
                out.append((idx, member, r, w))
        self._candidates[pi.values] = out
        if len(self._candidates) > self._candidates_max:
            self._candidates.popitem(last=False)
        return out

    def contributing_set(
        self, sigma: Permutation, pi: Permutation
    ) -> list[WeightedContribution]:
        """All sum-indecomposable alpha in [sigma, pi) with nonzero weight."""
        if len(pi.values) > self.downset_cap:
            raise TooLarge(
                f"upper bound of length {len(pi.values)} exceeds the downset "
                f"cap {self.downset_cap}"
            )
        ctx = _downset_ctx(pi)
        sidx = ctx.index.get(sigma.values)
        if sidx is None:
            return []
        return [
            WeightedContribution(alpha, r, w)
            for idx, alpha, r, w in self._candidate_list(pi)
            if (ctx.reach[idx] >> sidx) & 1
        ]

    # -- component recursions ---------------------------------------------

    @staticmethod
    def _leading_count(components, head: Permutation) -> int:
        count = 0
        for comp in components:
            if comp == head:
                count += 1
            else:
                break
        return count

    def mobius_prop1(self, sigma: Permutation, pi: Permutation) -> int:
        """Decomposable pi whose first component is 1: reduce by stripping
        the leading singleton run against sigma's leading singleton run."""
        if not sigma.values:
            raise PreconditionViolation("lower bound must be nonempty")
        dec_pi = sum_decompose(pi)
        one = Permutation._wrap((1,))
        if len(dec_pi.components) < 2 or dec_pi.components[0] != one:
            raise PreconditionViolation(
                "upper bound must be decomposable with first component 1"
            )
        dec_sigma = sum_decompose(sigma)
        k = self._leading_count(dec_pi.components, one)
        l = self._leading_count(dec_sigma.components, one)
        pi_tail = dec_pi.suffix(k)
        if k - 1 > l:
            return 0
        if k - 1 == l:
            return -self.mobius(dec_sigma.suffix(k - 1), pi_tail)
        return self.mobius(dec_sigma.suffix(k), pi_tail) - self.mobius(
            dec_sigma.suffix(k - 1), pi_tail
        )

    def mobius_prop2(self, sigma: Permutation, pi: Permutation) -> int:
        """Decomposable pi whose first component differs from 1: double sum
        over splits of sigma and strips of pi's leading repeated component."""
        dec_pi = sum_decompose(pi)
        one = (1,)
        if len(dec_pi.components) < 2 or dec_pi.components[0].values == one:
            raise PreconditionViolation(
                "upper bound must be decomposable with first component != 1"
            )
        head = dec_pi.components[0]
        k = self._leading_count(dec_pi.components, head)
        dec_sigma = sum_decompose(sigma)
        m = len(dec_sigma.components)
        total = 0
        for i in range(1, m + 1):
            left = self.mobius(dec_sigma.prefix(i), head)
            if left == 0:
                continue
            right_sigma = dec_sigma.suffix(i)
            for j in range(1, k + 1):
                total += left * self.mobius(right_sigma, dec_pi.suffix(j))
        return total

    def mobius_cor3(self, sigma: Permutation, pi: Permutation) -> int:
        """Sum-indecomposable sigma against a decomposable pi with repeated
        non-singleton head: nonzero only for head-power upper bounds."""
        if not is_sum_indecomposable(sigma):
            raise PreconditionViolation("lower bound must be sum-indecomposable")
        dec_pi = sum_decompose(pi)
        comps = dec_pi.components
        one = (1,)
        if len(comps) < 2 or comps[0].values == one:
            raise PreconditionViolation(
                "upper bound must be decomposable with first component != 1"
            )
        head = comps[0]
        if all(c == head for c in comps):
            return self.mobius(sigma, head)
        if comps[-1].values == one and all(c == head for c in comps[:-1]):
            return -self.mobius(sigma, head)
        return 0

    # -- contributing-set recursion ----------------------------------------

    def mobius_theorem(self, sigma: Permutation, pi: Permutation) -> int:
        """mu via the weighted contributing set, recursing through the
        dispatcher; mu(sigma, alpha) collapses to +1 / -1 for the two
        shortest candidate lengths without recursion."""
        if not is_sum_indecomposable(sigma):
            raise PreconditionViolation("lower bound must be sum-indecomposable")
        if len(pi.values) <= 3:
            raise PreconditionViolation("upper bound must have length > 3")
        if is_identity(pi) or is_reverse_identity(pi):
            raise PreconditionViolation(
                "identity / reverse-identity upper bounds are handled directly"
            )
        if sigma == pi:
            return 1
        self.stats["theorem_calls"] += 1
        ctx = _downset_ctx(pi)
        sidx = ctx.index.get(sigma.values)
        if sidx is None:
            return 0
        slen = len(sigma.values)
        total = 0
        for idx, alpha, _r, w in self._candidate_list(pi):
            if not (ctx.reach[idx] >> sidx) & 1:
                continue
            alen = len(alpha.values)
            if alen == slen:
                mu_sa = 1
            elif alen == slen + 1:
                mu_sa = -1
            else:
                mu_sa = self.mobius(sigma, alpha)
            total += mu_sa * w
        return -total

    # -- dispatcher ---------------------------------------------------------

    def mobius(self, sigma: Permutation, pi: Permutation, engine: str = "auto") -> int:
        if engine not in ENGINE_NAMES:
            raise PreconditionViolation(f"unknown engine {engine!r}")
        if engine == "naive":
            return mobius_naive(sigma, pi, cap=self.downset_cap)
        if sigma == pi:
            return 1
        slen = len(sigma.values)
        plen = len(pi.values)
        if slen > plen:
            return 0
        if slen == 0:
            return -1 if plen == 1 else 0
        key = (sigma.key, pi.key)
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        if not contains(sigma, pi):
            return 0
        if plen - slen == 1:
            return -1
        if is_identity(pi) or is_reverse_identity(pi):
            # Containment inside a chain with a length gap >= 2.
            return 0
        value = self._route(sigma, pi, engine)
        if self.max_cached_upper_len is None or plen <= self.max_cached_upper_len:
            self.cache.put(key, value)
        return value

    def _route(self, sigma: Permutation, pi: Permutation, engine: str) -> int:
        if engine == "oscillation":
            return mobius_oscillation(sigma, pi)
        dec_pi = sum_decompose(pi)
        if len(dec_pi.components) > 1:
            if dec_pi.components[0].values == (1,):
                return self.mobius_prop1(sigma, pi)
            if is_sum_indecomposable(sigma):
                return self.mobius_cor3(sigma, pi)
            return self.mobius_prop2(sigma, pi)
        if not is_sum_indecomposable(sigma):
            self.stats["naive_fallbacks"] += 1
            return mobius_naive(sigma, pi, cap=self.downset_cap)
        if len(pi.values) <= 3:
            return mobius_naive(sigma, pi, cap=self.downset_cap)
        if engine == "auto" and classify_oscillation(pi) is not None:
            if len(sigma.values) == 1 or classify_oscillation(sigma) is not None:
                return mobius_oscillation(sigma, pi)
        return self.mobius_theorem(sigma, pi)


_default_engine: Optional[MobiusEngine] = None


def default_engine() -> MobiusEngine:
    global _default_engine
    if _default_engine is None:
        _default_engine = MobiusEngine()
    return _default_engine


def mobius(sigma: Permutation, pi: Permutation, engine: str = "auto") -> int:
    return default_engine().mobius(sigma, pi, engine=engine)


def mobius_theorem(sigma: Permutation, pi: Permutation) -> int:
    return default_engine().mobius_theorem(sigma, pi)


def mobius_prop1(sigma: Permutation, pi: Permutation) -> int:
    return default_engine().mobius_prop1(sigma, pi)


def mobius_prop2(sigma: Permutation, pi: Permutation) -> int:
    return default_engine().mobius_prop2(sigma, pi)


def mobius_cor3(sigma: Permutation, pi: Permutation) -> int:
    return default_engine().mobius_cor3(sigma, pi)


def contributing_set(sigma: Permutation, pi: Permutation) -> list[WeightedContribution]:
    return default_engine().contributing_set(sigma, pi)
