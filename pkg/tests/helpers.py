"""Independent reference implementations used to validate the package.

Everything here works on plain value tuples and deliberately avoids the
package's own containment matcher, downset enumeration, and Möbius engines,
so that agreement between the two is meaningful evidence of correctness.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations


def standardize_ref(vals: tuple[int, ...]) -> tuple[int, ...]:
    """Relabel arbitrary distinct numbers to 1..n preserving order pattern."""
    order = sorted(vals)
    rank = {v: i + 1 for i, v in enumerate(order)}
    return tuple(rank[v] for v in vals)


def contains_ref(sigma: tuple[int, ...], pi: tuple[int, ...]) -> bool:
    """Pattern containment by exhaustive subsequence search."""
    k, n = len(sigma), len(pi)
    if k > n:
        return False
    if k == 0:
        return True
    for pos in combinations(range(n), k):
        if standardize_ref(tuple(pi[i] for i in pos)) == sigma:
            return True
    return False


@lru_cache(maxsize=4096)
def downset_ref(pi: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All patterns of pi (including the empty tuple and pi itself)."""
    out = {pi, ()}
    frontier = {pi}
    while frontier:
        nxt = set()
        for vals in frontier:
            for i in range(len(vals)):
                child = standardize_ref(vals[:i] + vals[i + 1 :])
                if child not in out:
                    out.add(child)
                    nxt.add(child)
        frontier = nxt
    return frozenset(out)


def mobius_ref(sigma: tuple[int, ...], pi: tuple[int, ...]) -> int:
    """The defining recurrence, evaluated literally over the interval.

    mu(sigma, sigma) = 1; mu(sigma, pi) = 0 when sigma is not a pattern of
    pi; otherwise mu(sigma, pi) = -sum of mu(sigma, lam) over all lam in
    the half-open interval [sigma, pi).
    """
    if sigma == pi:
        return 1
    if not contains_ref(sigma, pi):
        return 0
    members = sorted(
        (v for v in downset_ref(pi) if len(v) >= len(sigma) and contains_ref(sigma, v)),
        key=lambda v: (len(v), v),
    )
    mu: dict[tuple[int, ...], int] = {}
    for lam in members:
        if lam == sigma:
            mu[lam] = 1
            continue
        acc = 0
        for nu in members:
            if len(nu) < len(lam) and contains_ref(nu, lam):
                acc += mu[nu]
            elif len(nu) == len(lam) and nu == lam:
                break
        mu[lam] = -acc
    return mu.get(pi, 0)


def all_perm_tuples(n: int):
    """Every permutation of length n as a value tuple."""
    return permutations(range(1, n + 1))


def inverse_ref(vals: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(vals)
    for pos, v in enumerate(vals):
        inv[v - 1] = pos + 1
    return tuple(inv)


def sum_components_ref(vals: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Split at every prefix that is a complete initial value block."""
    comps = []
    start = 0
    seen_max = 0
    for i, v in enumerate(vals):
        seen_max = max(seen_max, v)
        if seen_max == i + 1:
            comps.append(standardize_ref(vals[start : i + 1]))
            start = i + 1
    return comps
