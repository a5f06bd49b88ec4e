"""Recover the effective key ``(mu, x1)`` from observed keystream bytes.

Every byte ``b`` pins its state to the cell ``[b/256, (b+1)/256]`` and, since
the quantizer is order preserving, also reveals which half of the map was
applied.  The search runs in three stages:

1. ``mu`` is bracketed by intersecting the quotients ``X[i+1] / X[i]``
   (left branch) and ``X[i+1] / (1 - X[i])`` (right branch) over all steps.
2. The ``(mu, x1)`` box is bisected depth-first.  Each box is pushed through
   the map with interval arithmetic, intersected with the observed cell at
   every step and discarded as soon as an intersection is empty.
3. Surviving leaves are merged into connected components and each component
   is polished down to binary64 points that regenerate every observed byte.

Stage 3 exists because a box of width 2**-40 is far too wide to predict a
chaotic orbit for 128 steps: its center drifts off the observed cells after
roughly 40 iterations.  For a fixed ``mu`` the binary64 map from ``x1`` to
the ``k``-th state is monotone along the observed branch sequence, so the
exact set of reproducing ``x1`` values is found by bisection on the float
lattice.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..errors import AmbiguousKey, NoConsistentKey, SearchBudgetExceeded
from ..tent import MU_MAX, MU_MIN, quantize_array

__all__ = [
    "RecoveryConfig",
    "KeyCandidate",
    "infer_branches",
    "cell_bounds",
    "seed_mu_bounds",
    "branch_and_prune",
    "recover_key_from_keystream",
    "verify_key_candidate",
    "matching_prefix",
    "components",
    "consistent_hull",
    "polish",
]


@dataclass(frozen=True)
class RecoveryConfig:
    min_samples: int = 64
    tolerance: float = 2.0**-40
    max_boxes: int = 10**7
    widen_ulps: int = 4
    # cap on how many binary64 values of mu are tried per component when polishing
    polish_limit: int = 1 << 16
    # full leaf enumeration is attempted up to this many boxes before the
    # search falls back to computing only the hull of the surviving set
    enumeration_budget: int = 4096


@dataclass
class KeyCandidate:
    """Box over ``(mu, x1)`` plus the branch sequence read off the bytes."""

    mu_lo: float
    mu_hi: float
    x1_lo: float
    x1_hi: float
    branch_seq: str = ""
    search_box: Optional[tuple] = None

    @property
    def center(self) -> tuple[float, float]:
        return 0.5 * (self.mu_lo + self.mu_hi), 0.5 * (self.x1_lo + self.x1_hi)

    @property
    def width(self) -> tuple[float, float]:
        return self.mu_hi - self.mu_lo, self.x1_hi - self.x1_lo

    def contains(self, mu: float, x1: float) -> bool:
        return self.mu_lo <= mu <= self.mu_hi and self.x1_lo <= x1 <= self.x1_hi

    def x0_preimages(self) -> list[float]:
        """Seeds that map onto the center ``x1``; informational only.

        ``x1 = mu*x0`` gives ``x0 = x1/mu`` when that is below 0.5, and
        ``x1 = mu*(1 - x0)`` gives ``x0 = 1 - x1/mu`` when that is at least 0.5.
        """
        mu, x1 = self.center
        out = []
        left = x1 / mu
        if 0.0 < left < 0.5:
            out.append(left)
        right = 1.0 - x1 / mu
        if 0.5 <= right < 1.0:
            out.append(right)
        return out


def infer_branches(ks) -> str:
    """``'L'`` where a byte is at most 127 and ``'R'`` otherwise."""
    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    if ks.size == 0:
        raise ValueError("keystream must be nonempty")
    return "".join("L" if b < 128 else "R" for b in ks.tolist())


def cell_bounds(ks) -> tuple[np.ndarray, np.ndarray]:
    """Closed state cells ``[b/256, (b+1)/256]``, with the top cell capped at 1."""
    b = np.asarray(ks, dtype=np.float64)
    return b / 256.0, np.minimum((b + 1.0) / 256.0, 1.0)


def _down(v: float, k: int) -> float:
    return v - k * math.ulp(v)


def _up(v: float, k: int) -> float:
    return v + k * math.ulp(v)


def seed_mu_bounds(ks, widen_ulps: int = 4) -> tuple[float, float]:
    """Bracket ``mu`` from consecutive byte pairs; raises NoConsistentKey if empty."""
    lo_c, hi_c = cell_bounds(ks)
    lo_c, hi_c = lo_c.tolist(), hi_c.tolist()
    mu_lo, mu_hi = MU_MIN, MU_MAX
    w = widen_ulps
    for i in range(len(lo_c) - 1):
        a, b = lo_c[i], hi_c[i]
        nlo, nhi = lo_c[i + 1], hi_c[i + 1]
        if a < 0.5:
            d_lo, d_hi = a, min(b, 0.5)
        else:
            d_lo, d_hi = 1.0 - b, 1.0 - a
        # new state = mu * d, d in [d_lo, d_hi]
        if d_hi > 0.0:
            mu_lo = max(mu_lo, _down(_down(nlo, w) / d_hi, w))
        if d_lo > 0.0:
            mu_hi = min(mu_hi, _up(_up(nhi, w) / d_lo, w))
        if mu_lo > mu_hi:
            raise NoConsistentKey(
                f"no mu in (1, 2] links byte {i} to byte {i + 1}"
            )
    return mu_lo, mu_hi


def _box_survives(mu_lo, mu_hi, x_lo, x_hi, lo_c, hi_c, left, w):
    """Propagate a box through all observed steps; return the failing step or -1.

    Step 0 is the initial intersection of the x1 range with the first cell.
    The branch at each step is taken from the byte, not from the interval.
    """
    x_lo = max(x_lo, lo_c[0])
    x_hi = min(x_hi, hi_c[0])
    if x_lo > x_hi:
        return 0
    for k in range(1, len(lo_c)):
        if left[k - 1]:
            n_lo = _down(mu_lo * x_lo, w)
            n_hi = _up(mu_hi * x_hi, w)
        else:
            n_lo = _down(mu_lo * (1.0 - x_hi), w)
            n_hi = _up(mu_hi * (1.0 - x_lo), w)
        x_lo = max(n_lo, lo_c[k])
        x_hi = min(n_hi, hi_c[k])
        if x_lo > x_hi:
            return k
    return -1


def _search_setup(ks, cfg):
    lo_c, hi_c = (c.tolist() for c in cell_bounds(ks))
    left = (ks < 128).tolist()
    mu_lo, mu_hi = seed_mu_bounds(ks, cfg.widen_ulps)
    root = (mu_lo, mu_hi, lo_c[0], min(hi_c[0], _up(mu_hi * 0.5, cfg.widen_ulps)))
    return root, (lo_c, hi_c, left)


def branch_and_prune(
    ks,
    cfg: RecoveryConfig = RecoveryConfig(),
    trace: Optional[Callable[[str, tuple], None]] = None,
) -> list[tuple[float, float, float, float]]:
    """Depth-first interval search; returns surviving leaf boxes in visit order.

    Boxes are ``(mu_lo, mu_hi, x1_lo, x1_hi)``.  The wider axis is split
    first and the lower half is explored before the upper half.  ``trace``
    is called with ``("prune", box)``, ``("split", box)`` or
    ``("leaf", box)`` for every box examined.
    """
    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    root, (lo_c, hi_c, left) = _search_setup(ks, cfg)
    w = cfg.widen_ulps
    tol = cfg.tolerance
    stack = [root]
    leaves = []
    visited = 0
    while stack:
        box = stack.pop()
        visited += 1
        if visited > cfg.max_boxes:
            raise SearchBudgetExceeded(f"more than {cfg.max_boxes} boxes examined")
        m0, m1, x0, x1 = box
        if _box_survives(m0, m1, x0, x1, lo_c, hi_c, left, w) >= 0:
            if trace is not None:
                trace("prune", box)
            continue
        wm, wx = m1 - m0, x1 - x0
        if wm <= tol and wx <= tol:
            if trace is not None:
                trace("leaf", box)
            leaves.append(box)
            continue
        if trace is not None:
            trace("split", box)
        lower, upper = _split(box)
        stack.append(upper)
        stack.append(lower)
    return leaves


def components(boxes):
    """Group closed boxes that touch or overlap; returns hulls in first-seen order."""
    n = len(boxes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        a = boxes[i]
        for j in range(i + 1, n):
            b = boxes[j]
            if a[0] <= b[1] and b[0] <= a[1] and a[2] <= b[3] and b[2] <= a[3]:
                parent[find(j)] = find(i)
    groups: dict[int, list] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(boxes[i])
    return [
        (
            min(b[0] for b in members),
            max(b[1] for b in members),
            min(b[2] for b in members),
            max(b[3] for b in members),
        )
        for members in groups.values()
    ]


# objectives for the directed searches: (box index, sign) so that
# sign * box[index] is minimised
_OBJECTIVES = ((0, 1), (1, -1), (2, 1), (3, -1))


def _split(box, toward=None):
    """Bisect the wider axis; returns children in exploration order.

    ``toward`` is an objective from ``_OBJECTIVES``; along its axis the child
    nearer the extreme goes first.  Otherwise the lower half goes first.
    """
    m0, m1, x0, x1 = box
    if m1 - m0 >= x1 - x0:
        mid = 0.5 * (m0 + m1)
        lower, upper = (m0, mid, x0, x1), (mid, m1, x0, x1)
        axis = 0
    else:
        mid = 0.5 * (x0 + x1)
        lower, upper = (m0, m1, x0, mid), (m0, m1, mid, x1)
        axis = 1
    if toward is not None and toward[0] // 2 == axis and toward[1] < 0:
        return upper, lower
    return lower, upper


def _extreme_leaf(root, data, cfg, objective, trace, budget):
    """Best-first branch and bound for the surviving leaf extreme along ``objective``.

    Pruning decisions are the same as in :func:`branch_and_prune`.  Boxes
    are expanded in order of their objective bound (ties by creation order),
    so the first leaf reached is optimal.
    """
    lo_c, hi_c, left = data
    idx, sign = objective
    w, tol = cfg.widen_ulps, cfg.tolerance
    heap = [(sign * root[idx], 0, root)]
    serial = 1
    while heap:
        _, _, box = heapq.heappop(heap)
        budget[0] += 1
        if budget[0] > cfg.max_boxes:
            raise SearchBudgetExceeded(f"more than {cfg.max_boxes} boxes examined")
        if _box_survives(*box, lo_c, hi_c, left, w) >= 0:
            if trace is not None:
                trace("prune", box)
            continue
        if box[1] - box[0] <= tol and box[3] - box[2] <= tol:
            if trace is not None:
                trace("leaf", box)
            return box
        if trace is not None:
            trace("split", box)
        for child in _split(box, objective):
            heapq.heappush(heap, (sign * child[idx], serial, child))
            serial += 1
    return None


def consistent_hull(
    ks,
    cfg: RecoveryConfig = RecoveryConfig(),
    trace: Optional[Callable[[str, tuple], None]] = None,
):
    """Hull of all surviving leaves, found without enumerating them.

    Runs four best-first searches (lowest mu, highest mu, lowest x1, highest
    x1) over the same bisection tree that :func:`branch_and_prune` walks.  Returns
    ``(hull, extremes, boxes_examined)``; raises NoConsistentKey when every
    box is pruned.
    """
    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    root, data = _search_setup(ks, cfg)
    budget = [0]
    extremes = []
    for objective in _OBJECTIVES:
        leaf = _extreme_leaf(root, data, cfg, objective, trace, budget)
        if leaf is None:
            raise NoConsistentKey("every box was pruned")
        extremes.append(leaf)
    hull = (
        extremes[0][0],
        extremes[1][1],
        extremes[2][2],
        extremes[3][3],
    )
    return hull, extremes, budget[0]


def _f2i(x):
    return np.asarray(x, dtype=np.float64).view(np.int64)


def _i2f(i):
    return np.asarray(i, dtype=np.int64).view(np.float64)


def _first_mismatch(mu, x1, ks):
    """Vectorized replay of the binary64 orbit.

    Returns ``(first, too_high, sign)``: index of the first byte that differs
    (``len(ks)`` if none), whether the regenerated byte was above the
    observed one, and the orientation (+1/-1) of ``x1 -> x_first``.
    """
    n = ks.size
    mu = np.asarray(mu, dtype=np.float64)
    x = np.array(x1, dtype=np.float64)
    first = np.full(x.shape, n, dtype=np.int64)
    too_high = np.zeros(x.shape, dtype=bool)
    sign = np.ones(x.shape, dtype=np.int8)
    orient = np.ones(x.shape, dtype=np.int8)
    open_ = np.ones(x.shape, dtype=bool)
    for k in range(n):
        b = quantize_array(x)
        bad = open_ & (b != ks[k])
        if bad.any():
            first[bad] = k
            too_high[bad] = b[bad] > ks[k]
            sign[bad] = orient[bad]
            open_ &= ~bad
            if not open_.any():
                break
        left = x < 0.5
        orient = np.where(left, orient, -orient)
        x = np.where(left, mu * x, mu * (1.0 - x))
    return first, too_high, sign


def _best_x1(mus, x_lo, x_hi, ks):
    """For each ``mu`` bisect the x1 lattice toward the observed bytes.

    Returns ``(x1, prefix)``: the probed x1 with the longest reproduced prefix
    and that prefix length.  A prefix of ``len(ks)`` is an exact solution.
    Correct because, for fixed ``mu``, the binary64 map from x1 to any later
    state is monotone on the set of x1 that follow the observed branches.
    """
    n = ks.size
    lo = np.full(mus.shape, int(_f2i(x_lo)), dtype=np.int64)
    hi = np.full(mus.shape, int(_f2i(x_hi)), dtype=np.int64)
    best_x = np.full(mus.shape, x_lo)
    best_len = np.full(mus.shape, -1, dtype=np.int64)
    active = lo <= hi
    while active.any():
        idx = np.nonzero(active)[0]
        mid = (lo[idx] + hi[idx]) // 2
        first, too_high, sign = _first_mismatch(mus[idx], _i2f(mid), ks)
        better = first > best_len[idx]
        best_len[idx[better]] = first[better]
        best_x[idx[better]] = _i2f(mid[better])
        done = first == n
        go_down = too_high ^ (sign < 0)
        hi[idx] = np.where(~done & go_down, mid - 1, hi[idx])
        lo[idx] = np.where(~done & ~go_down, mid + 1, lo[idx])
        active[idx[done]] = False
        active &= lo <= hi
    return best_x, best_len


def _mu_lattice(lo: float, hi: float, limit: int) -> np.ndarray:
    """Up to ``limit`` binary64 values in ``[lo, hi]``, center outward.

    All of them when they fit; otherwise the values nearest the center plus
    an even spread across the whole range.
    """
    i_lo, i_hi = int(_f2i(lo)), int(_f2i(hi))
    i_c = int(_f2i(0.5 * (lo + hi)))
    if i_hi - i_lo + 1 <= limit:
        idx = np.arange(i_lo, i_hi + 1, dtype=np.int64)
    else:
        near = limit // 2
        start = max(i_lo, i_c - near // 2)
        core = np.arange(start, min(start + near, i_hi + 1), dtype=np.int64)
        spread = np.linspace(i_lo, i_hi, limit - core.size).astype(np.int64)
        idx = np.unique(np.concatenate((core, spread)))
    order = np.argsort(np.abs(idx - i_c), kind="stable")
    return _i2f(idx[order])


def _x1_extent(mu, x1, x_lo, x_hi, ks):
    """Grow a reproducing x1 to the full contiguous range of reproducing values."""
    n = ks.size
    mu_a = np.array([mu])

    def ok(i):
        return _first_mismatch(mu_a, _i2f(np.array([i])), ks)[0][0] == n

    g = int(_f2i(x1))
    a, b = int(_f2i(x_lo)), g
    while a < b:
        m = (a + b) // 2
        if ok(m):
            b = m
        else:
            a = m + 1
    lo = a
    a, b = g, int(_f2i(x_hi))
    while a < b:
        m = (a + b + 1) // 2
        if ok(m):
            a = m
        else:
            b = m - 1
    return float(_i2f(lo)), float(_i2f(a))


def polish(hull, ks, cfg: RecoveryConfig = RecoveryConfig()):
    """Best binary64 ``(mu, x1_lo, x1_hi, prefix)`` inside ``hull``.

    Tries up to ``cfg.polish_limit`` values of mu.  When some pair reproduces
    all of ``ks`` the x1 range is the full set of reproducing values for that
    mu; otherwise it is the single best probe.
    """
    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    m0, m1, x0, x1 = hull
    m0 = max(m0, float(np.nextafter(MU_MIN, 2.0)))
    m1 = min(m1, MU_MAX)
    x0 = max(x0, 5e-324)
    mus = _mu_lattice(m0, m1, cfg.polish_limit)
    best = None
    chunk = 4096
    for s in range(0, mus.size, chunk):
        part = mus[s:s + chunk]
        xs, lens = _best_x1(part, x0, x1, ks)
        j = int(np.argmax(lens))
        if best is None or lens[j] > best[3]:
            best = (float(part[j]), float(xs[j]), float(xs[j]), int(lens[j]))
        if best[3] == ks.size:
            mu = best[0]
            lo, hi = _x1_extent(mu, best[1], x0, x1, ks)
            return mu, lo, hi, best[3]
    return best


def matching_prefix(mu: float, x1: float, ks) -> int:
    """Length of the longest prefix of ``ks`` regenerated from ``(mu, x1)``."""
    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    return int(_first_mismatch(np.array([mu]), np.array([x1]), ks)[0][0])


def verify_key_candidate(cand: KeyCandidate, ks) -> int:
    """Replay the box center and count how many leading bytes of ``ks`` it reproduces."""
    mu, x1 = cand.center
    return matching_prefix(mu, x1, ks)


def recover_key_from_keystream(
    ks,
    cfg: RecoveryConfig = RecoveryConfig(),
    trace: Optional[Callable[[str, tuple], None]] = None,
):
    """Recover the effective key ``(mu, x1)`` from keystream bytes.

    Returns ``(candidate, report)``.  ``report.success`` is true only when the
    candidate center regenerates every observed byte.  When no binary64 pair
    inside the searched region does, the candidate is the best one found and
    ``report.verified_match_len`` says how far it got.

    Raises NoConsistentKey when every box is pruned, AmbiguousKey when several
    disjoint regions each yield a full reproduction, and SearchBudgetExceeded.
    """
    from .report import AttackReport

    ks = np.asarray(ks, dtype=np.uint8).reshape(-1)
    if ks.size < cfg.min_samples:
        raise ValueError(
            f"need at least {cfg.min_samples} keystream bytes, got {ks.size}"
        )
    branches = infer_branches(ks)
    enum_cfg = replace(cfg, max_boxes=min(cfg.max_boxes, cfg.enumeration_budget))
    try:
        leaves = branch_and_prune(ks, enum_cfg, trace)
    except SearchBudgetExceeded:
        hull, _, examined = consistent_hull(ks, cfg, trace)
        regions = [hull]
        strategy = "hull"
    else:
        if not leaves:
            raise NoConsistentKey("every box was pruned")
        regions = components(leaves)
        strategy = "enumerated"
        examined = None

    found = []
    for region in regions:
        mu, lo, hi, prefix = polish(region, ks, cfg)
        cand = KeyCandidate(mu, mu, lo, hi, branches, search_box=region)
        found.append((verify_key_candidate(cand, ks), cand))
    full = [c for n, c in found if n == ks.size]
    if len(full) > 1:
        raise AmbiguousKey(full)
    match_len, cand = max(found, key=lambda t: t[0])
    region = cand.search_box
    report = AttackReport(
        method="KEY_RECOVERY",
        queries_used=0,
        success=match_len == ks.size,
        recovered_keystream_len=int(ks.size),
        key_estimate=cand.center,
        verified_match_len=int(match_len),
        details={
            "strategy": strategy,
            "regions": len(regions),
            "boxes_examined": examined,
            "search_box": list(region),
            "search_box_width": [region[1] - region[0], region[3] - region[2]],
            "x0_candidates": cand.x0_preimages(),
        },
    )
    return cand, report
