"""Pure-Python compute kernels.

The innermost loops of the package live behind the small function interface
defined here, so that a compiled twin can replace them wholesale; see
``curvekit.kernels`` for the selection logic.  Everything in this module is
plain Python with no dependencies beyond the standard library.
"""

from __future__ import annotations

from typing import Iterator, Sequence

BACKEND = "pure"


def admissible_stream(
    num_edges: int,
    closings: Sequence[Sequence[tuple[int, int]]],
    budget: int,
    forced_zero: Sequence[bool],
    after: Sequence[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Admissible edge-weight vectors with L1 norm <= ``budget``, in
    ascending lexicographic order.

    ``closings[e]`` lists, for every triangle whose largest edge id is ``e``,
    the ids of its two other edges; the triangle conditions (even weight sum,
    triangle inequalities) are applied as soon as that last edge is assigned,
    which prunes the search to a per-edge parity-stepped interval.
    ``forced_zero`` pins selected edges to weight zero.  ``after`` resumes
    the stream strictly past a previously produced vector.
    """
    vec = [0] * num_edges
    aft = list(after) if after is not None else None

    def rec(e: int, remaining: int, tight: bool) -> Iterator[tuple[int, ...]]:
        if e == num_edges:
            if not tight:
                yield tuple(vec)
            return
        lo, hi, parity = 0, remaining, -1
        for i, j in closings[e]:
            vi, vj = vec[i], vec[j]
            d = vi - vj if vi >= vj else vj - vi
            if d > lo:
                lo = d
            s = vi + vj
            if s < hi:
                hi = s
            p = s & 1
            if parity < 0:
                parity = p
            elif parity != p:
                return
        if forced_zero[e]:
            if lo > 0 or parity > 0:
                return
            hi = 0
        step = 1
        if parity >= 0:
            if (lo & 1) != parity:
                lo += 1
            step = 2
        if tight and aft[e] > lo:
            lo = aft[e]
            if parity >= 0 and (lo & 1) != parity:
                lo += 1
        for v in range(lo, hi + 1, step):
            vec[e] = v
            yield from rec(e + 1, remaining - v, tight and v == aft[e])
        vec[e] = 0

    yield from rec(0, budget, aft is not None)
