"""Pure-Python twin of the compiled trial kernel.

Selected automatically when the extension is missing.  Every draw, swap, and
statistic must match planetree._kernels exactly; the random stream logic is
inlined here (rather than calling rng.RandomStream) to keep the per-trial
loop tolerable, and the equivalence of all three implementations is pinned
by tests.
"""

from __future__ import annotations

BACKEND_NAME = "python"

KIND_BFS = 0
KIND_LEX_DFS = 1
KIND_REV_DFS = 2

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(seed: int, index: int) -> int:
    z = (seed + _GOLDEN * (index + 1)) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _shuffle(values: list[int], state: int) -> int:
    """In-place Fisher-Yates; returns the advanced generator state."""
    for i in range(len(values) - 1, 0, -1):
        k = i + 1
        mask = (1 << i.bit_length()) - 1
        while True:
            state = (state + _GOLDEN) & _MASK
            z = state
            z = ((z ^ (z >> 30)) * _MIX1) & _MASK
            z = ((z ^ (z >> 27)) * _MIX2) & _MASK
            j = (z ^ (z >> 31)) & mask
            if j < k:
                break
        values[i], values[j] = values[j], values[i]
    return state


def shuffle_once(values, seed: int) -> list[int]:
    out = [int(v) for v in values]
    _shuffle(out, seed & _MASK)
    return out


def _hw_bfs(rot: list[int]) -> tuple[int, int]:
    # queue size at the rank closing level d equals the size of level d+1
    n = len(rot)
    q = 1
    h = 0
    w = 1
    level_end = 1
    for j in range(1, n + 1):
        q += rot[j - 1] - 1
        if j == level_end:
            if q == 0:
                break
            h += 1
            if q > w:
                w = q
            level_end = j + q
    return h, w


def _hw_dfs(rot: list[int]) -> tuple[int, int]:
    # stack of open ancestors; its size is the depth of the next node
    n = len(rot)
    if n == 1:
        return 0, 1
    lvl = [0] * n
    lvl[0] = 1
    h = 0
    w = 1
    stack = [rot[0]]
    for j in range(1, n):
        d = len(stack)
        v = lvl[d] + 1
        lvl[d] = v
        if v > w:
            w = v
        if d > h:
            h = d
        stack[-1] -= 1
        cj = rot[j]
        if cj:
            stack.append(cj)
        else:
            while stack and stack[-1] == 0:
                stack.pop()
    return h, w


def hw_from_tree_sequence(counts, kind: int) -> tuple[int, int]:
    """Height and width of the decoded tree, without building it.

    The right-to-left codec yields the mirror image of the left-to-right
    one, so both share the depth-first sweep.
    """
    rot = [int(v) for v in counts]
    if kind == KIND_BFS:
        return _hw_bfs(rot)
    return _hw_dfs(rot)


def run_trials(
    base,
    trials: int,
    master_seed: int,
    kind: int,
    trial_offset: int,
    out_h,
    out_w,
    out_pathmax,
    out_prefixmin,
) -> None:
    """Shuffle/rotate/measure `trials` times, filling the output arrays.

    Trial t (globally trial_offset + t) runs on its own sub-stream, so any
    partition of the trial range reproduces identical outputs.
    """
    n = len(base)
    base_list = [int(v) for v in base]
    half = n // 2
    master_seed &= _MASK
    for t in range(trials):
        c = base_list.copy()
        _shuffle(c, mix64(master_seed, trial_offset + t))

        sums = [0] * (n + 1)
        s = 0
        best = 0
        k = 0
        pmin = 0
        for i in range(1, n + 1):
            s += c[i - 1] - 1
            sums[i] = s
            if s < best:
                best = s
                k = i
            if i <= half and s < pmin:
                pmin = s
        # peak of the rotated path, spliced from the raw sums around pivot k
        a = max(sums[k:]) - sums[k]
        b = sums[n] - sums[k] + max(sums[: k + 1])

        rot = c[k:] + c[:k] if 0 < k < n else c
        if kind == KIND_BFS:
            h, w = _hw_bfs(rot)
        else:
            h, w = _hw_dfs(rot)

        out_h[t] = h
        out_w[t] = w
        out_pathmax[t] = a if a > b else b
        out_prefixmin[t] = pmin
