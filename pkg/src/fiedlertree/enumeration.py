"""Exhaustive free-tree enumeration and the extrema-property census.

Free (non-isomorphic) trees are generated by constant-amortized-time
successor steps on canonical level sequences: the rooted-tree successor of
Beyer & Hedetniemi, restricted to sequences that are canonical for the
underlying free tree (first principal subtree no higher, then no larger,
then lexicographically no later than the rest).  The stream is strictly
decreasing lexicographically, starting at the path rooted in its center.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .admissibility import extrema_verdict
from .graph import Graph
from .spectral import fiedler_pair

MAX_ENUMERATION_N = 22

#: free trees per vertex count, used as a guard in tests and checkpoints
FREE_TREE_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106,
    11: 235, 12: 551, 13: 1301, 14: 3159, 15: 7741, 16: 19320, 17: 48629,
    18: 123867, 19: 317955, 20: 823065,
}


def _rooted_successor(seq: list[int], p: int | None = None) -> list[int] | None:
    """Next canonical rooted level sequence (lexicographically smaller)."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    period = p - q
    for i in range(p, len(out)):
        out[i] = out[i - period]
    return out


def _second_root_child(seq: Sequence[int]) -> int:
    """Index of the root's second child, or len(seq) if the root has one."""
    seen_first = False
    for i in range(1, len(seq)):
        if seq[i] == 1:
            if seen_first:
                return i
            seen_first = True
    return len(seq)


def _is_free_canonical(seq: Sequence[int]) -> bool:
    """First principal subtree no higher, then no larger, then lex no later."""
    if len(seq) <= 2:
        return True
    m = _second_root_child(seq)
    left = [seq[i] - 1 for i in range(1, m)]
    rest = [0] + list(seq[m:])
    lh = max(left)
    rh = max(rest)
    if rh < lh:
        return False
    if rh == lh:
        if len(left) > len(rest):
            return False
        if len(left) == len(rest) and left > rest:
            return False
    return True


def _skip_to_free(cand: list[int] | None) -> list[int] | None:
    """Advance a rooted sequence to the next one canonical as a free tree."""
    while cand is not None:
        if _is_free_canonical(cand):
            return cand
        p = _second_root_child(cand) - 1
        nxt = _rooted_successor(cand, p)
        if nxt is not None and cand[p] > 2:
            # the chopped subtree was deeper than a single edge: restart the
            # tail as a fresh ladder below the new first subtree's height
            m = _second_root_child(nxt)
            height = max(nxt[i] - 1 for i in range(1, m))
            ladder = list(range(1, height + 2))
            nxt[len(nxt) - len(ladder):] = ladder
        cand = nxt
    return None


def free_tree_sequences(
    n: int, start_after: Sequence[int] | None = None
) -> Iterator[tuple[int, ...]]:
    """Canonical level sequences of all free trees on n vertices.

    ``start_after`` resumes the stream just past a previously yielded
    sequence (used by survey checkpointing).
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_N}")
    if n == 1:
        if start_after is None:
            yield (0,)
        return
    if start_after is None:
        cand: list[int] | None = list(range(n // 2 + 1)) + list(
            range(1, (n + 1) // 2)
        )
        cand = _skip_to_free(cand)
    else:
        if len(start_after) != n:
            raise ValueError("start_after has the wrong length")
        cand = _skip_to_free(_rooted_successor(list(start_after)))
    while cand is not None:
        yield tuple(cand)
        cand = _skip_to_free(_rooted_successor(cand))


def level_sequence_to_graph(seq: Sequence[int]) -> Graph:
    """Tree whose vertex i sits at depth seq[i], parents by DFS position."""
    edges = []
    stack: list[int] = []
    for i, lev in enumerate(seq):
        del stack[lev:]
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Graph(len(seq), edges)


def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """Each isomorphism class of trees on n vertices exactly once."""
    for seq in free_tree_sequences(n):
        yield level_sequence_to_graph(seq)


def _tree_centers(g: Graph) -> list[int]:
    """One or two middle vertices of a diametral path."""
    def far(h: Graph, s: int) -> tuple[int, list[int]]:
        parent = [-2] * h.n
        parent[s] = -1
        dist = [0] * h.n
        best = s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if dist[v] > dist[best] or (dist[v] == dist[best] and v < best):
                best = v
            for u in h.adj[v]:
                if parent[u] == -2:
                    parent[u] = v
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return best, parent

    a, _ = far(g, 0)
    b, parent = far(g, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    d = len(path) - 1
    if d % 2 == 0:
        return [path[d // 2]]
    return sorted((path[d // 2], path[d // 2 + 1]))


def _rooted_canonical_sequence(g: Graph, root: int) -> tuple[int, ...]:
    order = [root]
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[root] = True
    for v in order:
        for u in g.adj[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
    seqs: list[tuple[int, ...] | None] = [None] * g.n
    children: list[list[int]] = [[] for _ in range(g.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    for v in reversed(order):
        kids = sorted((seqs[c] for c in children[v]), reverse=True)
        out = [0]
        for k in kids:
            out.extend(x + 1 for x in k)
        seqs[v] = tuple(out)
    return seqs[root]  # type: ignore[return-value]


def canonical_level_sequence(g: Graph) -> tuple[int, ...]:
    """The canonical (generator-identical) level sequence of a free tree.

    Rooted at whichever center passes the free-canonicality test; both
    centers of a bicentral tree yield the same sequence when both pass.
    """
    from .graph import is_tree

    if not is_tree(g):
        raise ValueError("canonical level sequences are defined for trees")
    if g.n == 1:
        return (0,)
    for root in _tree_centers(g):
        seq = _rooted_canonical_sequence(g, root)
        if _is_free_canonical(seq):
            return seq
    # unreachable for trees; kept as a hard failure rather than silent output
    raise AssertionError("no center produced a canonical sequence")


# ---------------------------------------------------------------------------
# survey pipeline


@dataclass(frozen=True)
class SurveyRecord:
    n: int
    code: tuple[int, ...]
    lambda2: float
    degenerate: bool
    strict: bool
    relaxed: bool
    diametral_pair_count: int
    argmax: tuple[int, ...]
    argmin: tuple[int, ...]

    def csv_row(self) -> str:
        return ",".join(
            (
                str(self.n),
                "-".join(map(str, self.code)),
                format(self.lambda2, ".17g"),
                str(int(self.degenerate)),
                str(int(self.strict)),
                str(int(self.relaxed)),
                ";".join(map(str, self.argmax)),
                ";".join(map(str, self.argmin)),
            )
        )


CSV_HEADER = "n,code,lambda2,degenerate,strict,relaxed,argmax,argmin"


@dataclass(frozen=True)
class SurveyAggregate:
    n: int
    total: int
    degenerate_count: int
    evaluated: int               # total minus degenerate unless included
    strict_failures: int
    relaxed_failures: int
    strict_failure_fraction: float
    relaxed_failure_fraction: float
    include_degenerate: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "degenerate_count": self.degenerate_count,
            "evaluated": self.evaluated,
            "strict_failures": self.strict_failures,
            "relaxed_failures": self.relaxed_failures,
            "strict_failure_fraction": self.strict_failure_fraction,
            "relaxed_failure_fraction": self.relaxed_failure_fraction,
            "include_degenerate": self.include_degenerate,
        }


def analyze_tree(seq: Sequence[int]) -> SurveyRecord:
    """Fiedler pair plus extrema verdicts for one canonical level sequence."""
    g = level_sequence_to_graph(seq)
    pair = fiedler_pair(g)
    verdict = extrema_verdict(g, pair)
    return SurveyRecord(
        n=g.n,
        code=tuple(seq),
        lambda2=pair.lam,
        degenerate=pair.degenerate,
        strict=verdict.strict,
        relaxed=verdict.relaxed,
        diametral_pair_count=len(verdict.diametral_pairs),
        argmax=verdict.argmax,
        argmin=verdict.argmin,
    )


def _survey_chunk(seqs: list[tuple[int, ...]]):
    """Rows plus (count, degenerate, fail counts all / nondegenerate only)."""
    rows = []
    degenerate = 0
    sf_all = rf_all = sf_nd = rf_nd = 0
    for seq in seqs:
        rec = analyze_tree(seq)
        rows.append(rec.csv_row())
        if rec.degenerate:
            degenerate += 1
        if not rec.strict:
            sf_all += 1
            sf_nd += not rec.degenerate
        if not rec.relaxed:
            rf_all += 1
            rf_nd += not rec.degenerate
    return rows, len(seqs), degenerate, sf_all, rf_all, sf_nd, rf_nd


def _chunks(stream: Iterable[tuple[int, ...]], size: int) -> Iterator[list[tuple[int, ...]]]:
    block: list[tuple[int, ...]] = []
    for item in stream:
        block.append(item)
        if len(block) >= size:
            yield block
            block = []
    if block:
        yield block


_CHECKPOINT_KEYS = (
    "total", "degenerate", "sf_all", "rf_all", "sf_nd", "rf_nd"
)


def run_survey(
    n: int,
    parallelism: int = 1,
    out_dir: str | None = None,
    include_degenerate: bool = False,
    checkpoint_every: int = 100_000,
    resume_from: str | None = None,
    chunk_size: int = 1024,
) -> SurveyAggregate:
    """Census of the extrema property over every free tree on n vertices.

    Writes per-tree records as CSV and the aggregate as JSON under
    ``out_dir`` (when given), checkpointing counts plus the last processed
    code every ``checkpoint_every`` trees so long runs can resume via
    ``resume_from``.  The aggregate is identical for any parallelism.
    """
    counts = dict.fromkeys(_CHECKPOINT_KEYS, 0)
    start_after = None
    csv_mode = "w"
    if resume_from is not None:
        with open(resume_from) as fh:
            state = json.load(fh)
        if state["n"] != n:
            raise ValueError("checkpoint belongs to a different n")
        counts = {key: state[key] for key in _CHECKPOINT_KEYS}
        start_after = tuple(state["last_code"])
        csv_mode = "a"

    chunk_iter = _chunks(free_tree_sequences(n, start_after=start_after), chunk_size)

    csv_path = json_path = ckpt_path = None
    csv_file = None
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        csv_path = os.path.join(out_dir, f"survey_n{n}.csv")
        json_path = os.path.join(out_dir, f"survey_n{n}.json")
        ckpt_path = os.path.join(out_dir, f"survey_n{n}.checkpoint.json")
        csv_file = open(csv_path, csv_mode)
        if csv_mode == "w":
            csv_file.write(CSV_HEADER + "\n")

    last_code: tuple[int, ...] | None = start_after
    next_checkpoint = (counts["total"] // checkpoint_every + 1) * checkpoint_every

    def consume(result, chunk):
        nonlocal last_code, next_checkpoint
        rows = result[0]
        for key, value in zip(_CHECKPOINT_KEYS, result[1:]):
            counts[key] += value
        last_code = chunk[-1]
        if csv_file is not None:
            csv_file.write("\n".join(rows) + "\n")
        if ckpt_path is not None and counts["total"] >= next_checkpoint:
            csv_file.flush()
            with open(ckpt_path, "w") as fh:
                json.dump({"n": n, "last_code": list(last_code), **counts}, fh)
            next_checkpoint = (
                counts["total"] // checkpoint_every + 1
            ) * checkpoint_every

    try:
        if parallelism <= 1:
            for chunk in chunk_iter:
                consume(_survey_chunk(chunk), chunk)
        else:
            import multiprocessing as mp

            with mp.Pool(parallelism) as pool:
                # two independent passes over the stream stay in lockstep:
                # the successor function is deterministic and cheap
                meta_iter = _chunks(
                    free_tree_sequences(n, start_after=start_after), chunk_size
                )
                for result in pool.imap(_survey_chunk, chunk_iter, chunksize=1):
                    consume(result, next(meta_iter))
    finally:
        if csv_file is not None:
            csv_file.close()

    total = counts["total"]
    degenerate = counts["degenerate"]
    if include_degenerate:
        evaluated = total
        strict_failures = counts["sf_all"]
        relaxed_failures = counts["rf_all"]
    else:
        evaluated = total - degenerate
        strict_failures = counts["sf_nd"]
        relaxed_failures = counts["rf_nd"]
    agg = SurveyAggregate(
        n=n,
        total=total,
        degenerate_count=degenerate,
        evaluated=evaluated,
        strict_failures=strict_failures,
        relaxed_failures=relaxed_failures,
        strict_failure_fraction=strict_failures / evaluated if evaluated else 0.0,
        relaxed_failure_fraction=relaxed_failures / evaluated if evaluated else 0.0,
        include_degenerate=include_degenerate,
    )
    if json_path is not None:
        from .jsonutil import dumps

        with open(json_path, "w") as fh:
            fh.write(dumps(agg.to_dict()) + "\n")
    return agg
