"""Two-stage hierarchical scale-free graph generation from (N, M, d_max).

Stage 1 parses the node budget into star substructures whose anchor degrees
follow the configured degree model. Stage 2 first bridges the substructures
into one component, then densifies by sampling node pairs from a selection
probability list that mixes preferential attachment (substructure size share)
with the probability of each node's next degree under the model. Two controls
bound tolerance for exotic structures: the hard per-node degree cap d_max and
the truncation threshold k on stage-1 anchor degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import DegreeModel, model_pmf, sample_degrees, truncation_k
from .errors import ExhaustedCapacityError, InvalidConfigError
from .graph import Graph


@dataclass(frozen=True)
class GeneratorConfig:
    """Inputs and policy flags for one generation run.

    n, m, d_max are the only structural facts about the target; everything
    else is method policy. degree_model=None means Poisson(2m/n).
    """

    n: int
    m: int
    d_max: int
    degree_model: DegreeModel | None = None
    use_truncation_k: bool = True
    use_dmax_limit: bool = True
    seed: int = 0
    batch_halving: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise InvalidConfigError(f"need n >= 2, got n={self.n}")
        if not (1 <= self.d_max <= self.n - 1):
            raise InvalidConfigError(
                f"d_max={self.d_max} outside 1..{self.n - 1} for n={self.n}"
            )
        if self.m < self.n - 1:
            raise InvalidConfigError(
                f"m={self.m} below connectivity floor n-1={self.n - 1}"
            )
        cap = self.n * (self.n - 1) // 2
        if self.m > cap:
            raise InvalidConfigError(f"m={self.m} exceeds simple-graph cap {cap}")
        if self.use_dmax_limit and self.m > self.n * self.d_max // 2:
            raise InvalidConfigError(
                f"m={self.m} exceeds degree budget n*d_max/2={self.n * self.d_max // 2}"
            )

    @property
    def avg_degree(self) -> float:
        return 2.0 * self.m / self.n

    @property
    def model(self) -> DegreeModel:
        return self.degree_model or DegreeModel.poisson(self.avg_degree)


@dataclass(frozen=True)
class SubstructureSet:
    """Stage-1 output: the anchor degree sequence and node layout.

    Substructure i owns the contiguous node block
    node_offsets[i] .. node_offsets[i+1]-1; the anchor sits at the block
    start and has degree anchor_degrees[i] within its star.
    """

    anchor_degrees: tuple[int, ...]
    node_offsets: np.ndarray = field(repr=False)

    @property
    def substructure_count(self) -> int:
        return len(self.anchor_degrees)

    @property
    def n(self) -> int:
        return int(self.node_offsets[-1])


class EntryList:
    """Per-substructure node degree table driving selection probabilities.

    Entry (i, j) is node node_offsets[i] + j; j = 0 is the anchor. Degrees
    mutate as edges land; the masking state is derived from them on demand:

    - a non-anchor is masked once its degree reaches d_max;
    - an anchor is masked while its substructure still holds an active
      non-anchor, and permanently once its own degree reaches d_max;
    - a substructure whose entries are all masked is saturated.

    Masking only applies while the d_max limit is enforced.
    """

    def __init__(self, subs: SubstructureSet, cfg: GeneratorConfig):
        n = cfg.n
        offsets = np.asarray(subs.node_offsets, dtype=np.int64)
        sizes = np.diff(offsets)
        degrees = np.ones(n, dtype=np.int64)
        degrees[offsets[:-1]] = subs.anchor_degrees
        self.offsets = offsets
        self.sizes = sizes
        self.degrees = degrees
        self.is_anchor = np.zeros(n, dtype=bool)
        self.is_anchor[offsets[:-1]] = True
        self.s_sub_per_node = np.repeat(sizes / n, sizes)
        self.sub_index = np.repeat(np.arange(len(sizes)), sizes)
        self.entry_offset = np.arange(n) - offsets[self.sub_index]
        self.d_max = cfg.d_max
        self.enforce_dmax = cfg.use_dmax_limit

    @property
    def substructure_count(self) -> int:
        return len(self.sizes)

    def row(self, i: int) -> np.ndarray:
        return self.degrees[self.offsets[i] : self.offsets[i + 1]]

    def substructure_of(self, node: int) -> int:
        return int(np.searchsorted(self.offsets, node, side="right") - 1)

    def active_mask(self) -> np.ndarray:
        """Boolean selectability per node under the masking rules above."""
        if not self.enforce_dmax:
            return np.ones(len(self.degrees), dtype=bool)
        below_cap = self.degrees < self.d_max
        mask = below_cap & ~self.is_anchor
        active_non_anchors = np.add.reduceat(mask.astype(np.int64), self.offsets[:-1])
        anchor_pos = self.offsets[:-1]
        mask[anchor_pos] = below_cap[anchor_pos] & (active_non_anchors == 0)
        return mask

    def bump(self, node: int) -> None:
        self.degrees[node] += 1


@dataclass(frozen=True)
class ProbabilityList:
    """Flat normalized selection weights with the parallel (i, j) index map.

    Entry order equals node order, so weights[u] is node u's probability.
    Masked entries carry exactly 0.0.
    """

    weights: np.ndarray
    nlist: np.ndarray  # (n, 2) rows of (substructure, entry) indices

    @property
    def active_count(self) -> int:
        return int(np.count_nonzero(self.weights))


def _selection_weights(entries: EntryList, cfg: GeneratorConfig) -> np.ndarray:
    """Unnormalized per-node weights s_sub * P(degree + 1) before masking."""
    return entries.s_sub_per_node * model_pmf(cfg.model, entries.degrees + 1)


def build_probability_list(
    entries: EntryList, cfg: GeneratorConfig, observer=None
) -> ProbabilityList:
    """Normalized selection probabilities over the currently active entries."""
    weights = np.where(entries.active_mask(), _selection_weights(entries, cfg), 0.0)
    total = weights.sum()
    if not total > 0.0:
        raise ExhaustedCapacityError("all entries are masked or weightless")
    weights = weights / total
    nlist = np.column_stack((entries.sub_index, entries.entry_offset))
    plist = ProbabilityList(weights=weights, nlist=nlist)
    if observer is not None:
        observer(plist, entries)
    return plist


def _stage1_cap(cfg: GeneratorConfig) -> int:
    cap = cfg.n - 1
    if cfg.use_dmax_limit:
        cap = min(cap, cfg.d_max)
    if cfg.use_truncation_k:
        cap = min(cap, truncation_k(cfg.avg_degree) - 1)
    return max(cap, 1)


def parse_stage(cfg: GeneratorConfig, rng: np.random.Generator) -> SubstructureSet:
    """Stage 1: split the node budget into stars led by sampled anchors.

    The first substructure is always the seeded star of degree d_max.
    Sampled degrees are clamped to the d_max / truncation cap (clamping, not
    resampling, keeps the consumed-nodes-per-star expectation at avg+1), and
    the final star is clamped so the node budget lands exactly.
    """
    cap = _stage1_cap(cfg)
    anchors = [cfg.d_max]
    remaining = cfg.n - cfg.d_max - 1
    expected = max(cfg.avg_degree, 0.5)
    while remaining > 0:
        est = int(remaining / (expected + 1.0)) + 8
        for d in sample_degrees(cfg.model, rng, cfg.n - 1, min(est, 8192)).tolist():
            d = min(int(d), cap)
            if d + 1 > remaining:
                d = remaining - 1
            anchors.append(d)
            remaining -= d + 1
            if remaining <= 0:
                break
    offsets = np.zeros(len(anchors) + 1, dtype=np.int64)
    np.cumsum(np.asarray(anchors, dtype=np.int64) + 1, out=offsets[1:])
    return SubstructureSet(anchor_degrees=tuple(anchors), node_offsets=offsets)


def star_edges(subs: SubstructureSet) -> list[tuple[int, int]]:
    """Edges of the stage-1 stars: each anchor to every node of its block."""
    edges = []
    offsets = subs.node_offsets
    for i, d in enumerate(subs.anchor_degrees):
        a = int(offsets[i])
        edges.extend((a, a + j) for j in range(1, d + 1))
    return edges


def _pick_bridge_source(entries: EntryList, i: int, rng: np.random.Generator) -> int:
    """Node of substructure i that will carry its outgoing bridge."""
    lo, hi = int(entries.offsets[i]), int(entries.offsets[i + 1])
    mask = entries.active_mask()
    candidates = [u for u in range(lo + 1, hi) if mask[u]]
    if candidates:
        return int(candidates[int(rng.integers(len(candidates)))])
    if not entries.enforce_dmax or entries.degrees[lo] < entries.d_max:
        return lo
    fallback = [u for u in range(lo, hi) if entries.degrees[u] < entries.d_max]
    if fallback:
        return int(fallback[int(rng.integers(len(fallback)))])
    raise ExhaustedCapacityError(f"substructure {i} is saturated before bridging")


def _weighted_draw(weights: np.ndarray, rng: np.random.Generator) -> int:
    total = weights.sum()
    cum = np.cumsum(weights)
    idx = int(np.searchsorted(cum, rng.random() * total, side="right"))
    return min(idx, len(weights) - 1)


def connect_stage(
    subs: SubstructureSet,
    entries: EntryList,
    cfg: GeneratorConfig,
    rng: np.random.Generator,
    *,
    plist_observer=None,
) -> list[tuple[int, int]]:
    """Stage 2a: one outgoing bridge per substructure, merging all components.

    Bridge targets are drawn from a freshly built probability list restricted
    to substructures outside the source's current component (outside the
    source substructure once everything is merged), which guarantees the
    stars plus bridges form a connected graph. When the edge budget is
    exactly n-1 (a tree), the seed substructure's own bridge is skipped: the
    remaining l-1 component-merging bridges already connect everything.
    """
    l = subs.substructure_count
    if l <= 1:
        return []
    star_m = cfg.n - l
    skip_seed_bridge = cfg.m - star_m < l  # only possible at m == n - 1

    parent = list(range(l))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    offsets = entries.offsets
    bridge_nbrs: dict[int, set[int]] = {}
    edges: list[tuple[int, int]] = []
    n_comps = l

    for i in range(l):
        if skip_seed_bridge and i == 0:
            continue
        u = _pick_bridge_source(entries, i, rng)
        plist = build_probability_list(entries, cfg, observer=plist_observer)
        weights = plist.weights.copy()
        root = find(i)
        if n_comps > 1:
            excluded = [t for t in range(l) if find(t) == root]
        else:
            excluded = [i]
        for t in excluded:
            weights[offsets[t] : offsets[t + 1]] = 0.0
        for w in bridge_nbrs.get(u, ()):
            weights[w] = 0.0
        if weights.sum() <= 0.0:
            # Priority masking left nothing admissible; fall back to any
            # capacity-bearing node outside the exclusion set.
            weights = _selection_weights(entries, cfg)
            if entries.enforce_dmax:
                weights = np.where(entries.degrees < entries.d_max, weights, 0.0)
            for t in excluded:
                weights[offsets[t] : offsets[t + 1]] = 0.0
            for w in bridge_nbrs.get(u, ()):
                weights[w] = 0.0
            if weights.sum() <= 0.0:
                raise ExhaustedCapacityError(
                    f"no admissible bridge target outside substructure {i}"
                )
        v = _weighted_draw(weights, rng)
        entries.bump(u)
        entries.bump(v)
        bridge_nbrs.setdefault(u, set()).add(v)
        bridge_nbrs.setdefault(v, set()).add(u)
        edges.append((u, v) if u < v else (v, u))
        rv = find(entries.substructure_of(v))
        if rv != root:
            parent[rv] = root
            n_comps -= 1
    return edges


def _rewire_one(
    entries: EntryList,
    cfg: GeneratorConfig,
    rng: np.random.Generator,
    edge_keys: set[int],
    out_edges: list[tuple[int, int]],
    capacity: list[int],
) -> bool:
    """Gain one edge by rewiring when every capacity pair is already linked.

    Only edges added during densify are rewired, so the connected
    stars-plus-bridges backbone is never touched. With two capacity nodes u,
    v (necessarily adjacent here), replacing an edge (x, y) by (u, x) and
    (v, y) nets one edge; with a single capacity node u of slack >= 2,
    replacing (x, y) by (u, x) and (u, y) does the same.
    """
    n = cfg.n
    degrees = entries.degrees

    def linked(a: int, b: int) -> bool:
        return (a * n + b if a < b else b * n + a) in edge_keys

    def apply(x: int, y: int, new_pairs) -> None:
        edge_keys.discard(x * n + y)
        out_edges.remove((x, y))
        degrees[x] -= 1
        degrees[y] -= 1
        for a, b in new_pairs:
            key = (a * n + b) if a < b else (b * n + a)
            edge_keys.add(key)
            out_edges.append((a, b) if a < b else (b, a))
            degrees[a] += 1
            degrees[b] += 1

    start = int(rng.integers(max(len(out_edges), 1)))
    order = list(range(start, len(out_edges))) + list(range(start))

    for ci in range(len(capacity)):
        for cj in range(ci + 1, len(capacity)):
            u, v = capacity[ci], capacity[cj]
            for t in order:
                x, y = out_edges[t]
                if len({x, y, u, v}) < 4:
                    continue
                for a, b in ((x, y), (y, x)):
                    if not linked(u, a) and not linked(v, b):
                        apply(x, y, [(u, a), (v, b)])
                        return True
    for u in capacity:
        if entries.enforce_dmax and entries.d_max - int(degrees[u]) < 2:
            continue
        for t in order:
            x, y = out_edges[t]
            if u in (x, y):
                continue
            if not linked(u, x) and not linked(u, y):
                apply(x, y, [(u, x), (u, y)])
                return True
    return False


def _endgame_fill(
    entries: EntryList,
    cfg: GeneratorConfig,
    rng: np.random.Generator,
    edge_keys: set[int],
    needed: int,
    out_edges: list[tuple[int, int]],
) -> int:
    """Deterministic completion when rejection scans stop making progress.

    Enumerates admissible pairs directly, preferring mask-respecting entries
    and widening to any capacity-bearing node if none pair up; pairs are
    sampled by the product of their selection weights. If every capacity
    pair is already an edge, one rewiring step frees a slot.
    """
    n = cfg.n
    placed = 0
    while placed < needed:
        raw = _selection_weights(entries, cfg)
        active = np.flatnonzero(entries.active_mask())
        if entries.enforce_dmax:
            capacity = np.flatnonzero(entries.degrees < entries.d_max)
        else:
            capacity = np.arange(n)
        pairs: list[tuple[int, int]] = []
        for pool in (active, capacity):
            nodes = pool.tolist()
            pairs = [
                (u, v)
                for ai, u in enumerate(nodes)
                for v in nodes[ai + 1 :]
                if u * n + v not in edge_keys
            ]
            if pairs:
                break
        if not pairs:
            if _rewire_one(entries, cfg, rng, edge_keys, out_edges, capacity.tolist()):
                placed += 1
                continue
            return placed
        pw = np.array([max(raw[u] * raw[v], 0.0) for u, v in pairs])
        total = pw.sum()
        if total <= 0.0:
            choice = int(rng.integers(len(pairs)))
        else:
            choice = _weighted_draw(pw, rng)
        u, v = pairs[choice]
        edge_keys.add(u * n + v)
        out_edges.append((u, v))
        entries.bump(u)
        entries.bump(v)
        placed += 1
    return placed


def densify_stage(
    entries: EntryList,
    current_edges,
    cfg: GeneratorConfig,
    rng: np.random.Generator,
    *,
    scan_observer=None,
    plist_observer=None,
) -> list[tuple[int, int]]:
    """Stage 2b: place the remaining edges by independent endpoint sampling.

    Each scan freezes one probability list and draws candidate pairs from it;
    self-loops, duplicates and (when enforced) d_max-violating picks are
    rejected and redrawn within the scan. With batch halving a scan attempts
    ceil(sM/2) edges before rebuilding, giving roughly log2(M) scans; without
    it the list is rebuilt after every accepted edge.
    """
    n = cfg.n
    remaining = cfg.m - len(current_edges)
    if remaining < 0:
        raise InvalidConfigError("edge budget already exceeded before densify")
    if remaining == 0:
        return []
    edge_keys = {u * n + v for u, v in current_edges}
    degrees = entries.degrees
    enforce = cfg.use_dmax_limit
    d_max = cfg.d_max
    new_edges: list[tuple[int, int]] = []
    scan_idx = 0
    stalls = 0

    while remaining > 0:
        plist = build_probability_list(entries, cfg, observer=plist_observer)
        cum = np.cumsum(plist.weights)
        total = float(cum[-1])
        batch = (remaining + 1) // 2 if cfg.batch_halving else 1
        if scan_observer is not None:
            scan_observer(scan_idx, batch, plist.active_count)
        attempts_cap = 50 * remaining
        # A long rejection run means the frozen list's mass sits on
        # saturated or fully linked nodes; rebuilding redistributes it.
        reject_run_cap = max(256, batch // 4)
        accepted = 0
        attempts = 0
        reject_run = 0
        buf: list[int] = []
        pos = 0
        while accepted < batch and attempts < attempts_cap and reject_run < reject_run_cap:
            if pos + 1 >= len(buf):
                draw = max(128, 4 * (batch - accepted))
                idx = np.minimum(
                    np.searchsorted(cum, rng.random(draw) * total, side="right"),
                    n - 1,
                )
                buf = idx.tolist()
                pos = 0
            u = buf[pos]
            v = buf[pos + 1]
            pos += 2
            attempts += 1
            if u == v:
                reject_run += 1
                continue
            if enforce and (degrees[u] >= d_max or degrees[v] >= d_max):
                reject_run += 1
                continue
            if u > v:
                u, v = v, u
            key = u * n + v
            if key in edge_keys:
                reject_run += 1
                continue
            edge_keys.add(key)
            new_edges.append((u, v))
            degrees[u] += 1
            degrees[v] += 1
            accepted += 1
            reject_run = 0
        remaining -= accepted
        scan_idx += 1
        if accepted == 0:
            stalls += 1
            if stalls >= 2:
                placed = _endgame_fill(entries, cfg, rng, edge_keys, remaining, new_edges)
                remaining -= placed
                if remaining > 0:
                    raise ExhaustedCapacityError(
                        f"{remaining} edges cannot be placed without breaking constraints"
                    )
        else:
            stalls = 0
    return new_edges


def generate(
    cfg: GeneratorConfig,
    *,
    scan_observer=None,
    plist_observer=None,
) -> Graph:
    """Run the full pipeline: parse stars, bridge them, densify to m edges."""
    rng = np.random.default_rng(cfg.seed)
    subs = parse_stage(cfg, rng)
    entries = EntryList(subs, cfg)
    edges = star_edges(subs)
    edges += connect_stage(subs, entries, cfg, rng, plist_observer=plist_observer)
    edges += densify_stage(
        entries,
        edges,
        cfg,
        rng,
        scan_observer=scan_observer,
        plist_observer=plist_observer,
    )
    return Graph(cfg.n, edges)
