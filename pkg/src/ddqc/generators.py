"""Random graph models used to build labeled artificial corpora.

Every generator is a pure function of its parameters and an integer seed;
all randomness flows from one ``numpy.random.Generator`` per call.
"""
from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .errors import ParameterError
from .graph_io import Graph

MODELS = ("BA", "CM", "ER", "FF", "KG", "RP", "WS", "RG")
DEFAULT_N_RANGE = (1000, 5000)
FF_BACKWARD_RATIO = 0.32
WS_REWIRE = 0.5
_BLOCK_ROWS = 256


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _clique_edges(size: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(size) for v in range(u + 1, size)]


def gen_ba(n: int, k: int, seed) -> Graph:
    """Preferential attachment grown from a (k+1)-clique."""
    _require(1 <= k < n, f"BA needs 1 <= k < n, got k={k}, n={n}")
    rng = _rng(seed)
    edges = _clique_edges(k + 1)
    # each node appears once per incident edge
    ends = np.empty(2 * ((k + 1) * k // 2 + (n - k - 1) * k), dtype=np.int64)
    m = 0
    for u, v in edges:
        ends[m], ends[m + 1] = u, v
        m += 2
    for new in range(k + 1, n):
        targets: set[int] = set()
        while len(targets) < k:
            for idx in rng.integers(0, m, size=k - len(targets)):
                targets.add(int(ends[idx]))
                if len(targets) == k:
                    break
        for t in sorted(targets):
            edges.append((t, new))
            ends[m], ends[m + 1] = t, new
            m += 2
    return Graph.from_edges(edges, node_count=n)


def _uniform_distinct(rng: np.random.Generator, upper: int, k: int) -> list[int]:
    return sorted(int(x) for x in rng.choice(upper, size=k, replace=False))


def gen_copying(n: int, k: int, beta_cm: float, seed) -> Graph:
    """Copying model: uniform targets with prob. beta_cm, else copy a prototype's neighbours."""
    _require(1 <= k < n, f"CM needs 1 <= k < n, got k={k}, n={n}")
    _require(0 < beta_cm < 1, f"CM needs 0 < beta < 1, got {beta_cm}")
    rng = _rng(seed)
    adj: list[list[int]] = [[v for v in range(k + 1) if v != u] for u in range(k + 1)]
    edges = _clique_edges(k + 1)
    for new in range(k + 1, n):
        if rng.random() < beta_cm:
            targets = _uniform_distinct(rng, new, k)
        else:
            proto = int(rng.integers(0, new))
            nbrs = adj[proto]
            if len(nbrs) >= k:
                picks = rng.choice(len(nbrs), size=k, replace=False)
                targets = sorted(nbrs[i] for i in picks)
            else:
                targets = _uniform_distinct(rng, new, k)
        adj.append([])
        for t in targets:
            edges.append((t, new))
            adj[t].append(new)
            adj[new].append(t)
    return Graph.from_edges(edges, node_count=n)


def gen_er(n: int, density: float, seed) -> Graph:
    """G(n, p) with p = density."""
    _require(n >= 1, f"ER needs n >= 1, got {n}")
    _require(0 < density <= 1, f"ER needs 0 < density <= 1, got {density}")
    rng = _rng(seed)
    chunks = []
    for u in range(n - 1):
        width = n - u - 1
        m = rng.binomial(width, density)
        if m:
            vs = u + 1 + rng.choice(width, size=m, replace=False)
            chunks.append(np.column_stack([np.full(m, u), vs]))
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(edges, node_count=n)


def gen_forest_fire(n: int, p: float, pb: float = FF_BACKWARD_RATIO, seed=0) -> Graph:
    """Forest Fire growth, projected to an undirected graph.

    A new node links to a uniform ambassador and burns outward: from every
    burning node it follows a geometric number of unvisited out-links
    (mean p/(1-p)) and in-links (mean pb*p/(1-pb*p)), linking to each.
    """
    _require(n >= 1, f"FF needs n >= 1, got {n}")
    _require(0 <= p < 1, f"FF needs 0 <= p < 1, got {p}")
    _require(0 <= pb < 1, f"FF needs 0 <= pb < 1, got {pb}")
    rng = _rng(seed)
    back = pb * p
    out_links: list[list[int]] = [[] for _ in range(n)]
    in_links: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for new in range(1, n):
        ambassador = int(rng.integers(0, new))
        visited = {ambassador}
        frontier = [ambassador]
        while frontier:
            nxt = []
            for x in frontier:
                n_out = int(rng.geometric(1 - p)) - 1
                n_in = int(rng.geometric(1 - back)) - 1
                for pool, want in ((out_links[x], n_out), (in_links[x], n_in)):
                    if want <= 0:
                        continue
                    cand = [y for y in pool if y not in visited]
                    if len(cand) > want:
                        cand = [cand[i] for i in sorted(rng.choice(len(cand), size=want, replace=False))]
                    for y in cand:
                        visited.add(y)
                        nxt.append(y)
            frontier = nxt
        for t in sorted(visited):
            out_links[new].append(t)
            in_links[t].append(new)
            edges.append((t, new))
    return Graph.from_edges(edges, node_count=n)


def _bernoulli_upper(n: int, prob_rows: Callable[[np.ndarray], np.ndarray], rng) -> np.ndarray:
    """Sample each pair u < v independently, probabilities produced block-wise."""
    chunks = []
    cols = np.arange(n)
    for start in range(0, n, _BLOCK_ROWS):
        rows = np.arange(start, min(start + _BLOCK_ROWS, n))
        probs = prob_rows(rows)
        draw = rng.random(probs.shape)
        hit = (draw < probs) & (cols[None, :] > rows[:, None])
        r, c = np.nonzero(hit)
        chunks.append(np.column_stack([rows[r], c]))
    return np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)


def kronecker_edge_probability(initiator, k_power: int, u, v):
    init = np.asarray(initiator, dtype=float)
    u = np.asarray(u)
    v = np.asarray(v)
    prob = np.ones(np.broadcast(u, v).shape)
    for b in range(k_power):
        prob = prob * init[(u >> b) & 1, (v >> b) & 1]
    return prob


def gen_kronecker(initiator, k_power: int, seed) -> Graph:
    """Stochastic Kronecker graph on 2**k_power nodes."""
    init = np.asarray(initiator, dtype=float)
    _require(init.shape == (2, 2), f"KG initiator must be 2x2, got shape {init.shape}")
    _require(bool(np.all((init >= 0) & (init <= 1))), "KG initiator entries must lie in [0, 1]")
    _require(int(k_power) == k_power and k_power >= 1, f"KG needs integer k_power >= 1, got {k_power}")
    n = 2**k_power
    cols = np.arange(n)
    edges = _bernoulli_upper(
        n, lambda rows: kronecker_edge_probability(init, k_power, rows[:, None], cols[None, :]), _rng(seed)
    )
    return Graph.from_edges(edges, node_count=n)


def powerlaw_weights(n: int, gamma_exp: float, rng) -> np.ndarray:
    return stats.zipf(gamma_exp).rvs(size=n, random_state=rng).astype(float)


def gen_random_powerlaw(n: int, gamma_exp: float, seed) -> Graph:
    """Chung-Lu expected-degree graph with discrete power-law target weights."""
    _require(n >= 1, f"RP needs n >= 1, got {n}")
    _require(gamma_exp > 2, f"RP needs gamma > 2, got {gamma_exp}")
    rng = _rng(seed)
    w = powerlaw_weights(n, gamma_exp, rng)
    total = w.sum()
    edges = _bernoulli_upper(n, lambda rows: np.minimum(1.0, np.outer(w[rows], w) / total), rng)
    return Graph.from_edges(edges, node_count=n)


def gen_ws(n: int, k: int, rewire: float = WS_REWIRE, seed=0) -> Graph:
    """Watts-Strogatz: ring lattice of degree k with per-edge rewiring."""
    _require(k % 2 == 0 and k >= 0, f"WS needs even k >= 0, got {k}")
    _require(k < n, f"WS needs k < n, got k={k}, n={n}")
    _require(0 <= rewire <= 1, f"WS needs 0 <= rewire <= 1, got {rewire}")
    rng = _rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= rewire:
                continue
            if len(adj[u]) >= n - 1:
                continue
            w = int(rng.integers(0, n))
            while w == u or w in adj[u]:
                w = int(rng.integers(0, n))
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(edges, node_count=n)


def gen_regular(n: int, k: int, seed, max_restarts: int = 1000) -> Graph:
    """Uniform-ish random k-regular graph by stub matching with local retries."""
    _require(0 <= k < n, f"RG needs 0 <= k < n, got k={k}, n={n}")
    _require((n * k) % 2 == 0, f"RG needs n*k even, got n={n}, k={k}")
    rng = _rng(seed)
    if k == 0:
        return Graph.from_edges([], node_count=n)
    for _ in range(max_restarts):
        edges = _try_regular(n, k, rng)
        if edges is not None:
            return Graph.from_edges(sorted(edges), node_count=n)
    raise ParameterError(f"could not build a {k}-regular graph on {n} nodes")


def _try_regular(n: int, k: int, rng) -> set | None:
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), k)
    while len(stubs):
        stubs = rng.permutation(stubs)
        leftover: dict[int, int] = defaultdict(int)
        for a, b in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
            if a > b:
                a, b = b, a
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                leftover[a] += 1
                leftover[b] += 1
        if not leftover:
            break
        nodes = sorted(leftover)
        if not any((a, b) not in edges for i, a in enumerate(nodes) for b in nodes[i + 1:]):
            return None
        stubs = np.array([v for v in nodes for _ in range(leftover[v])], dtype=np.int64)
    return edges


# --- model specs and corpora -------------------------------------------------


@dataclass(frozen=True)
class ModelSpec:
    model: str
    params: dict = field(hash=False)
    n_nodes: int
    seed: int

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}; expected one of {MODELS}")

    def params_json(self) -> str:
        return json.dumps(self.params, sort_keys=True)

    def build(self) -> Graph:
        return build_graph(self)


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    label: str
    instance_id: str
    spec: ModelSpec | None = None
    timestamp: str | None = None

    def __post_init__(self):
        if not self.label:
            raise ValueError("label must be non-empty")


def build_graph(spec: ModelSpec) -> Graph:
    p, n, s = spec.params, spec.n_nodes, spec.seed
    match spec.model:
        case "BA":
            return gen_ba(n, p["k"], s)
        case "CM":
            return gen_copying(n, p["k"], p["beta"], s)
        case "ER":
            return gen_er(n, p["density"], s)
        case "FF":
            return gen_forest_fire(n, p["p"], p.get("pb", FF_BACKWARD_RATIO), s)
        case "KG":
            g = gen_kronecker(p["initiator"], p["k_power"], s)
            if g.node_count != n:
                raise ParameterError(f"KG n_nodes={n} must equal 2**k_power={g.node_count}")
            return g
        case "RP":
            return gen_random_powerlaw(n, p["gamma"], s)
        case "WS":
            return gen_ws(n, p["k"], p.get("rewire", WS_REWIRE), s)
        case "RG":
            return gen_regular(n, p["k"], s)
    raise ParameterError(f"unknown model {spec.model!r}")


def _kronecker_powers(n_range) -> list[int]:
    lo, hi = n_range
    powers = [kp for kp in range(1, 31) if lo <= 2**kp <= hi]
    if not powers:
        raise ParameterError(f"no power of two lies in node range {n_range}")
    return powers


def sample_params(model: str, rng: np.random.Generator, n_range=DEFAULT_N_RANGE) -> ModelSpec:
    """Draw a spec uniformly from the artificial-corpus parameter ranges."""
    lo, hi = n_range
    n = int(rng.integers(lo, hi + 1))
    match model:
        case "BA":
            params = {"k": int(rng.integers(1, 11))}
        case "CM":
            beta = 0.0
            while beta == 0.0:
                beta = float(rng.uniform(0, 1))
            params = {"k": int(rng.integers(1, 11)), "beta": beta}
        case "ER":
            params = {"density": float(rng.uniform(0.002, 0.005))}
        case "FF":
            params = {"p": float(rng.uniform(0, 0.3)), "pb": FF_BACKWARD_RATIO}
        case "KG":
            ranges = [[(0.7, 0.9), (0.5, 0.7)], [(0.4, 0.6), (0.2, 0.4)]]
            init = [[float(rng.uniform(a, b)) for a, b in row] for row in ranges]
            k_power = int(rng.choice(_kronecker_powers(n_range)))
            params = {"initiator": init, "k_power": k_power}
            n = 2**k_power
        case "RP":
            g = 2.5
            while g == 2.5:
                g = float(rng.uniform(2.5, 3.0))
            params = {"gamma": g}
        case "WS":
            params = {"k": int(rng.choice([2, 4, 6, 8, 10])), "rewire": WS_REWIRE}
        case "RG":
            k = int(rng.integers(2, 11))
            if (n * k) % 2:
                n = n + 1 if n + 1 <= hi else n - 1
            params = {"k": k}
        case _:
            raise ParameterError(f"unknown model {model!r}; expected one of {MODELS}")
    seed = int(rng.integers(0, 2**63))
    return ModelSpec(model, params, n, seed)


def instance_spec(model: str, index: int, master_seed: int, n_range=DEFAULT_N_RANGE) -> ModelSpec:
    model_idx = MODELS.index(model)
    rng = np.random.default_rng([int(master_seed), model_idx, int(index)])
    return sample_params(model, rng, n_range)


def _build_labeled(spec_and_id: tuple[ModelSpec, str]) -> LabeledGraph:
    spec, instance_id = spec_and_id
    return LabeledGraph(build_graph(spec), spec.model, instance_id, spec)


def generate_dataset(
    models=MODELS,
    per_model: int = 1000,
    master_seed: int = 0,
    n_range=DEFAULT_N_RANGE,
    workers: int | None = None,
) -> list[LabeledGraph]:
    """``per_model`` instances of each model, each with its own derived seed.

    Results are ordered by model then index and do not depend on ``workers``.
    """
    jobs = [
        (instance_spec(m, i, master_seed, n_range), f"{m}_{i:04d}")
        for m in models
        for i in range(per_model)
    ]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_build_labeled, jobs, chunksize=4))
    return [_build_labeled(job) for job in jobs]
