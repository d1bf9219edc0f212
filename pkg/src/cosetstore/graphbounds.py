"""Combinatorial rate bounds for small explicit graphs.

The storage rate of a graph is sandwiched between the maximum-matching
fraction and the independence-number bound, M/N <= rate <= (N - alpha)/N.
This module materializes Cayley handles as explicit edge lists and
computes both sides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .cosetgraph import CosetGraphHandle, StorageReport
from .errors import CapacityError

MAX_EXPAND_R = 16

DEFAULT_MIS_BUDGET = 2_000_000


class ExplicitGraph:
    """Simple undirected graph: no loops, no duplicate edges."""

    def __init__(self, N: int, edges):
        if N < 0:
            raise ValueError("negative vertex count")
        seen = set()
        adj = [[] for _ in range(N)]
        for u, v in edges:
            if not (0 <= u < N and 0 <= v < N):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        self.N = N
        self.edges = sorted(seen)
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = [sorted(nbrs) for nbrs in adj]

    @property
    def M(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def is_regular(self) -> bool:
        degs = self.degrees()
        return len(set(degs)) <= 1

    def neighbor_masks(self) -> list[int]:
        """Adjacency as Python-int bitsets, one per vertex."""
        return [sum(1 << u for u in nbrs) for nbrs in self.adjacency]


def expand(graph: CosetGraphHandle) -> ExplicitGraph:
    """Explicit loopless edge list of a Cayley handle (0 is dropped)."""
    if graph.r > MAX_EXPAND_R:
        raise CapacityError(f"r = {graph.r} exceeds expansion capacity {MAX_EXPAND_R}")
    N = graph.N
    edges = []
    for s in sorted(graph.nonzero_effective()):
        for x in range(N):
            y = x ^ s
            if x < y:
                edges.append((x, y))
    return ExplicitGraph(N, edges)


def cycle_graph(n: int) -> ExplicitGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return ExplicitGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> ExplicitGraph:
    return ExplicitGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def torus_graph(rows: int, cols: int) -> ExplicitGraph:
    """4-regular discrete torus on rows x cols vertices."""
    if rows < 3 or cols < 3:
        raise ValueError("torus needs both sides >= 3")
    edges = set()
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            for u in (i * cols + (j + 1) % cols, ((i + 1) % rows) * cols + j):
                edges.add((v, u) if v < u else (u, v))
    return ExplicitGraph(rows * cols, sorted(edges))


# -- independent sets --------------------------------------------------------


@dataclass
class IndependentSetResult:
    size: int
    exact: bool
    vertices: tuple[int, ...]
    nodes_explored: int


def _greedy_color_bound(cand: int, masks: list[int]) -> int:
    """Greedy clique-cover size of the candidate set: an upper bound on
    the largest independent subset."""
    colors = 0
    rest = cand
    while rest:
        colors += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v)
            rest &= ~(1 << v)
            # keep only candidates adjacent to v: they may share this class
            avail &= masks[v]
    return colors


def max_independent_set(
    graph: ExplicitGraph, budget: int = DEFAULT_MIS_BUDGET
) -> IndependentSetResult:
    """Largest independent set by branch and bound over vertex bitsets.

    Branches on the highest-degree remaining vertex, pruning with a
    greedy clique-cover bound.  If the node budget runs out the best set
    found so far is returned with exact = False.
    """
    N = graph.N
    masks = graph.neighbor_masks()
    best = 0
    best_set = 0
    nodes = 0
    exhausted = False
    order = sorted(range(N), key=lambda v: (-len(graph.adjacency[v]), v))

    def pick(cand: int) -> int:
        for v in order:
            if (cand >> v) & 1:
                return v
        raise AssertionError("empty candidate set")

    stack = [((1 << N) - 1 if N else 0, 0, 0)]
    while stack:
        cand, cur, cur_size = stack.pop()
        nodes += 1
        if nodes > budget:
            exhausted = True
            break
        if not cand:
            if cur_size > best:
                best, best_set = cur_size, cur
            continue
        if cur_size + _greedy_color_bound(cand, masks) <= best:
            continue
        v = pick(cand)
        # exclude-v branch explored after include-v (LIFO)
        stack.append((cand & ~(1 << v), cur, cur_size))
        stack.append((cand & ~(1 << v) & ~masks[v], cur | (1 << v), cur_size + 1))

    vertices = tuple(v for v in range(N) if (best_set >> v) & 1)
    return IndependentSetResult(
        size=best, exact=not exhausted, vertices=vertices, nodes_explored=nodes
    )


def max_matching(graph: ExplicitGraph) -> int:
    """Exact maximum matching size (general graphs, blossom algorithm)."""
    if graph.N > 1 << 12:
        raise CapacityError(f"N = {graph.N} exceeds matching capacity {1 << 12}")
    g = nx.Graph()
    g.add_nodes_from(range(graph.N))
    g.add_edges_from(graph.edges)
    return len(nx.max_weight_matching(g, maxcardinality=True))


@dataclass
class VcBounds:
    N: int
    matching: int
    alpha: int
    alpha_exact: bool
    rate: Fraction
    lower: Fraction
    upper: Fraction
    passes: bool

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "matching": self.matching,
            "alpha": self.alpha,
            "alpha_exact": self.alpha_exact,
            "rate": f"{self.rate.numerator}/{self.rate.denominator}",
            "lower": f"{self.lower.numerator}/{self.lower.denominator}",
            "upper": f"{self.upper.numerator}/{self.upper.denominator}",
            "pass": self.passes,
        }


def vc_bounds(
    graph: ExplicitGraph,
    report: StorageReport,
    mis_budget: int = DEFAULT_MIS_BUDGET,
) -> VcBounds:
    """Check M/N <= rate <= (N - alpha)/N with exact rationals.

    When the independent-set search exhausts its budget, alpha is only a
    lower bound, so the upper rate bound may be conservative; that case
    is flagged via alpha_exact.
    """
    if graph.N != report.N:
        raise ValueError("graph and report disagree on N")
    m = max_matching(graph)
    mis = max_independent_set(graph, budget=mis_budget)
    lower = Fraction(m, graph.N)
    upper = Fraction(graph.N - mis.size, graph.N)
    passes = lower <= report.rate and (report.rate <= upper if mis.exact else True)
    return VcBounds(
        N=graph.N,
        matching=m,
        alpha=mis.size,
        alpha_exact=mis.exact,
        rate=report.rate,
        lower=lower,
        upper=upper,
        passes=passes,
    )


# -- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str) -> ExplicitGraph:
    """Parse the shared format: header 'N M', then M lines 'u v'."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("header must be 'N M'")
    N, M = int(header[0]), int(header[1])
    if len(lines) - 1 != M:
        raise ValueError(f"expected {M} edges, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return ExplicitGraph(N, edges)


def format_edge_list(graph: ExplicitGraph) -> str:
    lines = [f"{graph.N} {graph.M}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
