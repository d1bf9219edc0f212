"""Erasure recovery on d-regular graphs by iterative peeling.

Each vertex of a d-regular graph stores the symbols of its incident
edges; a vertex whose local code corrects t erasures can be rebuilt
whenever at most t of its neighbors are also erased.  This module
implements the peeling process, the spectral recovery threshold
t/d - lambda/d, Monte Carlo estimation of the percolation point p_c,
and a concrete single-parity symbol-level round trip.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from .errors import IntegrityError
from .graphbounds import ExplicitGraph

WILSON_Z = 1.959963984540054  # two-sided 95%

PC_BRACKET_WIDTH = 0.01
PC_MAX_LEVELS = 12


@dataclass(frozen=True)
class EdgeVertexCode:
    """d-regular graph with a local code correcting t erasures per vertex.

    local_mode 'combinatorial' models recovery purely by erased-neighbor
    counting; 'single_parity' (t = 1 only) carries actual symbols, one
    per incident edge plus a parity symbol.

    A local threshold of t = 0 corrects nothing: peeling performs no
    recovery and any nonempty erased set is stuck.
    """

    graph: ExplicitGraph
    d: int
    t: int
    local_mode: str = "combinatorial"

    def __post_init__(self):
        degs = self.graph.degrees()
        if any(deg != self.d for deg in degs):
            raise ValueError("graph is not d-regular")
        if not 0 <= self.t < self.d:
            raise ValueError("need 0 <= t < d")
        if self.local_mode not in ("combinatorial", "single_parity"):
            raise ValueError(f"unknown local_mode {self.local_mode!r}")
        if self.local_mode == "single_parity" and self.t != 1:
            raise ValueError("single_parity mode requires t = 1")

    @property
    def N(self) -> int:
        return self.graph.N


@dataclass
class PeelingState:
    erased: frozenset[int]
    recovered_order: list[tuple[int, int]] = field(default_factory=list)
    stuck: bool = False

    @property
    def success(self) -> bool:
        return not self.erased


def peel(code: EdgeVertexCode, erased, order=None) -> PeelingState:
    """Run the peeling process to completion.

    Repeatedly recovers any erased vertex with at most t erased
    neighbors (none when t = 0).  The final erased set is independent of
    processing order; `order` only permutes the recovery trace and
    exists for confluence testing.
    """
    erased = set(erased)
    for v in erased:
        if not 0 <= v < code.N:
            raise ValueError(f"vertex {v} out of range")
    state = PeelingState(erased=frozenset())
    if code.t == 0:
        state.erased = frozenset(erased)
        state.stuck = bool(erased)
        return state

    adj = code.graph.adjacency
    counts = {v: sum(1 for u in adj[v] if u in erased) for v in erased}
    queue = [v for v in sorted(erased) if counts[v] <= code.t]
    if order is not None:
        queue = [queue[i] for i in order.permutation(len(queue))]
    queued = set(queue)
    step = 0
    while queue:
        v = queue.pop()
        if v not in erased:
            continue
        step += 1
        erased.discard(v)
        state.recovered_order.append((v, step))
        for u in adj[v]:
            if u in erased:
                counts[u] -= 1
                if counts[u] <= code.t and u not in queued:
                    queue.append(u)
                    queued.add(u)
    state.erased = frozenset(erased)
    state.stuck = bool(erased)
    return state


def mixing_threshold(code: EdgeVertexCode, lam: int) -> Fraction:
    """Guaranteed-recoverable erased fraction (t - lambda)/d, possibly <= 0."""
    if lam < 0:
        raise ValueError("second eigenvalue must be non-negative")
    return Fraction(code.t - lam, code.d)


def explicit_second_eigenvalue(graph: ExplicitGraph) -> float:
    """max |eigenvalue| of the adjacency matrix excluding the largest."""
    if graph.N > 1 << 12:
        raise ValueError(f"dense eigensolver limited to N <= {1 << 12}")
    a = np.zeros((graph.N, graph.N))
    for u, v in graph.edges:
        a[u, v] = a[v, u] = 1.0
    vals = np.linalg.eigvalsh(a)
    if vals.size < 2:
        return 0.0
    return float(max(abs(vals[0]), abs(vals[-2])))


@dataclass
class MixingVerdict:
    threshold: Fraction
    set_size: int
    exhaustive: bool
    total_checked: int
    failures: int
    counterexample: tuple[int, ...] | None
    seed: int | None

    @property
    def passes(self) -> bool:
        return self.failures == 0


def verify_mixing_guarantee(
    code: EdgeVertexCode,
    lam: int,
    trials: int = 200,
    seed: int = 0,
    exhaustive_max_n: int = 20,
) -> MixingVerdict:
    """Check that every erased set of size <= floor(threshold * N) peels.

    Exhaustive over all qualifying sets when N <= exhaustive_max_n,
    otherwise `trials` uniform random sets of the maximum size.
    """
    sigma = mixing_threshold(code, lam)
    if sigma <= 0:
        raise ValueError("threshold is not positive; nothing to verify")
    size = math.floor(sigma * code.N)
    failures = 0
    counterexample = None
    total = 0
    if code.N <= exhaustive_max_n:
        for s in range(size + 1):
            for combo in itertools.combinations(range(code.N), s):
                total += 1
                if not peel(code, combo).success:
                    failures += 1
                    if counterexample is None:
                        counterexample = combo
        return MixingVerdict(sigma, size, True, total, failures, counterexample, None)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        combo = tuple(sorted(rng.choice(code.N, size=size, replace=False).tolist()))
        total += 1
        if not peel(code, combo).success:
            failures += 1
            if counterexample is None:
                counterexample = combo
    return MixingVerdict(sigma, size, False, total, failures, counterexample, seed)


# -- percolation point -------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """95% score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


@dataclass
class PcPoint:
    p: float
    trials: int
    successes: int
    wilson_low: float
    wilson_high: float

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials


@dataclass
class PcEstimate:
    p_low: float
    p_high: float
    curve: list[PcPoint]
    seed: int
    trials_per_point: int
    degenerate: str | None = None  # 'all_fail' | 'all_succeed' | None

    @property
    def estimate(self) -> float | None:
        if self.degenerate is not None:
            return None
        return 0.5 * (self.p_low + self.p_high)

    def curve_csv(self) -> str:
        lines = ["p,trials,successes,p_hat,wilson_low,wilson_high"]
        for pt in sorted(self.curve, key=lambda q: q.p):
            lines.append(
                f"{pt.p:.6f},{pt.trials},{pt.successes},"
                f"{pt.p_hat:.6f},{pt.wilson_low:.6f},{pt.wilson_high:.6f}"
            )
        return "\n".join(lines) + "\n"


def _trial_rng(seed: int, point_key: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(point_key, trial))
    return np.random.default_rng(ss)


def success_probability(
    code: EdgeVertexCode, p: float, trials: int, seed: int
) -> PcPoint:
    """Fraction of trials where all non-functional vertices peel back.

    Each vertex is independently functional with probability p; the
    trial succeeds when peeling recovers every erased vertex.  Each
    trial draws from its own deterministic stream, so results do not
    depend on evaluation order.
    """
    point_key = int(round(p * (1 << 30)))
    successes = 0
    N = code.N
    for trial in range(trials):
        rng = _trial_rng(seed, point_key, trial)
        functional = rng.random(N) < p
        erased = np.nonzero(~functional)[0].tolist()
        if not erased:
            successes += 1
        elif code.t > 0 and peel(code, erased).success:
            successes += 1
    lo, hi = wilson_interval(successes, trials)
    return PcPoint(p=p, trials=trials, successes=successes, wilson_low=lo, wilson_high=hi)


def estimate_pc(
    code: EdgeVertexCode, trials_per_point: int = 1000, seed: int = 0
) -> PcEstimate:
    """Bisection estimate of the p where success probability crosses 1/2.

    Stops when the bracket is narrower than 0.01 or after 12 levels.
    Flat curves (never crossing 1/2 on [0, 1]) are reported as
    degenerate instead of a bracket.
    """
    if trials_per_point < 100:
        raise ValueError("need at least 100 trials per point")
    curve: list[PcPoint] = []

    def eval_point(p: float) -> PcPoint:
        pt = success_probability(code, p, trials_per_point, seed)
        curve.append(pt)
        return pt

    low_pt = eval_point(0.0)
    high_pt = eval_point(1.0)
    if low_pt.p_hat >= 0.5:
        return PcEstimate(0.0, 0.0, curve, seed, trials_per_point, "all_succeed")
    if high_pt.p_hat < 0.5:
        return PcEstimate(1.0, 1.0, curve, seed, trials_per_point, "all_fail")
    lo, hi = 0.0, 1.0
    for _ in range(PC_MAX_LEVELS):
        if hi - lo < PC_BRACKET_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        pt = eval_point(mid)
        if pt.p_hat >= 0.5:
            hi = mid
        else:
            lo = mid
    return PcEstimate(lo, hi, curve, seed, trials_per_point)


# -- symbol-level single-parity round trip -----------------------------------


@dataclass
class RoundTripResult:
    success: bool
    symbols: dict[int, tuple[int, ...]]
    peeling: PeelingState


def random_parity_edge_values(code: EdgeVertexCode, seed: int = 0) -> dict:
    """Random byte edge assignment with even XOR parity at every vertex.

    Built by zero-filling, then adding random byte multiples of cycle
    indicators (each cycle touches every vertex an even number of
    times), so all per-vertex parity constraints stay satisfied.
    """
    rng = np.random.default_rng(seed)
    values = {e: 0 for e in code.graph.edges}
    g = nx.Graph(code.graph.edges)
    for cyc in nx.cycle_basis(g):
        b = int(rng.integers(256))
        for i in range(len(cyc)):
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            values[(min(u, v), max(u, v))] ^= b
    return values


def symbol_roundtrip(code: EdgeVertexCode, edge_values: dict, erased) -> RoundTripResult:
    """Erase vertex symbols and rebuild them by single-parity peeling.

    Every vertex stores the byte values of its incident edges, subject
    to the per-vertex single-parity constraint that they XOR to zero;
    that constraint is what lets a vertex with at most one erased
    neighbor restore its one unknown edge after copying the shared ones
    from surviving neighbors.

    edge_values maps each edge (u, v), u < v, to a byte, or to a pair
    (copy held at u, copy held at v).  Disagreeing surviving copies
    raise IntegrityError; assignments violating a parity constraint at
    a surviving vertex raise ValueError.
    """
    if code.local_mode != "single_parity":
        raise ValueError("symbol round trip requires single_parity mode")
    erased = set(erased)
    for v in erased:
        if not 0 <= v < code.N:
            raise ValueError(f"vertex {v} out of range")
    adj = code.graph.adjacency

    copies: dict[tuple[int, int], dict[int, int]] = {}
    for (u, v), x in edge_values.items():
        key = (min(u, v), max(u, v))
        pair = x if isinstance(x, tuple) else (x, x)
        copies[key] = {key[0]: pair[0], key[1]: pair[1]}
    for u, v in code.graph.edges:
        if (u, v) not in copies:
            raise ValueError(f"missing value for edge ({u}, {v})")
        for x in copies[(u, v)].values():
            if not 0 <= x < 256:
                raise ValueError("edge values must be bytes (0..255)")

    known: dict[tuple[int, int], int] = {}
    for (u, v), held in copies.items():
        alive = [held[w] for w in (u, v) if w not in erased]
        if len(alive) == 2 and alive[0] != alive[1]:
            raise IntegrityError(f"edge ({u}, {v}) copies disagree")
        if alive:
            known[(u, v)] = alive[0]

    def symbol(v: int, source) -> tuple[int, ...]:
        return tuple(source[(min(u, v), max(u, v))] for u in adj[v])

    full = {e: held[e[0]] for e, held in copies.items()}
    original = {v: symbol(v, full) for v in range(code.N)}
    for v in range(code.N):
        if v not in erased:
            acc = 0
            for x in original[v]:
                acc ^= x
            if acc != 0:
                raise ValueError(f"parity constraint violated at vertex {v}")

    state = peel(code, erased)
    for v, _ in state.recovered_order:
        acc = 0
        missing = None
        for u in adj[v]:
            e = (min(u, v), max(u, v))
            if e in known:
                acc ^= known[e]
            elif missing is not None:
                raise AssertionError("peeling order left two unknown edges")
            else:
                missing = e
        if missing is not None:
            known[missing] = acc  # parity closes the last unknown edge
    if state.success:
        rebuilt = {v: symbol(v, known) for v in range(code.N)}
        ok = all(rebuilt[v] == original[v] for v in range(code.N))
    else:
        rebuilt = {v: original[v] for v in range(code.N) if v not in state.erased}
        ok = False
    return RoundTripResult(success=ok, symbols=rebuilt, peeling=state)
