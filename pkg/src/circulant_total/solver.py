"""Exhaustive search for total k-colourings of C_n(1, 3).

The search keeps a candidate bitmask per element (bit c set when colour c is
still allowed), always branches on an undecided element with the fewest
candidates (ties go to the lowest flat id, i.e. vertices first, then step-1
edges, then chords), and backtracks on any empty candidate set.

Propagation after each assignment:

* the colour is removed from the candidates of the 8 conflicting elements;
  an element left with one candidate is assigned in turn;
* when k equals the star size (a vertex plus its incident edges, 5 here),
  every colour must occur exactly once in each star, so a colour with no
  place left in a star is a dead end and a colour with one place is forced.

Symmetry breaking, both sound for the full automorphism x recolouring group:

* ``colour_perm``: at a branch only the colours already in use plus the
  least unused colour are tried. Unused colours are interchangeable in
  every extension of the current partial assignment.
* ``colour_perm_plus_rotation``: additionally the vertex word must be
  minimal, up to recolouring, among its images under the dihedral group of
  the cycle. The test compares first-occurrence relabelings, so it is
  invariant under recolouring and commutes with the rule above. It fires on
  any prefix v_0..v_{L-1} that is fully decided.
"""

from __future__ import annotations

import enum
import hashlib
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from .colouring import TotalColouring, verify
from .graph import CirculantGraph, build

DEFAULT_NODE_LIMIT = 10**9


class SymmetryLevel(str, enum.Enum):
    NONE = "none"
    COLOUR_PERM = "colour_perm"
    COLOUR_PERM_PLUS_ROTATION = "colour_perm_plus_rotation"


class Status(str, enum.Enum):
    FOUND = "Found"
    EXHAUSTED = "ExhaustedNoSolution"
    LIMIT = "LimitReached"


class SearchConfigError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    """A search hit its node limit before deciding."""


@dataclass(frozen=True)
class SearchConfig:
    k: int
    node_limit: int = DEFAULT_NODE_LIMIT
    symmetry_level: SymmetryLevel = SymmetryLevel.COLOUR_PERM
    parity_pruning: bool = False
    worker_count: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "symmetry_level", SymmetryLevel(self.symmetry_level))
        if not 1 <= self.k <= 30:
            raise SearchConfigError(f"k={self.k} out of range")
        if self.node_limit < 0:
            raise SearchConfigError("node_limit must be >= 0 (0 = unlimited)")
        if self.worker_count < 1:
            raise SearchConfigError("worker_count must be positive")

    @property
    def certifiable(self) -> bool:
        return not self.parity_pruning

    def record(self) -> dict:
        # worker_count is excluded: it does not change the outcome
        return {
            "k": self.k,
            "node_limit": self.node_limit,
            "symmetry_level": self.symmetry_level.value,
            "parity_pruning": self.parity_pruning,
        }

    def digest(self, g: CirculantGraph) -> str:
        payload = {"n": g.n, "d1": g.d1, "d2": g.d2, **self.record()}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


@dataclass
class SearchOutcome:
    status: Status
    colouring: TotalColouring | None = None
    nodes_visited: int = 0
    max_depth: int = 0
    wall_time: float = 0.0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


class _Fail(Exception):
    pass


class _Limit(Exception):
    pass


class _Solver:
    def __init__(self, g: CirculantGraph, cfg: SearchConfig) -> None:
        if (g.d1, g.d2) != (1, 3):
            raise SearchConfigError("the solver is restricted to C_n(1,3)")
        self.g = g
        self.cfg = cfg
        self.n = n = g.n
        self.k = k = cfg.k
        self.size = 3 * n
        self.full = ((1 << (k + 1)) - 1) & ~1
        self.conflicts = g.conflict_table
        self.stars = g.stars
        # stars containing each element
        self.star_of: list[tuple[int, ...]] = [() for _ in range(self.size)]
        for v, star in enumerate(self.stars):
            for x in star:
                self.star_of[x] += (v,)
        self.exact_stars = k == len(self.stars[0])
        self.use_colour_sym = cfg.symmetry_level is not SymmetryLevel.NONE
        self.use_rotation = cfg.symmetry_level is SymmetryLevel.COLOUR_PERM_PLUS_ROTATION
        self.use_parity = cfg.parity_pruning and self.exact_stars
        self.popcount = [bin(m).count("1") for m in range(1 << (k + 1))]
        self.bits = [[c for c in range(1, k + 1) if m >> c & 1] for m in range(1 << (k + 1))]
        self.limit = cfg.node_limit or None
        self.nodes = 0
        self.max_depth = 0
        # dihedral images of vertex positions: perm[i] is the vertex read at position i
        self.dihedral = [tuple((r + i) % n for i in range(n)) for r in range(1, n)]
        self.dihedral += [tuple((r - i) % n for i in range(n)) for r in range(n)]

    # -- state: (colours, domains, used) ---------------------------------

    def initial_state(self) -> tuple[list[int], list[int], int]:
        return [0] * self.size, [self.full] * self.size, 0

    def assign(self, colours: list[int], domains: list[int], x: int, c: int) -> int:
        """Assign and propagate to a fixpoint; returns the OR of colours placed."""
        placed = 0
        queue = [(x, c)]
        conflicts, stars, star_of, exact = self.conflicts, self.stars, self.star_of, self.exact_stars
        popcount, bits = self.popcount, self.bits
        while queue:
            x, c = queue.pop()
            cur = colours[x]
            if cur:
                if cur != c:
                    raise _Fail
                continue
            bit = 1 << c
            if not domains[x] & bit:
                raise _Fail
            colours[x] = c
            domains[x] = bit
            placed |= bit
            touched = set(star_of[x]) if exact else None
            for y in conflicts[x]:
                d = domains[y]
                if d & bit:
                    if colours[y]:
                        raise _Fail
                    d &= ~bit
                    domains[y] = d
                    if not d:
                        raise _Fail
                    if popcount[d] == 1:
                        queue.append((y, bits[d][0]))
                    if exact:
                        touched.update(star_of[y])
            if exact:
                full = self.full
                for v in touched:
                    once = twice = 0
                    for y in stars[v]:
                        d = domains[y]
                        twice |= once & d
                        once |= d
                    if once != full:
                        raise _Fail
                    single = once & ~twice
                    if single:
                        for y in stars[v]:
                            if not colours[y] and domains[y] & single:
                                forced = domains[y] & single
                                if popcount[forced] > 1:
                                    raise _Fail
                                queue.append((y, bits[forced][0]))
        return placed

    # -- pruning checks on a propagated state -----------------------------

    def vertex_word_ok(self, colours: list[int]) -> bool:
        n = self.n
        prefix = 0
        while prefix < n and colours[prefix]:
            prefix += 1
        if prefix == 0:
            return True
        own = _relabel(colours, range(prefix))
        for perm in self.dihedral:
            m = 0
            while m < prefix and colours[perm[m]]:
                m += 1
            if m and _relabel(colours, perm[:m]) < own[:m]:
                return False
        return True

    def parity_ok(self, colours: list[int], domains: list[int]) -> bool:
        n = self.n
        for c in range(1, self.k + 1):
            bit = 1 << c
            fixed = sum(1 for v in range(n) if colours[v] == c)
            if fixed % 2 != n % 2 and not any(not colours[v] and domains[v] & bit for v in range(n)):
                return False
        return True

    def state_ok(self, colours: list[int], domains: list[int]) -> bool:
        if self.use_rotation and not self.vertex_word_ok(colours):
            return False
        if self.use_parity and not self.parity_ok(colours, domains):
            return False
        return True

    # -- branching ---------------------------------------------------------

    def pick(self, colours: list[int], domains: list[int]) -> int:
        best, best_size = -1, 99
        popcount = self.popcount
        for x in range(self.size):
            if not colours[x]:
                s = popcount[domains[x]]
                if s < best_size:
                    best, best_size = x, s
                    # singletons are assigned during propagation, so 2 is minimal
                    if s <= 2:
                        break
        return best

    def children(self, state, depth: int):
        """Yield propagated child states in branching order."""
        colours, domains, used = state
        x = self.pick(colours, domains)
        options = domains[x]
        if self.use_colour_sym:
            unused = self.full & ~used
            if unused:
                options &= used | (unused & -unused)
        for c in self.bits[options]:
            self.nodes += 1
            if self.limit is not None and self.nodes > self.limit:
                raise _Limit
            if depth + 1 > self.max_depth:
                self.max_depth = depth + 1
            cs, ds = colours[:], domains[:]
            try:
                placed = self.assign(cs, ds, x, c)
            except _Fail:
                continue
            if self.state_ok(cs, ds):
                yield (cs, ds, used | placed)

    def dfs(self, state, depth: int):
        colours = state[0]
        if 0 not in colours:
            return colours
        for child in self.children(state, depth):
            found = self.dfs(child, depth + 1)
            if found is not None:
                return found
        return None

    def split(self, state, depth: int, cut: int) -> list[tuple]:
        """DFS down to depth ``cut``; the frontier in preorder.

        Each item is (state, depth, nodes_before, max_depth_before), the last
        two being the counters a sequential search would show on entering
        that subtree. The split ignores the node limit.
        """
        limit, self.limit = self.limit, None
        out: list[tuple] = []

        def walk(st, d):
            if d == cut or 0 not in st[0]:
                out.append((st, d, self.nodes, self.max_depth))
                return
            for child in self.children(st, d):
                walk(child, d + 1)

        try:
            walk(state, depth)
        finally:
            self.limit = limit
        return out


def _relabel(colours: list[int], positions) -> list[int]:
    seen: dict[int, int] = {}
    return [seen.setdefault(colours[p], len(seen) + 1) for p in positions]


def _finish(solver: _Solver, colours: list[int] | None, status: Status, t0: float) -> SearchOutcome:
    colouring = None
    if colours is not None:
        colouring = TotalColouring.from_flat(solver.n, solver.k, colours)
        report = verify(solver.g, colouring)
        if not report.ok:
            raise AssertionError(f"solver produced an improper colouring:\n{report}")
    return SearchOutcome(status, colouring, solver.nodes, solver.max_depth, time.perf_counter() - t0)


def _root(solver: _Solver):
    state = solver.initial_state()
    return state if solver.state_ok(state[0], state[1]) else None


def _search_sequential(g: CirculantGraph, cfg: SearchConfig) -> SearchOutcome:
    t0 = time.perf_counter()
    solver = _Solver(g, cfg)
    root = _root(solver)
    try:
        found = solver.dfs(root, 0) if root is not None else None
    except _Limit:
        solver.nodes = cfg.node_limit
        return _finish(solver, None, Status.LIMIT, t0)
    return _finish(solver, found, Status.FOUND if found else Status.EXHAUSTED, t0)


# -- worker pool ------------------------------------------------------------

_stop_below = None


def _init_worker(flag) -> None:
    global _stop_below
    _stop_below = flag


def _run_subtree(args):
    """Search one frontier subtree; returns (index, status, colours, nodes, max_depth)."""
    index, n, cfg, state, depth = args
    if _stop_below is not None and _stop_below.value < index:
        return index, None, None, 0, 0
    solver = _Solver(build(n), cfg)
    solver.max_depth = depth
    try:
        found = solver.dfs(state, depth)
    except _Limit:
        return index, Status.LIMIT, None, solver.nodes, solver.max_depth
    if found is not None and _stop_below is not None:
        with _stop_below.get_lock():
            _stop_below.value = min(_stop_below.value, index)
    status = Status.FOUND if found is not None else Status.EXHAUSTED
    return index, status, found, solver.nodes, solver.max_depth


def _search_parallel(g: CirculantGraph, cfg: SearchConfig) -> SearchOutcome:
    t0 = time.perf_counter()
    solver = _Solver(g, cfg)
    root = _root(solver)
    if root is None:
        return _finish(solver, None, Status.EXHAUSTED, t0)
    target = 4 * cfg.worker_count
    cut = 1
    while True:
        solver.nodes = solver.max_depth = 0
        frontier = solver.split(root, 0, cut)
        if len(frontier) >= target or cut >= solver.size:
            break
        cut += 1
    split_nodes, split_depth = solver.nodes, solver.max_depth
    limit = solver.limit

    def settle(status: Status, colours, nodes: int, depth: int) -> SearchOutcome:
        # the limit is judged on the count a sequential run would reach
        solver.nodes, solver.max_depth = nodes, depth
        if limit is not None and nodes > limit:
            solver.nodes = limit
            return _finish(solver, None, Status.LIMIT, t0)
        return _finish(solver, colours, status, t0)

    ctx = multiprocessing.get_context()
    flag = ctx.Value("q", len(frontier))
    jobs = [(i, g.n, cfg, st, d) for i, (st, d, _, _) in enumerate(frontier) if 0 in st[0]]
    subtree_nodes = 0
    deepest = 0
    with ProcessPoolExecutor(cfg.worker_count, mp_context=ctx, initializer=_init_worker, initargs=(flag,)) as pool:
        pending = iter(pool.map(_run_subtree, jobs))
        # walk subtrees in DFS order, exactly as the sequential search would
        for i, (st, d, before, depth_before) in enumerate(frontier):
            offset = before + subtree_nodes
            depth_so_far = max(depth_before, deepest)
            if 0 not in st[0]:
                pool.shutdown(cancel_futures=True)
                return settle(Status.FOUND, st[0], offset, depth_so_far)
            index, status, found, nodes, depth = next(pending)
            assert index == i
            subtree_nodes += nodes
            deepest = max(deepest, depth)
            if status is Status.LIMIT:
                pool.shutdown(cancel_futures=True)
                return settle(Status.LIMIT, None, offset + nodes + limit, depth)
            if status is Status.FOUND:
                pool.shutdown(cancel_futures=True)
                return settle(Status.FOUND, found, offset + nodes, max(depth_so_far, depth))
    return settle(Status.EXHAUSTED, None, split_nodes + subtree_nodes, max(split_depth, deepest))


def search_total_colouring(g: CirculantGraph, cfg: SearchConfig) -> SearchOutcome:
    if cfg.worker_count > 1:
        return _search_parallel(g, cfg)
    return _search_sequential(g, cfg)


# -- certificates -------------------------------------------------------------


@dataclass
class Certificate:
    """Archivable record of one search; ``recheck`` replays it."""

    n: int
    k: int
    config: dict
    config_digest: str
    status: Status
    nodes_visited: int
    max_depth: int
    wall_time: float
    version: str = __version__
    colouring: dict | None = field(default=None)

    @classmethod
    def from_outcome(cls, g: CirculantGraph, cfg: SearchConfig, outcome: SearchOutcome) -> "Certificate":
        return cls(
            n=g.n,
            k=cfg.k,
            config=cfg.record(),
            config_digest=cfg.digest(g),
            status=outcome.status,
            nodes_visited=outcome.nodes_visited,
            max_depth=outcome.max_depth,
            wall_time=round(outcome.wall_time, 6),
            colouring=outcome.colouring.to_record() if outcome.colouring else None,
        )

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["status"] = self.status.value
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2) + "\n"

    @classmethod
    def from_record(cls, rec: dict) -> "Certificate":
        rec = dict(rec)
        rec["status"] = Status(rec["status"])
        return cls(**rec)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_record(json.loads(text))

    def search_config(self, worker_count: int = 1) -> SearchConfig:
        return SearchConfig(worker_count=worker_count, **self.config)

    def problems(self) -> list[str]:
        """Static checks that need no search: digest, flags and the witness."""
        out = []
        g = build(self.n)
        cfg = self.search_config()
        if cfg.k != self.k:
            out.append("k does not match the recorded config")
        if cfg.digest(g) != self.config_digest:
            out.append("config digest mismatch")
        if not cfg.certifiable:
            out.append("parity pruning was enabled; not a certificate")
        if self.status is Status.FOUND:
            if self.colouring is None:
                out.append("Found without a colouring")
            else:
                c = TotalColouring.from_record(self.colouring)
                if c.n != self.n or c.k != self.k:
                    out.append("witness has the wrong size or palette")
                elif not verify(g, c).ok:
                    out.append("witness colouring is improper")
        elif self.colouring is not None:
            out.append(f"{self.status.value} with a colouring attached")
        return out

    def recheck(self, worker_count: int = 1) -> list[str]:
        """Static checks plus a fresh search that must reproduce the outcome."""
        out = self.problems()
        outcome = search_total_colouring(build(self.n), self.search_config(worker_count))
        if outcome.status is not self.status:
            out.append(f"replay status {outcome.status.value} != recorded {self.status.value}")
        elif self.status is Status.FOUND and outcome.colouring.to_record() != self.colouring:
            out.append("replay found a different first solution")
        if worker_count == 1 and outcome.status is self.status and outcome.nodes_visited != self.nodes_visited:
            out.append(f"replay visited {outcome.nodes_visited} nodes, recorded {self.nodes_visited}")
        return out

    @property
    def proves_unsat(self) -> bool:
        return self.status is Status.EXHAUSTED and self.config.get("parity_pruning") is False


def certify(n: int, cfg: SearchConfig) -> Certificate:
    if not cfg.certifiable:
        raise SearchConfigError("certificates require parity_pruning off")
    g = build(n)
    return Certificate.from_outcome(g, cfg, search_total_colouring(g, cfg))


def prove_type2(
    n: int,
    *,
    node_limit: int = DEFAULT_NODE_LIMIT,
    symmetry_level: SymmetryLevel | str = SymmetryLevel.COLOUR_PERM,
    worker_count: int = 1,
) -> tuple[Certificate, Certificate]:
    """Certificates for no total 5-colouring and for a total 6-colouring."""
    from .constructive import TYPE_II_ORDERS

    if n not in TYPE_II_ORDERS:
        raise ValueError(f"n={n} is not one of {sorted(TYPE_II_ORDERS)}; use construct()")
    return tuple(  # type: ignore[return-value]
        certify(n, SearchConfig(k, node_limit, SymmetryLevel(symmetry_level), False, worker_count))
        for k in (5, 6)
    )


def chi_from_certificates(unsat: Certificate, sat: Certificate) -> int:
    if Status.LIMIT in (unsat.status, sat.status):
        raise InconclusiveError(f"n={unsat.n}: search limit reached, no value")
    if unsat.status is Status.FOUND:
        return unsat.k
    if unsat.proves_unsat and sat.status is Status.FOUND and sat.k == unsat.k + 1:
        return sat.k
    raise InconclusiveError(f"n={unsat.n}: certificates do not settle the value")


def chi_total_with_method(n: int, **search_options) -> tuple[int, str]:
    """(total chromatic number, "construction" | "certificate")."""
    from .constructive import TypeII, construct

    c = construct(n)
    if not isinstance(c, TypeII):
        if verify(build(n), c).ok:
            return 5, "construction"
        raise AssertionError(f"construction for n={n} is improper")
    return chi_from_certificates(*prove_type2(n, **search_options)), "certificate"


def chi_total(n: int, **search_options) -> int:
    return chi_total_with_method(n, **search_options)[0]
