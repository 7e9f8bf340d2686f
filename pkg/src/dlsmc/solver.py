"""DLS-MC search: penalty-guided expansion, plateau search and perturbation."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .clique_state import CliqueState
from .graph import Graph
from .penalties import PENALTY_CAP, PenaltyState
from .rng import MASK64, SplitMix64

#: ``observer(kind, vertex, clique_state, penalty_state)`` with kind one of
#: ``"add"``, ``"swap"``, ``"perturb"``; called after the state has changed.
Observer = Callable[[str, int, CliqueState, PenaltyState], None]


@dataclass(frozen=True)
class SolverConfig:
    tcs: int
    pd: int = 1
    max_steps: int = 100_000_000
    seed: int = 0
    # False restricts the availability rule to plateau selections only
    expand_availability: bool = True

    def __post_init__(self):
        if self.tcs < 1:
            raise ValueError(f"target clique size must be >= 1, got {self.tcs}")
        if self.pd < 1:
            raise ValueError(f"penalty delay must be >= 1, got {self.pd}")
        if self.max_steps < 0:
            raise ValueError(f"max_steps must be >= 0, got {self.max_steps}")


@dataclass
class PerturbationEvent:
    improving_steps: int
    plateau_swaps: int
    clique: Tuple[int, ...]
    penalized_count: int
    relative_mobility: Optional[float] = None


@dataclass
class SolverResult:
    status: str  # "found" | "failed"
    clique: List[int]
    best_size: int
    steps: int
    elapsed: float
    trace: Optional[List[PerturbationEvent]] = field(default=None, repr=False)

    @property
    def found(self) -> bool:
        return self.status == "found"


class StepBudget:
    """Global step counter shared by the search phases of one run."""

    __slots__ = ("steps", "max_steps")

    def __init__(self, max_steps: int, steps: int = 0):
        self.max_steps = max_steps
        self.steps = steps

    @property
    def exhausted(self) -> bool:
        return self.steps >= self.max_steps


def expand(cs: CliqueState, ps: PenaltyState, rng, budget: StepBudget,
           tcs: Optional[int] = None, use_availability: bool = True,
           observer: Optional[Observer] = None) -> Optional[int]:
    """Add minimum-penalty improving vertices until none is selectable.

    Also stops once ``|C| >= tcs`` or the step budget runs out. Returns the
    last vertex added, or ``None``.
    """
    NI, C = cs.NI, cs.C
    target = cs.graph.n + 1 if tcs is None else tcs
    last = None
    while NI.size and C.size < target and budget.steps < budget.max_steps:
        v = ps.select_min_penalty(NI, rng, use_availability)
        if v is None:
            break
        cs.add_vertex(v)
        budget.steps += 1
        last = v
        if observer is not None:
            observer("add", v, cs, ps)
    return last


def plateau_search(cs: CliqueState, ps: PenaltyState, rng,
                   swap_budget: int, budget: StepBudget,
                   observer: Optional[Observer] = None) -> Tuple[Optional[int], int]:
    """Swap minimum-penalty level vertices into ``C`` while no expansion is possible.

    ``swap_budget`` stands in for ``|C ∩ C'|`` (the overlap with the clique
    recorded when plateau search began): each swap-in can remove at most one
    recorded vertex. Returns ``(last swapped-in vertex or None, swaps made)``.
    """
    NI, NL = cs.NI, cs.NL
    last = None
    swaps = 0
    while (not NI.size and NL.size and swaps < swap_budget
           and budget.steps < budget.max_steps):
        v = ps.select_min_penalty(NL, rng)
        if v is None:
            break
        cs.swap_in(v)
        budget.steps += 1
        swaps += 1
        last = v
        if observer is not None:
            observer("swap", v, cs, ps)
    return last, swaps


def perturb(cs: CliqueState, ps: PenaltyState, last_added: int, rng) -> None:
    """Restart from ``last_added`` (pd > 1) or splice in a random vertex (pd = 1)."""
    if ps.pd > 1:
        cs.reset_to(last_added)
    else:
        g = cs.graph
        v = rng.randrange(g.n)
        if not cs.C.contains(v):
            row = g.matrix[v]
            kept = [u for u in cs.C if row[u]]
            kept.append(v)
            cs.restore_to(kept, check=False)
    ps.clear_availability()


def _search(g: Graph, cfg: SolverConfig, trace: bool,
            observer: Optional[Observer]) -> SolverResult:
    if g.n == 0:
        raise ValueError("cannot search an empty graph")
    t0 = time.perf_counter()
    rng = SplitMix64(cfg.seed)
    cs = CliqueState(g)
    ps = PenaltyState(g.n, cfg.pd)
    budget = StepBudget(cfg.max_steps)
    tcs = cfg.tcs
    use_avail = cfg.expand_availability

    cs.reset_to(rng.randrange(g.n))
    ps.init_penalties()
    best = cs.clique()
    events: Optional[List[PerturbationEvent]] = [] if trace else None
    prev_clique = None
    improving = swaps = 0
    found = cs.C.size >= tcs

    while not found and budget.steps < budget.max_steps:
        last = None
        s0 = budget.steps
        v = expand(cs, ps, rng, budget, tcs, use_avail, observer)
        if v is not None:
            last = v
        improving += budget.steps - s0
        if cs.C.size > len(best):
            best = cs.clique()
        if cs.C.size >= tcs:
            found = True
            break

        swap_budget = cs.C.size
        v, n_sw = plateau_search(cs, ps, rng, swap_budget, budget, observer)
        swap_budget -= n_sw
        swaps += n_sw
        if v is not None:
            last = v
        while cs.NI.size and budget.steps < budget.max_steps:
            s0 = budget.steps
            v = expand(cs, ps, rng, budget, tcs, use_avail, observer)
            added = budget.steps - s0
            improving += added
            if v is not None:
                last = v
            if cs.C.size > len(best):
                best = cs.clique()
            if cs.C.size >= tcs:
                found = True
                break
            v, n_sw = plateau_search(cs, ps, rng, swap_budget, budget, observer)
            swap_budget -= n_sw
            swaps += n_sw
            if v is not None:
                last = v
            if not added and not n_sw:
                # improving vertices exist but all are capped or unavailable
                break
        if found:
            break

        ps.update_penalties(cs.C)
        if events is not None:
            clique = tuple(sorted(cs.C))
            mobility = None
            if prev_clique is not None:
                diff = len(set(clique).symmetric_difference(prev_clique))
                mobility = diff / (2 * tcs)
            events.append(PerturbationEvent(improving, swaps, clique,
                                            ps.penalized_count, mobility))
            prev_clique = clique
            improving = swaps = 0
        if last is None:
            last = cs.C.members[0]
        perturb(cs, ps, last, rng)
        if observer is not None:
            observer("perturb", last, cs, ps)
        if cs.C.size == g.n and (cfg.pd == 1 or g.n == 1):
            # whole graph is the clique and perturbation cannot move it
            break

    if found:
        best = cs.clique()
    return SolverResult(
        status="found" if found else "failed",
        clique=sorted(best),
        best_size=len(best),
        steps=budget.steps,
        elapsed=time.perf_counter() - t0,
        trace=events,
    )


def _compiled_search(g: Graph, cfg: SolverConfig) -> SolverResult:
    from . import _kernel

    if g.n == 0:
        raise ValueError("cannot search an empty graph")
    matrix, ptr, idx = _kernel.graph_arrays(g)
    # unsigned, matching the warm-up signature (seeds may use all 64 bits)
    seed = _kernel.np.uint64(cfg.seed & MASK64)
    _kernel.warmup()
    t0 = time.perf_counter()
    found, steps, best = _kernel.run(matrix, ptr, idx, g.n, cfg.tcs, cfg.pd, cfg.max_steps,
                                     seed, PENALTY_CAP, cfg.expand_availability)
    elapsed = time.perf_counter() - t0
    clique = sorted(int(v) for v in best)
    return SolverResult("found" if found else "failed", clique, len(clique), int(steps), elapsed)


def have_compiled_engine() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def solve(g: Graph, cfg: SolverConfig, observer: Optional[Observer] = None,
          engine: str = "auto") -> SolverResult:
    """Run DLS-MC until a clique of size ``cfg.tcs`` is found or the step budget is spent.

    ``engine`` is ``"python"``, ``"compiled"`` (numba) or ``"auto"``; both
    engines give identical results, the compiled one roughly two orders of
    magnitude faster. Observers need the Python engine.
    """
    if engine not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        engine = "compiled" if observer is None and have_compiled_engine() else "python"
    if engine == "compiled":
        if observer is not None:
            raise ValueError("observers are only supported by the python engine")
        return _compiled_search(g, cfg)
    return _search(g, cfg, trace=False, observer=observer)


def solve_instrumented(g: Graph, cfg: SolverConfig,
                       observer: Optional[Observer] = None) -> SolverResult:
    """As :func:`solve`, also recording one :class:`PerturbationEvent` per perturbation."""
    return _search(g, cfg, trace=True, observer=observer)
