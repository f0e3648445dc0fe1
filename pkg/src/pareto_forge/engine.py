"""Run loops for SSLPSA and the NSGA-II baseline."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .archive import Archive, OfferBuffer
from .core import ControlParams, RngStream, Solution, StructuralError, nsga2_params, split_counts
from .dominance import crowded_order, crowded_truncate, sort_and_crowd
from .problems import ProblemSpec, evaluate
from .qabc import run_qabc_phase
from .som import SomCenter
from .tbga import crossover, mutate, run_tbga_phase, tournament_select


@dataclass
class TraceRow:
    generation: int
    archive_size: int
    n_qabc: int = 0
    n_tbga: int = 0
    metrics: Optional[dict] = None


@dataclass
class RunResult:
    algorithm: str
    problem: str
    seed: int
    params: ControlParams
    final_population: list[Solution]
    archive_members: list[Solution]
    som_weights_qabc: list[Solution] = field(default_factory=list)
    som_weights_tbga: list[Solution] = field(default_factory=list)
    trace: list[TraceRow] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def front(self) -> np.ndarray:
        """Archive objectives sorted by the first objective."""
        F = np.array([s.objectives for s in self.archive_members])
        return F[np.lexsort(F.T[::-1])]

    def metadata(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "problem": self.problem,
            "seed": self.seed,
            "params": self.params.to_dict(),
            "generations_run": len(self.trace),
            "population_size": len(self.final_population),
            "archive_size": len(self.archive_members),
            "som_weights_qabc": [s.decision.tolist() for s in self.som_weights_qabc],
            "som_weights_tbga": [s.decision.tolist() for s in self.som_weights_tbga],
            "trace": [
                {"generation": t.generation, "archive_size": t.archive_size,
                 "n_qabc": t.n_qabc, "n_tbga": t.n_tbga, "metrics": t.metrics}
                for t in self.trace
            ],
            "wall_time": self.wall_time,
        }


def initial_population(problem: ProblemSpec, size: int, rng: RngStream) -> list[Solution]:
    pop = []
    for _ in range(size):
        x = problem.random_decision(rng)
        pop.append(Solution(x, evaluate(problem, x)))
    return pop


def collection_site_merge(qabc_out: list[Solution], tbga_out: list[Solution], size: Optional[int] = None) -> list[Solution]:
    """Concatenate phase exports (QABC first) and renormalise to `size` by crowded order."""
    merged = list(qabc_out) + list(tbga_out)
    if size is None or len(merged) == size:
        return merged
    if not merged:
        raise StructuralError("both phases exported nothing")
    if len(merged) > size:
        return crowded_truncate(merged, size)
    sort_and_crowd(merged)
    order = crowded_order(merged)
    padded = list(merged)
    k = 0
    while len(padded) < size:
        padded.append(merged[order[k % len(order)]].copy())
        k += 1
    return padded


def _check(problem, params):
    if not isinstance(problem, ProblemSpec):
        raise StructuralError(f"expected a ProblemSpec, got {type(problem).__name__}")
    if not isinstance(params, ControlParams):
        raise StructuralError(f"expected ControlParams, got {type(params).__name__}")
    params.validate()
    if params.pop_size < 2:
        raise StructuralError("population must hold at least two solutions")


def run_sslpsa(
    problem: ProblemSpec,
    params: Optional[ControlParams] = None,
    seed: int = 0,
    concurrent: bool = False,
    observer: Optional[Callable[[int, list[Solution], Archive], Optional[dict]]] = None,
) -> RunResult:
    """Run SSLPSA. `observer(gen, population, archive)` may return a metric snapshot for the trace."""
    params = params or ControlParams()
    _check(problem, params)
    started = time.perf_counter()
    root = RngStream(seed)
    archive = Archive(params.archive_cap)
    pop = initial_population(problem, params.pop_size, root.child("init"))
    archive.offer_all(pop)

    centers: dict[str, Optional[SomCenter]] = {"qabc": None, "tbga": None}
    trace: list[TraceRow] = []
    xi = params.xi
    split: Optional[tuple[list[Solution], list[Solution]]] = None
    executor = ThreadPoolExecutor(max_workers=2) if concurrent else None

    try:
        for gen in range(params.generations):
            g = root.child(f"gen-{gen}")
            if params.xi_mode == "uniform_per_generation":
                xi = float(g.child("xi").uniform())
            if split is None or params.reshuffle_each_generation:
                n_qabc, n_tbga = split_counts(params.pop_size, xi)
                order = g.child("shuffle").permutation(len(pop))
                shuffled = [pop[i] for i in order]
                split = (shuffled[:n_qabc], shuffled[n_qabc:])
            sub_q, sub_t = split
            n_tbga = len(sub_t)
            q_buf, t_buf = OfferBuffer(), OfferBuffer()

            def qabc_job():
                return run_qabc_phase(sub_q, centers["qabc"], q_buf, params, problem, g.child("qabc"))

            def tbga_job():
                return run_tbga_phase(sub_t, centers["tbga"], t_buf, params, problem, g.child("tbga"), n_tbga)

            if executor is not None:
                fq, ft = executor.submit(qabc_job), executor.submit(tbga_job)
                (q_out, centers["qabc"]), (t_out, centers["tbga"]) = fq.result(), ft.result()
            else:
                q_out, centers["qabc"] = qabc_job()
                t_out, centers["tbga"] = tbga_job()

            # fixed application order keeps serial and concurrent runs identical
            archive.offer_all(q_buf)
            archive.offer_all(t_buf)
            pop = collection_site_merge(q_out, t_out, params.pop_size)
            split = (q_out, t_out)
            snapshot = observer(gen, pop, archive) if observer else None
            trace.append(TraceRow(gen, len(archive), len(q_out), len(t_out), snapshot))
    finally:
        if executor is not None:
            executor.shutdown()

    return RunResult(
        algorithm="sslpsa",
        problem=problem.id,
        seed=seed,
        params=params,
        final_population=pop,
        archive_members=list(archive.members),
        som_weights_qabc=centers["qabc"].weights if centers["qabc"] else [],
        som_weights_tbga=centers["tbga"].weights if centers["tbga"] else [],
        trace=trace,
        wall_time=time.perf_counter() - started,
    )


def nsga2_offspring(pop, params: ControlParams, problem: ProblemSpec, rng: RngStream) -> list[Solution]:
    """Mating pool of pool_size tournament winners; SBX pairs, each child mutated with probability p_mut."""
    pool = [tournament_select(pop, rng, problem) for _ in range(params.pool_size)]
    n_children = len(pop)
    children: list[Solution] = []
    while len(children) < n_children:
        i, j = rng.generator.choice(len(pool), size=2, replace=len(pool) < 2)
        for c in crossover(pool[i], pool[j], rng, problem):
            if rng.uniform() < params.p_mut:
                c = mutate(c, rng, problem)
            children.append(c)
    return children[:n_children]


def run_nsga2(
    problem: ProblemSpec,
    params: Optional[ControlParams] = None,
    seed: int = 0,
    observer: Optional[Callable[[int, list[Solution], Archive], Optional[dict]]] = None,
) -> RunResult:
    params = params or nsga2_params()
    _check(problem, params)
    started = time.perf_counter()
    root = RngStream(seed)
    pop = initial_population(problem, params.pop_size, root.child("init"))
    sort_and_crowd(pop)
    trace: list[TraceRow] = []
    for gen in range(params.generations):
        g = root.child(f"gen-{gen}")
        children = nsga2_offspring(pop, params, problem, g)
        pop = crowded_truncate(pop + children, params.pop_size)
        snapshot = None
        if observer:
            snapshot = observer(gen, pop, _front_archive(pop))
        trace.append(TraceRow(gen, sum(1 for s in pop if s.rank == 0), metrics=snapshot))
    archive = _front_archive(pop)
    return RunResult(
        algorithm="nsga2",
        problem=problem.id,
        seed=seed,
        params=params,
        final_population=pop,
        archive_members=list(archive.members),
        trace=trace,
        wall_time=time.perf_counter() - started,
    )


def _front_archive(pop: list[Solution]) -> Archive:
    return Archive().offer_all(pop)


ALGORITHMS = {"sslpsa": run_sslpsa, "nsga2": run_nsga2}
