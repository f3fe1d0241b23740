"""End-to-end driver: dual, long cycle, surgery, curve, certificate."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional, Sequence

from .auxtrees import (analyze, counting_checks, leaf_caress_check, node_inequality_check,
                       structural_bad_checks)
from .classify import check_touched_lower_bound, classify
from .curve import CollinearCertificate, make_certificate, upper_bound_check, verify_curve
from .cycles import DualCycle, long_cycle_heuristic, longest_cycle_exact, orient_and_partition
from .dual import check_three_connected, dualize, is_cubic, verify_shared_edge_bound
from .embedding import InvariantError, Triangulation
from .surgery import SurgeryLog, surgery_loop


@dataclass
class PipelineOptions:
    cycle: str = "exact"  # "exact" or "heuristic"
    seed: int = 0
    node_limit: Optional[int] = 2_000_000  # search nodes for the exact solver; deterministic
    max_iters: Optional[int] = None
    surgery: bool = True
    initial_cycle: Optional[Sequence[int]] = None
    upper_bound_max_vertices: int = 14
    three_connected_max_vertices: int = 200


@dataclass
class PipelineReport:
    n: int
    Delta: int
    dual_vertices: int
    len_initial: int
    initial_optimal: Optional[bool]
    steps: int
    stop_reason: str
    len_final: int
    kappa_initial: int
    kappa_final: int
    S: int
    checks: Dict[str, Optional[bool]] = field(default_factory=dict)
    times: Dict[str, float] = field(default_factory=dict)

    def to_json(self, with_times: bool = False) -> dict:
        d = asdict(self)
        if not with_times:
            d.pop("times")
        return d


def lemma_checks(T: Triangulation, D, C: DualCycle) -> Dict[str, bool]:
    cls = classify(D, C)
    _, pair = analyze(D, C, cls)
    return {
        "tau_sum": cls.tau == cls.rho + cls.kappa,
        "touched_lower_bound": check_touched_lower_bound(T, cls, C),
        "node_inequality": bool(node_inequality_check(pair)),
        "leaf_caress": bool(leaf_caress_check(pair, cls)),
        "counting": bool(counting_checks(pair, cls)),
        "structural_bad": bool(structural_bad_checks(pair, D, C)),
    }


def find_cycle(D, options: PipelineOptions) -> DualCycle:
    if options.initial_cycle is not None:
        return orient_and_partition(D, options.initial_cycle)
    if options.cycle == "heuristic":
        return long_cycle_heuristic(D, options.seed)
    if options.cycle == "exact":
        return longest_cycle_exact(D, node_limit=options.node_limit)
    raise ValueError(f"unknown cycle method {options.cycle!r}")


def run_pipeline(T: Triangulation, options: Optional[PipelineOptions] = None):
    """Returns (certificate, report, final cycle, surgery log)."""
    options = options or PipelineOptions()
    times: Dict[str, float] = {}

    def stage(name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        times[name] = round(time.perf_counter() - t0, 6)
        return out

    D = stage("dualize", dualize, T)
    checks: Dict[str, Optional[bool]] = {"cubic": is_cubic(D), "shared_edge": bool(verify_shared_edge_bound(D))}
    checks["three_connected"] = (
        check_three_connected(D) if D.n_vertices <= options.three_connected_max_vertices else None
    )
    if not (checks["cubic"] and checks["shared_edge"]) or checks["three_connected"] is False:
        raise InvariantError("dual fails its structural checks", checks=checks)

    C0 = stage("cycle", find_cycle, D, options)
    kappa0 = classify(D, C0).kappa
    checks.update({f"initial_{k}": v for k, v in stage("lemmas", lemma_checks, T, D, C0).items()})
    if options.surgery:
        C, log = stage("surgery", surgery_loop, T, D, C0, options.max_iters)
    else:
        C, log = C0, SurgeryLog(stop_reason="disabled")
    if log.steps:
        checks.update({f"final_{k}": v for k, v in lemma_checks(T, D, C).items()})

    cert = stage("curve", make_certificate, T, D, C, len_initial=C0.length, steps=len(log.steps))
    checks["verify_curve"] = bool(verify_curve(T, cert.curve))
    checks["independent"] = not any(T.adjacent(a, b) for a in cert.S for b in cert.S if a < b)
    if D.n_vertices <= options.upper_bound_max_vertices:
        checks["upper_bound"] = stage("upper_bound", upper_bound_check, T, D, cert)
    report = PipelineReport(
        n=T.n, Delta=T.max_degree(), dual_vertices=D.n_vertices, len_initial=C0.length,
        initial_optimal=C0.optimal, steps=len(log.steps), stop_reason=log.stop_reason,
        len_final=C.length, kappa_initial=kappa0, kappa_final=cert.stats["kappa_final"], S=len(cert.S),
        checks=checks, times=times,
    )
    return cert, report, C, log
