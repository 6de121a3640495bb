"""Sweep harness: enumerate instances, run both deciders, cross-validate.

An instance is ``(group label, ring label, sigma index, f index)`` where the
indices refer to :func:`enumerate_antiautomorphisms_order2` and
:func:`enumerate_unit_homomorphisms`; only ``f`` compatible with ``sigma``
are visited. Records come back sorted by that tuple, so a report is a pure
function of its parameters. Wall-clock timing is returned separately.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from .catalog import group_from_label
from .checker import check_exhaustive, check_pairwise
from .classifier import CASES, classify
from .errors import CapabilityError
from .morphisms import InvolutionSpec, compatible_homomorphisms, enumerate_antiautomorphisms_order2
from .rings import make_ring

WORKERS_ENV = "SIGMA_NORMAL_WORKERS"
REPORT_SCHEMA = "sigma-normal-sweep/1"
ORACLE_BOUND = 2**12


def worker_count(requested: int | None = None) -> int:
    """``requested`` (or the CPU count) capped by ``$SIGMA_NORMAL_WORKERS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(WORKERS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def reproduce_command(group: str, ring: str, si: int, fi: int) -> str:
    return f"sigma-normal check --group {group} --ring {ring} --sigma index:{si} --f index:{fi}"


def instance_record(group: str, ring: str, si: int, fi: int, spec: InvolutionSpec, oracle: bool) -> dict[str, Any]:
    verdict = check_pairwise(spec)
    cert = classify(spec)
    rec: dict[str, Any] = {
        "group": group,
        "ring": ring,
        "sigma_index": si,
        "f_index": fi,
        "sigma": list(spec.sigma.map),
        "f": list(spec.f.values),
        "pairwise": verdict.to_json(),
        "case": cert.case,
        "agree": verdict.normal == cert.normal,
    }
    if cert.reason:
        rec["reason"] = cert.reason
    if oracle:
        K, G = spec.ring, spec.group
        if K.size**G.order <= ORACLE_BOUND:
            ov = check_exhaustive(spec, ORACLE_BOUND)
            rec["oracle"] = ov.to_json()
            rec["oracle_agree"] = ov.normal == verdict.normal
        else:
            rec["oracle"] = None
    if not verdict.normal or not rec["agree"] or rec.get("oracle_agree") is False:
        rec["reproduce"] = reproduce_command(group, ring, si, fi)
    return rec


def shard_records(args: tuple[str, str, bool]) -> tuple[list[dict], float]:
    """All records for one ``(group, ring)`` pair and the seconds spent."""
    group, ring, oracle = args
    start = time.perf_counter()
    G, K = group_from_label(group), make_ring(ring)
    out = []
    for si, sigma in enumerate(enumerate_antiautomorphisms_order2(G)):
        for fi, f in compatible_homomorphisms(sigma, K):
            out.append(instance_record(group, ring, si, fi, InvolutionSpec(sigma, f), oracle))
    return out, time.perf_counter() - start


@dataclass
class SweepReport:
    parameters: dict[str, Any]
    records: list[dict[str, Any]]
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def disagreements(self) -> list[dict]:
        return [r for r in self.records if not r["agree"]]

    @property
    def oracle_disagreements(self) -> list[dict]:
        return [r for r in self.records if r.get("oracle_agree") is False]

    @property
    def consistent(self) -> bool:
        return not self.disagreements and not self.oracle_disagreements

    def summary(self) -> dict[str, Any]:
        cases = Counter(r["case"] for r in self.records)
        return {
            "instances": len(self.records),
            "normal": sum(r["pairwise"]["normal"] for r in self.records),
            "cases": {c: cases.get(c, 0) for c in CASES},
            "disagreements": len(self.disagreements),
            "oracle_checked": sum(r.get("oracle") is not None for r in self.records if "oracle" in r),
            "oracle_disagreements": len(self.oracle_disagreements),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "parameters": self.parameters,
            "summary": self.summary(),
            "records": self.records,
        }


def run_sweep(
    labels: Iterable[str],
    rings: Iterable[str],
    oracle: bool = False,
    workers: int | None = None,
) -> SweepReport:
    labels, rings = sorted(set(labels)), sorted(set(rings))
    for r in rings:
        make_ring(r)
    for lab in labels:
        if group_from_label(lab).order > 32:
            raise CapabilityError(f"{lab}: sweeps are limited to order <= 32")
    jobs = [(g, r, oracle) for g in labels for r in rings]
    n = min(worker_count(workers), len(jobs)) or 1
    if n == 1:
        results = [shard_records(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(shard_records, jobs))
    records, timing = [], {}
    for (g, r, _), (recs, secs) in zip(jobs, results):
        records.extend(recs)
        timing[f"{g}|{r}"] = round(secs, 4)
    records.sort(key=lambda x: (x["group"], x["ring"], x["sigma_index"], x["f_index"]))
    params = {"groups": labels, "rings": rings, "oracle": oracle}
    return SweepReport(params, records, timing)
