"""Picard-number-two Fano enumeration and the rigidity sweep."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cohomology import c1
from .fan import is_fano_two_stage
from .gbm import CanonicalForm, TwoStageSpec, canonical_form
from .iso import default_bound, ring_iso_search


@dataclass(frozen=True)
class TableEntry:
    form: CanonicalForm
    fano: bool
    c1: str

    @property
    def spec(self) -> TwoStageSpec:
        return self.form.to_spec()


@dataclass
class ClassificationTable:
    dimension: int
    entries: list[TableEntry]

    @property
    def count(self) -> int:
        return len(self.entries)

    def specs(self) -> list[TwoStageSpec]:
        return [e.spec for e in self.entries]


@dataclass
class RigidityReport:
    dimension: int
    pairs_checked: int = 0
    agreements: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    oracle_bound_used: int = 0
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "pairs_checked": self.pairs_checked,
            "agreements": self.agreements,
            "counterexamples": self.counterexamples,
            "oracle_bound_used": self.oracle_bound_used,
            "elapsed": round(self.elapsed, 3),
        }


def sorted_vectors(length: int, max_sum: int, lo: int = 0):
    """Weakly increasing nonnegative vectors with entries ``>= lo`` and sum ``<= max_sum``."""
    if length == 0:
        yield ()
        return
    v = lo
    while v * length <= max_sum:
        for rest in sorted_vectors(length - 1, max_sum - v, v):
            yield (v, *rest)
        v += 1


def enumerate_fano(d: int) -> ClassificationTable:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    seen: dict[CanonicalForm, TableEntry] = {}
    for n1 in range(1, d):
        n2 = d - n1
        for a in sorted_vectors(n2, n1):
            spec = TwoStageSpec(n1, a)
            form = canonical_form(spec)
            if form not in seen:
                canon = form.to_spec()
                seen[form] = TableEntry(form, is_fano_two_stage(canon), str(c1(canon)))
    entries = sorted(seen.values(), key=lambda e: (e.form.type_pair, e.form.sorted_a))
    return ClassificationTable(d, entries)


def _bound_for(policy, s: TwoStageSpec, t: TwoStageSpec) -> int:
    if policy == "auto" or policy is None:
        return default_bound(s, t)
    if isinstance(policy, int):
        return policy
    if isinstance(policy, str) and policy.startswith("fixed:"):
        return int(policy.split(":", 1)[1])
    raise ValueError(f"unknown bound policy {policy!r}")


def check_pair(args) -> dict:
    s, t, bound = args
    witness = ring_iso_search(s, t, bound, require_c1=True)
    equal = canonical_form(s) == canonical_form(t)
    return {
        "source": str(s),
        "target": str(t),
        "bound": bound,
        "witness": [list(r) for r in witness.matrix] if witness else None,
        "canonical_equal": equal,
        "agree": (witness is not None) == equal,
    }


def verify_rigidity(max_dimension: int, oracle_bound_policy="auto", workers: int = 1) -> list[RigidityReport]:
    """Compare the c1-preserving oracle with canonical-form equality on all pairs."""
    if max_dimension < 2:
        raise ValueError("max_dimension must be at least 2")
    reports = []
    for d in range(2, max_dimension + 1):
        start = time.perf_counter()
        specs = enumerate_fano(d).specs()
        jobs = [
            (specs[i], specs[j], _bound_for(oracle_bound_policy, specs[i], specs[j]))
            for i in range(len(specs))
            for j in range(i, len(specs))
        ]
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                results = list(pool.map(check_pair, jobs, chunksize=8))
        else:
            results = [check_pair(job) for job in jobs]
        results.sort(key=lambda r: (r["source"], r["target"]))
        report = RigidityReport(d)
        report.pairs_checked = len(results)
        report.agreements = sum(r["agree"] for r in results)
        report.counterexamples = [r for r in results if not r["agree"]]
        report.oracle_bound_used = max((job[2] for job in jobs), default=0)
        report.elapsed = time.perf_counter() - start
        reports.append(report)
    return reports


def classification_emit(table: ClassificationTable, fmt: str = "plain") -> str:
    if fmt == "plain":
        return "".join(f"{e.spec}\n" for e in table.entries)
    if fmt == "json":
        rows = [
            {
                "spec": str(e.spec),
                "n1": e.form.type_pair[0],
                "n2": e.form.type_pair[1],
                "exponents": list(e.form.sorted_a),
                "is_product": e.form.is_product,
                "fano": e.fano,
                "c1": e.c1,
            }
            for e in table.entries
        ]
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n1", "n2", "exponents", "is_product", "c1"])
        for e in table.entries:
            writer.writerow(
                [
                    e.form.type_pair[0],
                    e.form.type_pair[1],
                    ",".join(str(x) for x in e.form.sorted_a),
                    str(e.form.is_product).lower(),
                    e.c1,
                ]
            )
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}; expected plain, json or csv")
