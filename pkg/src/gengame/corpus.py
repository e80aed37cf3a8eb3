"""Built-in survey corpus and the per-group check runner.

The corpus covers every spec-constructible group of order at most 16
(cyclic, the non-cyclic abelian products, dihedral D4..D8, S3, A4, Q8, Dic3)
plus the odd-order cyclic and abelian groups up to order 81.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from .digraph import (
    analyze,
    check_even_option_conjecture,
    verify_odd_order_types,
    verify_option_restrictions,
)
from .groups import build_group, parity
from .lattice import build_lattice
from .oracle import ORACLE_CAP_DEFAULT, check_structure_invariance, nim_table
from .spectrum import (
    Contribution,
    EmpiricalSpectrum,
    assemble_empirical,
    digraph_contributions,
    feasible_spectrum,
)

_CYCLIC_SMALL = tuple(f"Z{n}" for n in range(1, 17))
_ABELIAN_SMALL = ("Z2^2", "Z2^3", "Z2^4", "Z2xZ4", "Z2xZ8", "Z4^2",
                  "Z2^2xZ4", "Z2xZ6", "Z3^2")
_DIHEDRAL = ("D4", "D5", "D6", "D7", "D8")
_NAMED = ("S3", "A4", "Q8", "Dic3")
_CYCLIC_ODD_LARGE = tuple(f"Z{n}" for n in range(17, 82, 2))
_ABELIAN_ODD_LARGE = ("Z3^3", "Z3xZ9", "Z5^2", "Z3xZ15", "Z7^2", "Z3xZ21",
                      "Z5xZ15", "Z3^4", "Z3^2xZ9", "Z9^2", "Z3xZ27")

CORPUS_SPECS: tuple[str, ...] = (
    _CYCLIC_SMALL + _ABELIAN_SMALL + _DIHEDRAL + _NAMED
    + _CYCLIC_ODD_LARGE + _ABELIAN_ODD_LARGE
)


def builtin_corpus(max_order: int = 81) -> list[str]:
    """Corpus specs whose group order is at most ``max_order``."""
    out = []
    for spec in CORPUS_SPECS:
        if build_group(spec).order <= max_order:
            out.append(spec)
    return out


@dataclass(frozen=True)
class CheckResult:
    status: str  # "pass" | "fail" | "skipped"
    reason: str


@dataclass
class CorpusEntry:
    spec: str
    order: int
    parity: int
    nim: int
    class_count: int
    oracle_nim: int | None
    checks: dict[str, CheckResult]
    seconds: float

    @property
    def passed(self) -> bool:
        if any(c.status == "fail" for c in self.checks.values()):
            return False
        return self.oracle_nim is None or self.oracle_nim == self.nim


def run_entry(spec: str, oracle_cap: int = ORACLE_CAP_DEFAULT,
              cache_dir=None) -> tuple[CorpusEntry, list[Contribution]]:
    """All checks for one corpus group, plus its (deficiency, etype) pairs
    when the group has even order."""
    started = time.perf_counter()
    G = build_group(spec)
    lattice = build_lattice(G, cache_dir=cache_dir)
    dg = analyze(G, lattice=lattice)
    odd = parity(G.order) == 1
    checks: dict[str, CheckResult] = {}

    violations = verify_option_restrictions(dg)
    checks["restrictions"] = (
        CheckResult("pass", "no violations") if not violations
        else CheckResult("fail", "; ".join(f"{v.rule}: {v.message}" for v in violations))
    )

    oracle_value: int | None = None
    if G.order <= oracle_cap:
        table = nim_table(G, lattice=lattice, cap=oracle_cap)
        oracle_value = table.start_value
        bad = check_structure_invariance(G, nim=table, lattice=lattice, cap=oracle_cap)
        checks["invariance"] = (
            CheckResult("pass", "no violations") if not bad
            else CheckResult("fail", f"{len(bad)} position pairs disagree")
        )
    else:
        checks["invariance"] = CheckResult("skipped", "order exceeds the oracle cap")

    if odd:
        ok = verify_odd_order_types(G, dg)
        checks["odd_theorem"] = (
            CheckResult("pass", "types match the odd-order table") if ok
            else CheckResult("fail", "some class type differs from the odd-order table")
        )
        checks["conjecture"] = CheckResult("skipped", "odd order")
    else:
        checks["odd_theorem"] = CheckResult("skipped", "even order")
        report = check_even_option_conjecture(G, dg)
        checks["conjecture"] = (
            CheckResult("pass", f"{report.checked} odd classes checked") if report.holds
            else CheckResult("fail", "counterexamples: " + ", ".join(report.counterexamples))
        )

    entry = CorpusEntry(
        spec=spec,
        order=G.order,
        parity=parity(G.order),
        nim=dg.nim_value,
        class_count=len(dg.classes),
        oracle_nim=oracle_value,
        checks=checks,
        seconds=time.perf_counter() - started,
    )
    return entry, [] if odd else digraph_contributions(dg)


@dataclass
class CorpusReport:
    max_order: int
    oracle_cap: int
    entries: list[CorpusEntry]
    spectrum: EmpiricalSpectrum
    all_passed: bool

    def to_json_dict(self, include_timing: bool = True) -> dict:
        entries = []
        for e in self.entries:
            item = {
                "spec": e.spec,
                "order": e.order,
                "parity": e.parity,
                "nim": e.nim,
                "class_count": e.class_count,
                "oracle_nim": e.oracle_nim,
                "checks": {
                    name: {"status": c.status, "reason": c.reason}
                    for name, c in sorted(e.checks.items())
                },
            }
            if include_timing:
                item["seconds"] = round(e.seconds, 6)
            entries.append(item)
        sp = self.spectrum
        spectrum = {
            "layers": {
                str(k): [list(t) for t in sorted(layer)]
                for k, layer in sp.layers.items()
            },
            "containment": "pass" if sp.contained else "fail",
            "containment_violations": [
                [spec, k, list(t)] for spec, k, t in sp.containment_violations
            ],
            "witnessed": [[k, list(t)] for k, t in sorted(sp.witnessed)],
            "unwitnessed": [[k, list(t)] for k, t in sorted(sp.unwitnessed)],
            "odd_checked": len(sp.odd_checked),
            "odd_failures": list(sp.odd_failures),
        }
        return {
            "schema": 1,
            "max_order": self.max_order,
            "oracle_cap": self.oracle_cap,
            "all_passed": self.all_passed,
            "entries": entries,
            "spectrum": spectrum,
        }


def run_corpus(max_order: int = 16, jobs: int = 1,
               oracle_cap: int = ORACLE_CAP_DEFAULT, cache_dir=None) -> CorpusReport:
    """Run every check over the built-in corpus up to ``max_order``.

    With jobs > 1 the groups are processed in worker processes; results are
    merged in corpus order, so the report matches a single-job run.
    """
    specs = builtin_corpus(max_order)
    worker = partial(run_entry, oracle_cap=oracle_cap, cache_dir=cache_dir)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, specs))
    else:
        results = [worker(spec) for spec in specs]

    contributions: dict[str, list[Contribution]] = {}
    odd_checked: list[str] = []
    odd_failures: list[str] = []
    for entry, contrib in results:
        if entry.parity == 1:
            odd_checked.append(entry.spec)
            if entry.checks["odd_theorem"].status == "fail":
                odd_failures.append(entry.spec)
        else:
            contributions[entry.spec] = contrib
    spectrum = assemble_empirical(contributions, odd_checked, odd_failures,
                                  feasible_spectrum())
    entries = [entry for entry, _ in results]
    all_passed = all(e.passed for e in entries) and spectrum.contained
    return CorpusReport(max_order, oracle_cap, entries, spectrum, all_passed)
