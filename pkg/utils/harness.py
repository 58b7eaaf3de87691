"""
Runs a decomposer over a family of instances, checks every certificate and
compares it with the exact oracles on small instances.
"""

import logging
import time
from pathlib import Path

from tqdm import tqdm

from Models.schemas import OracleComparison, RunReport, VerdictRecord
from utils import constants
from utils.apex_forest import decompose_apex_forest
from utils.certificates import APEX_FOREST, verify_minor_model, verify_tree_decomposition, width
from utils.config import Settings
from utils.errors import MinorcertError
from utils.formats import (
    emit_decomposition,
    emit_graph6,
    emit_minor_model,
    parse_decomposition,
    parse_minor_model,
)
from utils.oracles import exact_minor_test, exact_treewidth
from utils.wheel import bag_bound, decompose_wheel

logger = logging.getLogger(__name__)


def bag_limit(pattern):
    if pattern.kind == APEX_FOREST:
        return pattern.tree_order
    return bag_bound(pattern.k)


def decompose(graph, pattern, cycle=None):
    if pattern.kind == APEX_FOREST:
        return decompose_apex_forest(graph, pattern)
    return decompose_wheel(graph, cycle=cycle, k=pattern.k)


def verdict_record(check, verdict):
    witness = None if verdict.witness is None else str(verdict.witness)
    return VerdictRecord(
        check=check,
        ok=verdict.ok,
        rule=verdict.rule,
        witness=witness,
        message=verdict.message,
    )


def serialize_outcome(outcome, graph):
    if outcome.kind == "decomposition":
        return emit_decomposition(outcome.decomposition, num_vertices=graph.num_vertices)
    return emit_minor_model(outcome.model)


def _round_trip(outcome, graph, pattern, first):
    text = serialize_outcome(outcome, graph)
    if outcome.kind == "decomposition":
        parsed, _ = parse_decomposition(text)
        same = parsed.bags == outcome.decomposition.bags and parsed.parents == outcome.decomposition.parents
        again = emit_decomposition(parsed, num_vertices=graph.num_vertices)
        second = verify_tree_decomposition(graph, parsed, max_bag=bag_limit(pattern))
    else:
        parsed = parse_minor_model(text)
        same = parsed == outcome.model
        again = emit_minor_model(parsed)
        second = verify_minor_model(graph, parsed)
    ok = same and again == text and second.ok == first.ok
    return VerdictRecord(
        check="round-trip",
        ok=ok,
        rule=None if ok else "round-trip",
        message="ok" if ok else "certificate changed across emit and parse",
    )


def _oracle_comparisons(graph, pattern, outcome, settings):
    comparisons = []
    if outcome.kind == "decomposition":
        tw = exact_treewidth(graph, limit=settings.treewidth_limit).width
        bound = width(outcome.decomposition)
        comparisons.append(
            OracleComparison(
                oracle="treewidth",
                expected=f"<= {bound}",
                observed=str(tw),
                agrees=tw <= bound,
            )
        )
    elif graph.num_vertices <= settings.minor_limit:
        found = exact_minor_test(graph, pattern.resolved, limit=settings.minor_limit)
        comparisons.append(
            OracleComparison(
                oracle="minor",
                expected="present",
                observed="present" if found is not None else "absent",
                agrees=found is not None,
            )
        )
    return comparisons


def run_instance(instance_id, graph, pattern, settings=None, out_dir=None, cycle=None):
    """Decompose, verify, round-trip and cross-check one instance."""
    settings = settings or Settings()
    report = RunReport(
        instance_id=instance_id,
        graph6=emit_graph6(graph) if graph.num_vertices else "",
        pattern=pattern.describe(),
        outcome="error",
    )
    started = time.perf_counter()
    try:
        outcome = decompose(graph, pattern, cycle=cycle)
        verdict = outcome.verify(graph, pattern=pattern.resolved, max_bag=bag_limit(pattern))
        report.outcome = outcome.kind
        report.verdicts.append(verdict_record("certificate", verdict))
        if outcome.kind == "decomposition":
            report.max_bag = outcome.decomposition.max_bag
        report.verdicts.append(_round_trip(outcome, graph, pattern, verdict))

        if out_dir is not None:
            suffix = constants.TD_SUFFIX if outcome.kind == "decomposition" else constants.MINOR_SUFFIX
            path = Path(out_dir) / f"{instance_id}{suffix}"
            path.write_text(serialize_outcome(outcome, graph))
            report.certificate_path = str(path)

        if graph.num_vertices <= settings.max_oracle_n:
            report.oracle.extend(_oracle_comparisons(graph, pattern, outcome, settings))
    except MinorcertError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        logger.error("%s failed: %s", instance_id, report.error)

    if settings.record_timing:
        report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    if not report.passed and report.error is None:
        logger.error("%s: certificate or oracle check failed", instance_id)
    return report


def run_family(family, pattern, settings=None, out_dir=None, progress=True):
    """One RunReport per instance of `family`, sorted by instance id."""
    settings = settings or Settings()
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    reports = [
        run_instance(instance_id, graph, pattern, settings=settings, out_dir=out_dir)
        for instance_id, graph in tqdm(
            family.generate(),
            desc=f"{family.kind} n={family.n}",
            disable=not progress,
        )
    ]
    reports.sort(key=lambda r: r.instance_id)
    failed = sum(not r.passed for r in reports)
    logger.info("%d instances, %d failed", len(reports), failed)
    return reports
