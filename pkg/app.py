"""
File: app.py

Purpose: Command-line entry point. Builds a fusion system from a group
         source, runs one computation or scenario check, prints a pandas
         summary and writes a JSON report.

Imports from: argparse, json, logging, os, sys, dataclasses, pathlib, typing,
              pandas, dotenv, config (optional), src.*
Imported by: None (main entry point)

Key Functions:
- main(): Parse arguments, dispatch, map errors to exit codes
- build_parser(): Subcommands and flags
- resolve_run(): Group, Sylow subgroup, fusion system and family from flags
- cmd_classify() / cmd_limits() / cmd_graph() / cmd_dump() / cmd_census()
- cmd_verify(): Scenario checkers selected by name

Exit codes: 0 success, 2 configuration or capacity error, 3 hypothesis
failure, 4 invariant violation or failed conclusion.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

try:
    # Load environment variables from a .env file if present
    from dotenv import load_dotenv  # type: ignore
    load_dotenv()
except Exception:
    # dotenv is optional; settings fall back to built-in defaults
    pass

# Optional config.py support (overrides can be stored there locally)
try:  # pragma: no cover - optional file
    import config  # type: ignore
except Exception:
    config = None  # type: ignore

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.errors import ArgumentError, CapacityError, ConfigError, FusionLimitsError, InvariantViolation
from src.fusion import (
    FusionSystem,
    Triple,
    classify,
    dump_fusion_system,
    generate,
    pruned_subsystem,
    realize,
)
from src.groups import FiniteGroup, SubgroupHandle, hom_from_generator_images, prime_power, subgroup_generated, sylow
from src.homalg import higher_limit_dims
from src.orbit_category import (
    FunctorModule,
    OrbitCategory,
    SubgroupFamily,
    build_orbit_category,
    centric_family,
    centric_radical_closure,
    certify_family,
    cohomology_functor,
    constant_functor,
    load_functor,
)
from src.presets import parse_group_source, resolve_subgroup, subgroup_names
from src.rep_graphs import build_rep_graph, family_for, pruning_triple, pruning_vanishing_check, tree_criteria_check
from src.settings import LIMIT_METHODS, Settings, configure_logging, load_settings, settings_from_module, use_settings
from src.utils import (
    default_report_path,
    format_frame,
    format_status,
    limits_frame,
    records_frame,
    report_envelope,
    write_report,
)
from src.verdicts import STATUS_CONCLUSION_FAILURE, STATUS_HYPOTHESIS_FAILURE, STATUS_PASS, ScenarioVerdict
from src.verification import (
    find_realizing_group,
    limone_identification,
    sharpness_suite,
    small_group_census,
    splitting_check,
    subsystem_limit_pair,
    theorem_a_check,
    theorem_b_scenario,
    theorem_c_scenario,
    two_essential_scenario,
)

logger = logging.getLogger("fusion_limits")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3
EXIT_ALARM = 4

VERIFY_SCENARIOS = (
    "theorem-a",
    "theorem-b",
    "theorem-c",
    "two-essential",
    "trees",
    "sharpness",
    "splitting",
    "shapiro",
    "lim1",
)

STATUS_EXIT = {
    STATUS_PASS: EXIT_OK,
    STATUS_HYPOTHESIS_FAILURE: EXIT_HYPOTHESIS,
    STATUS_CONCLUSION_FAILURE: EXIT_ALARM,
}


# ------------------------------
# Run configuration
# ------------------------------

@dataclass
class RunConfig:
    source: str
    key: str
    group: FiniteGroup
    p: int
    S: SubgroupHandle
    F: FusionSystem
    family: SubgroupFamily
    settings: Settings
    args: argparse.Namespace

    def provenance(self) -> Dict[str, Any]:
        caps = {k: v for k, v in asdict(self.settings).items() if k not in ("extra", "output_dir", "log_level")}
        return {
            "group": self.group,
            "source": self.source,
            "p": self.p,
            "sylow": self.S,
            "family": self.family.to_dict(),
            "settings": caps,
        }

    def subgroup(self, name: str) -> SubgroupHandle:
        return resolve_subgroup(self.S, self.key, name.strip())

    def category(self, F: Optional[FusionSystem] = None) -> OrbitCategory:
        E = F if F is not None else self.F
        family = family_for(E, self.family)
        if not family.certified:
            raise ConfigError("The family is not closed under F-conjugacy and overgroups")
        return build_orbit_category(E, family)


def _infer_prime(G: FiniteGroup, sylow_flag: Optional[int]) -> int:
    if sylow_flag is not None:
        return sylow_flag
    pk = prime_power(G.order)
    if pk is None:
        raise ConfigError("--sylow is required when the group is not a p-group")
    return pk[0]


def load_seed_homs(path: str, G: FiniteGroup, S: SubgroupHandle) -> list:
    """
    Read [{"generators": [[images...], ...], "images": [[images...], ...]}, ...];
    each entry is a homomorphism from the subgroup the generators span into S.
    """
    try:
        data = json.loads(Path(path).read_text())
        entries = [([G.element(g) for g in e["generators"]], [G.element(g) for g in e["images"]]) for e in data]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"Unreadable seed file {path}: {e}")
    seeds = []
    for gens, imgs in entries:
        domain = subgroup_generated(G, gens)
        hom = hom_from_generator_images(domain, gens, imgs, S)
        if hom is None:
            raise ConfigError(f"Seed in {path} does not extend to a homomorphism into S")
        seeds.append(hom)
    return seeds


def _select_family(F: FusionSystem, S: SubgroupHandle, key: str, selector: str) -> SubgroupFamily:
    if selector == "centric":
        return centric_family(F)
    if selector == "centric-radical-closure":
        return centric_radical_closure(F)
    try:
        names = json.loads(Path(selector).read_text())
    except (OSError, ValueError) as e:
        raise ConfigError(f"Unknown family selector {selector}: {e}")
    return certify_family(F, [resolve_subgroup(S, key, str(n)) for n in names], name=Path(selector).name)


def resolve_run(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Validate selectors and build the fusion system before any computation."""
    G, key = parse_group_source(args.group)
    if G.order > settings.group_size_cap:
        raise CapacityError("group_size_cap", settings.group_size_cap, G.order)
    p = _infer_prime(G, args.sylow)
    S = sylow(G, p)
    if args.seed_homs:
        F = generate(S, load_seed_homs(args.seed_homs, G, S), p, name=key)
    else:
        F = realize(G, S, p, name=key)
    family = _select_family(F, S, key, args.family)
    logger.info("Run: %s, |G|=%d, |S|=%d, %d subgroups of S", key, G.order, S.order, len(F.subgroups))
    return RunConfig(args.group, key, G, p, S, F, family, settings, args)


def functors_for(run: RunConfig, O: OrbitCategory) -> List[FunctorModule]:
    """--functor, or H^j for j = 0..jmax when it is absent."""
    selector = run.args.functor
    if selector is None:
        return [cohomology_functor(O, j) for j in range(run.args.jmax + 1)]
    if selector == "constant":
        return [constant_functor(O)]
    if selector.startswith("cohomology:"):
        try:
            j = int(selector.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"Invalid functor selector: {selector}")
        return [cohomology_functor(O, j)]
    try:
        data = json.loads(Path(selector).read_text())
    except (OSError, ValueError) as e:
        raise ConfigError(f"Unknown functor selector {selector}: {e}")
    return [load_functor(O, data)]


def pruning_data(run: RunConfig) -> Tuple[List[SubgroupHandle], FusionSystem, Triple]:
    """A from --prune, H pruned from F, and the triple (H, N_F(P), N_H(P)) of the first P."""
    if not run.args.prune:
        raise ConfigError("--prune is required for this command")
    pruned = [run.subgroup(name) for name in run.args.prune.split(",") if name.strip()]
    H = pruned_subsystem(run.F, pruned)
    return pruned, H, pruning_triple(H, run.F, pruned[0])


def second_subgroup(run: RunConfig) -> SubgroupHandle:
    name = run.args.q or (run.args.prune or "").split(",")[0]
    if not name:
        raise ConfigError("--q (or --prune) is required for this command")
    return run.subgroup(name)


# ------------------------------
# Output
# ------------------------------

def emit(run: RunConfig, command: str, body: Dict[str, Any]) -> Path:
    path = Path(run.args.out) if run.args.out else default_report_path(run.settings.output_dir, command)
    write_report(path, report_envelope(command, run.provenance(), body))
    print(f"Report written to {path}")
    return path


def verdict_code(verdicts: Sequence[ScenarioVerdict]) -> int:
    return max((STATUS_EXIT[v.status] for v in verdicts), default=EXIT_OK)


def print_verdict(verdict: ScenarioVerdict) -> None:
    for check in verdict.hypotheses:
        print("  " + format_status(f"[hypothesis] {check.name}", check.holds))
    for check in verdict.conclusions:
        print("  " + format_status(f"[conclusion] {check.name}", check.holds))
    print(format_status(verdict.name, verdict.passed, verdict.status))


# ------------------------------
# Commands
# ------------------------------

def cmd_classify(run: RunConfig) -> int:
    reports = classify(run.F)
    names = subgroup_names(run.S, run.key)
    rows = []
    for r in reports:
        row = r.to_row()
        row["name"] = names.get(r.subgroup.mask, "")
        rows.append(row)
    frame = records_frame(rows, ["index", "name", "order", "centric", "radical", "essential", "fully_normalized", "out_order"])
    print(format_frame(frame))
    body = {
        "subgroups": rows,
        "centric": sum(r.centric for r in reports),
        "essential": sum(r.essential for r in reports),
    }
    print(format_status("classify", True, f"{len(rows)} subgroups, {body['centric']} centric, {body['essential']} essential"))
    emit(run, "classify", body)
    return EXIT_OK


def cmd_limits(run: RunConfig) -> int:
    O = run.category()
    method = run.args.method
    if run.args.functor is None:
        table = {}
        for j, M in enumerate(functors_for(run, O)):
            for n, d in enumerate(higher_limit_dims(O, M, run.args.nmax, method)):
                table[(n, j)] = d
        print(format_frame(limits_frame(table)))
        body: Dict[str, Any] = {"table": [{"n": n, "j": j, "dim": d} for (n, j), d in sorted(table.items())]}
    else:
        M = functors_for(run, O)[0]
        dims = higher_limit_dims(O, M, run.args.nmax, method)
        print(format_frame(pd.DataFrame({"dim": dims}, index=[f"lim^{n}" for n in range(len(dims))])))
        body = {"functor": M.name, "dims": dims}
    body["objects"] = len(O.objects)
    body["morphisms"] = O.morphism_count
    emit(run, "limits", body)
    return EXIT_OK


def cmd_dump(run: RunConfig) -> int:
    body = dump_fusion_system(run.F)
    print(format_status("dump", True, f"{run.F.morphism_count} morphisms over {len(run.F.subgroups)} subgroups"))
    emit(run, "dump", body)
    return EXIT_OK


def cmd_graph(run: RunConfig) -> int:
    _, _, T = pruning_data(run)
    O = run.category(T.F)
    graphs = [build_rep_graph(T, P) for P in O.objects]
    rows = [
        {
            "subgroup": g.subgroup.label(),
            "vertices": g.vertex_count,
            "edges": g.edge_count,
            "components": g.components(),
            "tree": g.is_tree(),
        }
        for g in graphs
    ]
    print(format_frame(records_frame(rows)))
    body = {
        "graphs": [g.to_dict() for g in graphs],
        "dot": [g.to_dot(f"rep_{k}") for k, g in enumerate(graphs)],
    }
    emit(run, "graph", body)
    return EXIT_OK


def cmd_census(run: RunConfig) -> int:
    rows = small_group_census(run.p, j_max=run.args.jmax, n_max=run.args.nmax, method=run.args.method)
    print(format_frame(records_frame(rows, ["group", "order", "system", "morphisms", "sharp"])))
    sharp = all(r["sharp"] for r in rows)
    print(format_status("census", sharp, f"{len(rows)} saturated fusion systems"))
    emit(run, "census", {"systems": rows, "all_sharp": sharp})
    return EXIT_OK if sharp else EXIT_ALARM


def _per_functor(run: RunConfig, O: OrbitCategory, check: Callable[[FunctorModule], Any]) -> List[Any]:
    return [check(M) for M in functors_for(run, O)]


def verify_theorem_a(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    _, _, T = pruning_data(run)
    O = run.category(T.F)
    ledgers = _per_functor(run, O, lambda M: theorem_a_check(T, O.family, M, run.args.nmax, run.args.method))
    return [l.verdict for l in ledgers], {"ledgers": [l.to_dict() for l in ledgers]}


def verify_lim1(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    _, _, T = pruning_data(run)
    O = run.category(T.F)
    verdicts = _per_functor(run, O, lambda M: limone_identification(T, O.family, M))
    return verdicts, {"verdicts": [v.to_dict() for v in verdicts]}


def verify_theorem_b(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    pruned, H, _ = pruning_data(run)
    verdict = theorem_b_scenario(run.F, H, pruned, run.args.jmax, run.args.nmax, run.family, run.args.method)
    return [verdict], {"verdict": verdict.to_dict()}


def verify_theorem_c(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    _, _, T = pruning_data(run)
    Q = second_subgroup(run)
    group = find_realizing_group(run.group.whole(), T)
    verdicts = [
        theorem_c_scenario(T, Q, j, run.args.nmax, run.family, group, run.args.method)
        for j in range(run.args.jmax + 1)
    ]
    return verdicts, {"verdicts": [v.to_dict() for v in verdicts]}


def verify_splitting(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    _, _, T = pruning_data(run)
    Q = second_subgroup(run)
    group = find_realizing_group(run.group.whole(), T)
    verdicts = [splitting_check(T, Q, j, run.family, group) for j in range(run.args.jmax + 1)]
    return verdicts, {"verdicts": [v.to_dict() for v in verdicts]}


def verify_two_essential(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    pruned, _, _ = pruning_data(run)
    P, Q = pruned[0], second_subgroup(run)
    O = run.category()
    verdicts = _per_functor(run, O, lambda M: two_essential_scenario(run.F, P, Q, M, run.args.nmax, O.family, run.args.method))
    return verdicts, {"verdicts": [v.to_dict() for v in verdicts]}


def verify_trees(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    pruned, H, T = pruning_data(run)
    family = family_for(T.F, run.family)
    if not family.certified:
        verdict = ScenarioVerdict("pruning-vanishing")
        verdict.require("family closed under conjugacy and overgroups", False, family.to_dict())
        return [verdict], {"verdict": verdict.to_dict()}
    verdict = pruning_vanishing_check(run.F, H, pruned[0], family)
    criteria = [tree_criteria_check(T, P).to_dict() for P in family]
    print(format_frame(records_frame(criteria, ["subgroup", "status", "is_tree"])))
    return [verdict], {"verdict": verdict.to_dict(), "criteria": criteria}


def verify_sharpness(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    report = sharpness_suite(run.F, run.args.jmax, run.args.nmax, run.family, run.args.method)
    verdict = ScenarioVerdict("sharpness")
    verdict.require("F saturated", report.saturated)
    if report.saturated:
        print(format_frame(report.frame()))
        verdict.conclude("lim^n H^j = 0 for n >= 1", report.sharp, report.nonzero_cells() or None)
    return [verdict], {"verdict": verdict.to_dict(), "report": report.to_dict()}


def verify_shapiro(run: RunConfig) -> Tuple[List[ScenarioVerdict], Dict[str, Any]]:
    _, _, T = pruning_data(run)
    O = run.category(T.F)
    verdict = ScenarioVerdict("shapiro")
    dims: Dict[str, List[Dict[str, List[int]]]] = {}
    for label, H in (("F1", T.F1), ("F2", T.F2), ("Fe", T.Fe)):
        pairs = _per_functor(run, O, lambda M: subsystem_limit_pair(T.F, H, M, run.args.nmax, O.family, run.args.method))
        dims[label] = [{"ext": ext, "lim": lim} for ext, lim in pairs]
        mismatched = [dims[label][k] for k, (ext, lim) in enumerate(pairs) if ext != lim]
        verdict.conclude(f"Ext of the induced constant of {label} = limits over {label}", not mismatched, mismatched or None)
    verdict.details["dims"] = dims
    return [verdict], {"verdict": verdict.to_dict()}


VERIFIERS: Dict[str, Callable[[RunConfig], Tuple[List[ScenarioVerdict], Dict[str, Any]]]] = {
    "theorem-a": verify_theorem_a,
    "theorem-b": verify_theorem_b,
    "theorem-c": verify_theorem_c,
    "two-essential": verify_two_essential,
    "trees": verify_trees,
    "sharpness": verify_sharpness,
    "splitting": verify_splitting,
    "shapiro": verify_shapiro,
    "lim1": verify_lim1,
}


def cmd_verify(run: RunConfig) -> int:
    scenario = run.args.scenario
    verdicts, body = VERIFIERS[scenario](run)
    for verdict in verdicts:
        print_verdict(verdict)
    code = verdict_code(verdicts)
    body["status"] = {STATUS_EXIT[s]: s for s in STATUS_EXIT}[code]
    emit(run, f"verify-{scenario}", body)
    return code


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "classify": cmd_classify,
    "limits": cmd_limits,
    "graph": cmd_graph,
    "dump": cmd_dump,
    "census": cmd_census,
    "verify": cmd_verify,
}


# ------------------------------
# Argument parsing
# ------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group", default="preset:symmetric:4", help="preset:<name>[:<int>...] or a group JSON file")
    parser.add_argument("--sylow", type=int, default=None, help="prime p (inferred for p-groups)")
    parser.add_argument("--family", default="centric", help="centric | centric-radical-closure | JSON list of subgroup names")
    parser.add_argument("--functor", default=None, help="cohomology:<j> | constant | functor JSON file")
    parser.add_argument("--jmax", type=int, default=3)
    parser.add_argument("--nmax", type=int, default=3)
    parser.add_argument("--out", default=None, help="report path")
    parser.add_argument("--prune", default=None, help="comma separated subgroup names")
    parser.add_argument("--q", default=None, help="second subgroup for theorem-c, splitting and two-essential")
    parser.add_argument("--seed-homs", default=None, help="JSON file of generating homomorphisms into S")
    parser.add_argument("--method", choices=LIMIT_METHODS, default=None)
    parser.add_argument("--log-level", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusion-limits", description="Higher limits over orbit categories of fusion systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "limits", "graph", "dump", "census"):
        _add_common(sub.add_parser(name))
    verify = sub.add_parser("verify")
    verify.add_argument("scenario", choices=VERIFY_SCENARIOS)
    _add_common(verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK

    try:
        overrides = settings_from_module(config)
        if args.method:
            overrides["limit_method"] = args.method
        if args.log_level:
            overrides["log_level"] = args.log_level
        settings = use_settings(load_settings(overrides))
        configure_logging(settings.log_level)
        if args.jmax < 0 or args.nmax < 0:
            raise ConfigError("--jmax and --nmax must be nonnegative")
        run = resolve_run(args, settings)
        return COMMANDS[args.command](run)
    except (ConfigError, ArgumentError, CapacityError) as e:
        print(format_status("error", False, str(e)), file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as e:
        print(format_status("invariant violation", False, f"{e} {e.witness or ''}"), file=sys.stderr)
        return EXIT_ALARM
    except FusionLimitsError as e:
        print(format_status("error", False, str(e)), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
