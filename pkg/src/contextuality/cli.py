"""Command-line workbench.

Subcommands: classify, witness, dutchbook, verify, export, catalog-list.
Models come from the catalog by name or from a JSON document (an empirical
model, or a quantum experiment ingested through the Born rule with the
snapping flags).  Exit codes: 0 success, 2 validation failure, 3
enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as _catalog
from .classifier import Tier, classify
from .dutchbook import convexity_hierarchy, find_dutch_book, verify_certificate
from .errors import ContextualityError, EnumerationCapError, SchemaError
from .exports import export_bundle_diagram, export_nerve, structured_to_text
from .model import EmpiricalModel, check_model
from .quantum import (
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_SNAP_TOLERANCE,
    experiment_from_dict,
    quantum_to_empirical,
)
from .serialize import (
    KIND_CERTIFICATE,
    KIND_EXPERIMENT,
    KIND_EXTENSION,
    KIND_MODEL,
    KIND_WITNESS,
    certificate_from_dict,
    certificate_to_dict,
    extension_from_dict,
    load,
    model_from_dict,
    witness_from_dict,
    witness_to_dict,
)
from .errors import DEFAULT_ENUMERATION_CAP
from .violations import (
    additivity_violation,
    has_classical_extension,
    logical_subadditivity_violation,
    strong_subadditivity_violation,
    tier_violation_witness,
    verify_extension,
    verify_witness,
)
from .wps import build_combinatorial_rep


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("model_positional", nargs="?", metavar="MODEL",
                        help="catalog name or path to a model/experiment document")
    parser.add_argument("--model", dest="model_flag", metavar="NAME|PATH",
                        help="catalog name or path (alternative to the positional)")
    parser.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                        help="enumeration cap (default 2^20)")
    parser.add_argument("--snap-tol", type=float, default=DEFAULT_SNAP_TOLERANCE,
                        help="snapping tolerance for quantum ingestion")
    parser.add_argument("--denom-bound", type=int, default=DEFAULT_DENOMINATOR_BOUND,
                        help="denominator bound for snapped rationals")


def _resolve_model(args) -> tuple[str, EmpiricalModel]:
    chosen = [v for v in (args.model_positional, getattr(args, "model_flag", None)) if v]
    if len(chosen) != 1:
        raise SchemaError("supply exactly one model, positionally or via --model")
    name = chosen[0]
    try:
        return name, _catalog.entry(name).model
    except KeyError:
        pass
    path = Path(name)
    if not path.exists():
        raise SchemaError(f"{name!r} is neither a catalog model nor an existing file")
    document = load(path)
    kind = document.get("kind")
    if kind == KIND_MODEL:
        model = model_from_dict(document)
        report = check_model(model)
        if not report.ok:
            raise SchemaError(f"model file fails the no-signaling check: {report}")
        return path.stem, model
    if kind == KIND_EXPERIMENT:
        experiment = experiment_from_dict(document)
        return path.stem, quantum_to_empirical(
            experiment, snap_tolerance=args.snap_tol,
            denominator_bound=args.denom_bound, cap=args.cap,
        )
    raise SchemaError(f"cannot use a document of kind {kind!r} as a model")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_classify(args) -> int:
    name, model = _resolve_model(args)
    verdict = classify(model, cap=args.cap)
    rep = build_combinatorial_rep(model, cap=args.cap)
    strong, _ = strong_subadditivity_violation(rep)
    logical, _ = logical_subadditivity_violation(rep)
    additive, _ = additivity_violation(rep)
    convexity = convexity_hierarchy(rep)
    classical = has_classical_extension(rep) is not None
    book = find_dutch_book(rep)
    structured = {
        "model": name,
        "tier": str(verdict.tier),
        "contextual": verdict.tier is not Tier.NONCONTEXTUAL,
        "additivity_hierarchy": {
            "strong_subadditivity_violation": strong,
            "logical_subadditivity_violation": logical,
            "additivity_violation_all_monotonic_extensions": additive,
        },
        "convexity_hierarchy": {
            "strong": convexity.strong_violation,
            "logical": convexity.logical_violation,
            "convexity": convexity.probabilistic_violation,
        },
        "classical_extension_exists": classical,
        "dutch_bookable": book is not None,
    }
    if args.format == "structured":
        _emit(json.dumps(structured, indent=2) + "\n", args.out)
        return 0
    lines = [
        f"model: {name}",
        f"tier: {verdict.tier}",
        "",
        "additivity-violation hierarchy (maximal-context events)",
        f"  maximal subadditivity violation : {_yesno(strong)}",
        f"  subadditivity violation         : {_yesno(logical)}",
        f"  additivity violation, every     : {_yesno(additive)}",
        "    monotonic extension",
        "",
        "convexity-violation hierarchy (maximal-context events)",
        f"  strong violation                : {_yesno(convexity.strong_violation)}",
        f"  logical violation               : {_yesno(convexity.logical_violation)}",
        f"  convexity violation             : {_yesno(convexity.probabilistic_violation)}",
        "",
        f"classical extension exists: {_yesno(classical)}",
        f"dutch-bookable: {_yesno(book is not None)}",
    ]
    if verdict.logical_witness is not None:
        lines.insert(2, f"non-extendable support section: {verdict.logical_witness}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_TIER_FLAGS = {
    "strong": Tier.STRONG,
    "logical": Tier.LOGICAL,
    "probabilistic": Tier.PROBABILISTIC,
}


def _cmd_witness(args) -> int:
    name, model = _resolve_model(args)
    rep = build_combinatorial_rep(model, cap=args.cap)
    if args.tier:
        tier = _TIER_FLAGS[args.tier]
    else:
        tier = classify(model, cap=args.cap).tier
        if tier is Tier.NONCONTEXTUAL:
            raise SchemaError(f"{name} is noncontextual; no violation witness exists")
    witness = tier_violation_witness(rep, tier, cap=args.cap)
    if not verify_witness(rep, witness):
        raise ContextualityError("constructed witness failed re-verification")
    if args.format == "structured":
        _emit(json.dumps(witness_to_dict(rep, witness), indent=2) + "\n", args.out)
        return 0
    lines = [
        f"model: {name}",
        f"violation: {witness.kind}",
        f"defect: {witness.defect}",
        f"collection ({len(witness.collection)} events):",
    ]
    for event in witness.collection:
        lines.append("  {" + ",".join(rep.sorted_points(event)) + "}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_dutchbook(args) -> int:
    name, model = _resolve_model(args)
    rep = build_combinatorial_rep(model, cap=args.cap)
    certificate = find_dutch_book(rep)
    if certificate is None:
        _emit(f"model: {name}\nno dutch book: the set function is a convex "
              "combination of point functionals\n", args.out)
        return 0
    if args.format == "structured":
        document = certificate_to_dict(rep, certificate)
        document["payoffs"] = {p: str(certificate.payoff(rep, p)) for p in rep.points}
        _emit(json.dumps(document, indent=2) + "\n", args.out)
        return 0
    lines = [
        f"model: {name}",
        f"guaranteed loss: {certificate.loss_bound}",
        "stakes:",
    ]
    for event, stake in certificate.stakes:
        lines.append(f"  {str(stake):>6}  on {{{','.join(rep.sorted_points(event))}}}")
    lines.append("payoff per sample point (all at most the negated loss bound):")
    worst = None
    for p in rep.points:
        value = certificate.payoff(rep, p)
        worst = value if worst is None else max(worst, value)
        lines.append(f"  {p}: {value}")
    lines.append(f"worst case: {worst}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    document = load(Path(args.file))
    kind = document.get("kind")
    if kind == KIND_MODEL:
        model = model_from_dict(document)
        report = check_model(model)
        if not report.ok:
            sys.stderr.write(str(report) + "\n")
            return 2
        _emit("model document verified: tables are exact distributions "
              "agreeing on overlaps\n", None)
        return 0
    if kind == KIND_EXPERIMENT:
        experiment = experiment_from_dict(document)
        quantum_to_empirical(experiment, snap_tolerance=args.snap_tol,
                             denominator_bound=args.denom_bound, cap=args.cap)
        _emit("experiment document verified: snapped tables pass the "
              "no-signaling check\n", None)
        return 0
    name, model = _resolve_model(args)
    rep = build_combinatorial_rep(model, cap=args.cap)
    if kind == KIND_CERTIFICATE:
        certificate = certificate_from_dict(rep, document)
        if verify_certificate(rep, certificate):
            _emit(f"certificate verified against {name}: every point loses at "
                  f"least {certificate.loss_bound}\n", None)
            return 0
        sys.stderr.write("certificate failed: some point does not lose the bound\n")
        return 2
    if kind == KIND_WITNESS:
        witness = witness_from_dict(rep, document)
        if verify_witness(rep, witness):
            _emit(f"witness verified against {name}: defect {witness.defect} recomputed\n", None)
            return 0
        sys.stderr.write("witness failed re-verification\n")
        return 2
    if kind == KIND_EXTENSION:
        extension, extension_kind = extension_from_dict(rep, document)
        verdict = verify_extension(rep, extension, extension_kind, cap=args.cap)
        if verdict.ok:
            _emit(f"extension verified against {name} as {extension_kind}\n", None)
            return 0
        sys.stderr.write(str(verdict) + "\n")
        return 2
    raise SchemaError(f"cannot verify a document of kind {kind!r}")


def _cmd_export(args) -> int:
    name, model = _resolve_model(args)
    if args.kind == "bundle":
        text, structured = export_bundle_diagram(model)
    else:
        rep = build_combinatorial_rep(model, cap=args.cap)
        text, structured = export_nerve(rep)
    if args.format == "structured":
        _emit(structured_to_text(structured), args.out)
    else:
        _emit(text, args.out)
    return 0


def _cmd_catalog_list(args) -> int:
    lines = []
    for entry in _catalog.catalog():
        experiment = " (bundled experiment)" if entry.experiment_factory else ""
        lines.append(f"{entry.name:18} {entry.expected_tier.value:14}{experiment}")
        lines.append(f"    {entry.notes}")
    _emit("\n".join(lines) + "\n", getattr(args, "out", None))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contextuality",
        description="Classify models in the contextuality hierarchy and build "
                    "their additivity-violation and Dutch-book witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="tier plus both violation hierarchies")
    _add_model_arguments(p)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("witness", help="violation witness for a tier")
    _add_model_arguments(p)
    p.add_argument("--tier", choices=tuple(_TIER_FLAGS))
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("dutchbook", help="stake certificate and payoff table")
    _add_model_arguments(p)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_dutchbook)

    p = sub.add_parser("verify", help="re-check a certificate, witness, extension, or model file")
    _add_model_arguments(p)
    p.add_argument("--file", required=True, help="document to verify")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("export", help="bundle or nerve description")
    _add_model_arguments(p)
    p.add_argument("--kind", choices=("bundle", "nerve"), default="bundle")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_export)

    p = sub.add_parser("catalog-list", help="bundled models and their expected tiers")
    p.set_defaults(handler=_cmd_catalog_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except EnumerationCapError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (ContextualityError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
