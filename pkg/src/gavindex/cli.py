"""Command-line interface: JSON documents in, JSON reports out.

Exit codes: 0 success, 1 invalid input, 2 not Fano or not
Q-Gorenstein, 3 internal invariant breach.  All rationals are
serialized as exact fraction strings, never floats, and reports are
printed with sorted keys so equal runs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import tropical
from .acomplex import (
    build_complex,
    cone_multiplier,
    distance_report,
    gorenstein_index_via_complex,
    gorenstein_index_via_cones,
)
from .classify import brute_force_box, classify_index, fingerprint
from .errors import (
    DegenerateCell,
    GavError,
    InvalidCandidate,
    MalformedFanCone,
    NotAmple,
    NotLatticeMeasurable,
    NotQGorenstein,
    NotQGorensteinOnCone,
    NotQuasiprojectiveSetup,
)
from .gav_core import (
    ArrangementData,
    anticanonical_class,
    degree_map,
    fan_from_index_sets,
    is_fano,
    make_data,
    moving_cone,
    validate,
)
from .polyhedra import Cone, Fan, cone_from_generators, make_fan, toric_gorenstein_index

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_QGORENSTEIN = 2
EXIT_BREACH = 3

INDEX_CAP = 5


class DocumentError(GavError):
    """An input document failed to parse or has the wrong shape."""


# ---------------------------------------------------------------------------
# input documents


@dataclass(frozen=True)
class InputDocument:
    """Parsed matrix-data document.

    Column order in D and fan index sets: the blocks 0..r in order,
    then the m extra columns.  A fan of None means the default ample
    fan of the anticanonical class is used downstream.
    """

    r: int
    c: int
    n: tuple[int, ...]
    m: int
    l: tuple[tuple[int, ...], ...]
    A: tuple[tuple[Fraction, ...], ...]
    D: tuple[tuple[int, ...], ...]
    fan: tuple[tuple[int, ...], ...] | None = None


def parse_input(text: str) -> InputDocument:
    """Parse a JSON input document, reporting malformed text with location."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise DocumentError("the top level must be a JSON object")
    missing = [k for k in ("r", "c", "n", "m", "l", "A", "D") if k not in raw]
    if missing:
        raise DocumentError("missing fields: " + ", ".join(missing))
    try:
        doc = InputDocument(
            r=int(raw["r"]),
            c=int(raw["c"]),
            n=tuple(int(x) for x in raw["n"]),
            m=int(raw["m"]),
            l=tuple(tuple(int(x) for x in li) for li in raw["l"]),
            A=tuple(tuple(Fraction(str(x)) for x in row) for row in raw["A"]),
            D=tuple(tuple(int(x) for x in row) for row in raw["D"]),
            fan=(
                tuple(tuple(int(i) for i in cone) for cone in raw["fan"])
                if raw.get("fan") is not None
                else None
            ),
        )
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed field: {exc}") from exc
    return doc


def print_input(doc: InputDocument) -> str:
    """Serialize an input document; parse_input inverts this exactly."""
    raw = {
        "r": doc.r,
        "c": doc.c,
        "n": list(doc.n),
        "m": doc.m,
        "l": [list(li) for li in doc.l],
        "A": [[str(x) for x in row] for row in doc.A],
        "D": [list(row) for row in doc.D],
    }
    if doc.fan is not None:
        raw["fan"] = [list(cone) for cone in doc.fan]
    return json.dumps(raw, indent=2, sort_keys=True) + "\n"


def document_data(doc: InputDocument) -> ArrangementData:
    return make_data(r=doc.r, c=doc.c, n=doc.n, m=doc.m, l=doc.l, A=doc.A, D=doc.D)


def _load(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# report serialization


def _plain(obj):
    """Recursively convert report values into JSON-serializable ones."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, frozenset):
        return sorted(_plain(x) for x in obj)
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    return obj


def _cone_dict(cone: Cone | None):
    if cone is None:
        return None
    return {
        "dim": cone.dim,
        "rays": _plain(cone.rays),
        "lineality": _plain(cone.lineality),
    }


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(_plain(report), indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _data_or_violations(doc: InputDocument):
    """Build arrangement data, returning (data, violations)."""
    data = document_data(doc)
    return data, validate(data)


def _resolve_fan(doc: InputDocument, data: ArrangementData) -> Fan:
    """The listed fan, or the ample fan of -K when the document has none."""
    if doc.fan is not None:
        return fan_from_index_sets(data, doc.fan)
    fano, fan = is_fano(data)
    if not fano:
        raise NotAmple(
            "the anticanonical class is not ample and no fan was supplied"
        )
    return fan


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> tuple[int, dict]:
    doc = parse_input(_load(args.file))
    data, violations = _data_or_violations(doc)
    if doc.fan is not None and not violations:
        try:
            fan_from_index_sets(data, doc.fan)
        except (ValueError, GavError) as exc:
            violations.append(f"fan: {exc}")
    report = {
        "command": "validate",
        "valid": not violations,
        "violations": violations,
    }
    return (EXIT_OK if not violations else EXIT_INVALID), report


def cmd_info(args) -> tuple[int, dict]:
    doc = parse_input(_load(args.file))
    data, violations = _data_or_violations(doc)
    if violations:
        return EXIT_INVALID, {"command": "info", "violations": violations}
    dd = degree_map(data)
    ak = anticanonical_class(data)
    mov = moving_cone(data)
    report = {
        "command": "info",
        "free_rank": dd.free_rank,
        "torsion": list(dd.torsion),
        "degrees": [
            {"label": label, "free": list(u.free), "tors": list(u.tors)}
            for label, u in zip(data.column_labels(), dd.degrees)
        ],
        "anticanonical": {"free": list(ak.free), "tors": list(ak.tors)},
        "moving_cone_rays": _plain(mov.rays),
    }
    return EXIT_OK, report


def cmd_fan(args) -> tuple[int, dict]:
    doc = parse_input(_load(args.file))
    data, violations = _data_or_violations(doc)
    if violations:
        return EXIT_INVALID, {"command": "fan", "violations": violations}
    fan = _resolve_fan(doc, data)
    trop = tropical.trop_structure(data.r, data.c, data.s)
    labels = data.column_labels()
    cones = []
    for iset, cone in zip(fan.index_sets, fan.maximal):
        kind = tropical.classify_cone(trop, cone)
        cones.append(
            {
                "columns": list(iset),
                "labels": [labels[i] for i in iset],
                "dim": cone.dim,
                "kind": kind.kind,
                "leaf_indices": (
                    sorted(kind.leaf_indices)
                    if kind.leaf_indices is not None
                    else None
                ),
                "elementary": kind.elementary,
            }
        )
    report = {
        "command": "fan",
        "ambient": fan.ambient,
        "source": "listed" if doc.fan is not None else "anticanonical",
        "rays": _plain(data.columns()),
        "maximal_cones": cones,
    }
    return EXIT_OK, report


def cmd_trop(args) -> tuple[int, dict]:
    doc = parse_input(_load(args.file))
    data, violations = _data_or_violations(doc)
    if violations:
        return EXIT_INVALID, {"command": "trop", "violations": violations}
    trop = tropical.trop_structure(data.r, data.c, data.s)
    report = {
        "command": "trop",
        "ambient": trop.ambient,
        "lineality_dim": trop.s,
        "leaves": [
            {"indices": sorted(indices), "dim": cone.dim}
            for indices, cone in trop.leaves
        ],
    }
    return EXIT_OK, report


def cmd_acomplex(args) -> tuple[int, dict]:
    doc = parse_input(_load(args.file))
    data, violations = _data_or_violations(doc)
    if violations:
        return EXIT_INVALID, {"command": "acomplex", "violations": violations}
    fan = _resolve_fan(doc, data)
    cx = build_complex(data, fan)
    rep = distance_report(cx)
    multipliers = [
        {"columns": list(iset), "multiplier": cone_multiplier(data, cone)}
        for iset, cone in zip(fan.index_sets, fan.maximal)
    ]
    report = {
        "command": "acomplex",
        "vertices": _plain(sorted(cx.boundary_vertices())),
        "boundary_cells": [
            {
                "vertices": _plain(sorted(cell.vertices)),
                "rays": _plain(cell.rays),
                "lineality": _plain(cell.lineality),
                "distance": dist,
            }
            for cell, dist in zip(cx.boundary, rep.distances)
        ],
        "cone_multipliers": multipliers,
        "gorenstein_index": rep.index,
    }
    return EXIT_OK, report


def _toric_fan(raw: dict) -> Fan:
    if not isinstance(raw, dict) or "rays" not in raw or "fan" not in raw:
        raise DocumentError('a toric document needs "rays" and "fan" fields')
    try:
        rays = tuple(tuple(int(x) for x in v) for v in raw["rays"])
        isets = tuple(tuple(int(i) for i in cone) for cone in raw["fan"])
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed field: {exc}") from exc
    for iset in isets:
        if any(i < 0 or i >= len(rays) for i in iset):
            raise DocumentError(f"ray index out of range in cone {list(iset)}")
    cones = [
        cone_from_generators(tuple(rays[i] for i in iset)) for iset in isets
    ]
    return make_fan(cones, validate=True, index_sets=isets)


def cmd_gorenstein(args) -> tuple[int, dict]:
    text = _load(args.file)
    if args.toric:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(
                f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        fan = _toric_fan(raw)
        value = toric_gorenstein_index(fan)
        return EXIT_OK, {
            "command": "gorenstein",
            "method": "toric",
            "gorenstein_index": value,
        }
    doc = parse_input(text)
    data, violations = _data_or_violations(doc)
    if violations:
        return EXIT_INVALID, {"command": "gorenstein", "violations": violations}
    fan = _resolve_fan(doc, data)
    report: dict = {"command": "gorenstein", "method": args.method}
    if args.method in ("complex", "both"):
        report["via_complex"] = gorenstein_index_via_complex(data, fan)
    if args.method in ("cones", "both"):
        report["via_cones"] = gorenstein_index_via_cones(data, fan)
    if args.method == "both":
        if report["via_complex"] != report["via_cones"]:
            report["error"] = "internal invariant breach: the two methods disagree"
            return EXIT_BREACH, report
        report["gorenstein_index"] = report["via_complex"]
    else:
        report["gorenstein_index"] = report[f"via_{args.method}"]
    return EXIT_OK, report


def cmd_classify(args) -> tuple[int, dict]:
    if not 1 <= args.index <= INDEX_CAP:
        return EXIT_INVALID, {
            "command": "classify",
            "error": f"index must be between 1 and {INDEX_CAP}",
        }
    try:
        settings = tuple(
            sorted({int(s) for s in args.settings.split(",") if s.strip()})
        )
    except ValueError:
        return EXIT_INVALID, {
            "command": "classify",
            "error": f"cannot parse settings list {args.settings!r}",
        }
    result = classify_index(args.index, settings=settings, jobs=args.jobs)
    key = {
        (c.setting, c.params): i
        for i, g in enumerate(result.groups)
        for c in g
    }
    report = {
        "command": "classify",
        "index": result.index,
        "settings": [
            {
                "setting": s.setting,
                "enumerated": [list(p) for p in s.enumerated],
                "accepted": [
                    {
                        "params": list(c.params),
                        "gorenstein_index": c.index,
                        "group": key[(c.setting, c.params)],
                        "fingerprint": _plain(fingerprint(c)),
                    }
                    for c in s.accepted
                ],
                "rejected": [
                    {
                        "params": list(v.params),
                        "reason": v.reason,
                        "detail": _plain(v.detail),
                    }
                    for v in s.rejected
                ],
            }
            for s in result.settings
        ],
        "groups": [
            [{"setting": c.setting, "params": list(c.params)} for c in g]
            for g in result.groups
        ],
    }
    return EXIT_OK, report


def cmd_box_search(args) -> tuple[int, dict]:
    tuples = brute_force_box(args.setting, args.index, args.bound)
    report = {
        "command": "oracle box-search",
        "setting": args.setting,
        "index": args.index,
        "bound": args.bound,
        "accepted": [list(v) for v in tuples],
    }
    return EXIT_OK, report


# ---------------------------------------------------------------------------
# argument parsing and dispatch


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; remap that to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gavindex",
        description=(
            "Exact anticanonical-complex and Gorenstein-index computations "
            "for general arrangement varieties."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="JSON input document")
        p.add_argument("--out", help="write the report to this file")
        return p

    with_file("validate", "check a document and list violations").set_defaults(
        handler=cmd_validate
    )
    with_file("info", "grading group, degrees and moving cone").set_defaults(
        handler=cmd_info
    )
    with_file("fan", "fan cones with tropical classifications").set_defaults(
        handler=cmd_fan
    )
    with_file("trop", "tropical leaf structure of the data").set_defaults(
        handler=cmd_trop
    )
    with_file(
        "acomplex", "anticanonical complex, distances and multipliers"
    ).set_defaults(handler=cmd_acomplex)

    goren = with_file("gorenstein", "Gorenstein index by one or both methods")
    goren.add_argument(
        "--method",
        choices=("complex", "cones", "both"),
        default="both",
    )
    goren.add_argument(
        "--toric",
        action="store_true",
        help="treat the document as a bare fan and use the toric oracle",
    )
    goren.set_defaults(handler=cmd_gorenstein)

    classify = sub.add_parser(
        "classify", help="enumerate and verify candidates for an index"
    )
    classify.add_argument("--index", type=int, required=True)
    classify.add_argument(
        "--settings",
        default="1,2,3,4,5",
        help="comma-separated setting ids (default: all)",
    )
    classify.add_argument("--jobs", type=int, default=1)
    classify.add_argument("--out", help="write the report to this file")
    classify.set_defaults(handler=cmd_classify)

    oracle = sub.add_parser("oracle", help="independent cross-checks")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)
    box = oracle_sub.add_parser(
        "box-search", help="brute-force box scan of one setting"
    )
    box.add_argument("--setting", type=int, required=True)
    box.add_argument("--index", type=int, required=True)
    box.add_argument("--bound", type=int, default=60)
    box.add_argument("--out", help="write the report to this file")
    box.set_defaults(handler=cmd_box_search)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report = args.handler(args)
    except DocumentError as exc:
        code, report = EXIT_INVALID, {"error": str(exc)}
    except (MalformedFanCone, InvalidCandidate) as exc:
        cone = getattr(exc, "cone", None)
        code, report = EXIT_INVALID, {"error": str(exc), "cone": _cone_dict(cone)}
    except ValueError as exc:
        code, report = EXIT_INVALID, {"error": str(exc)}
    except NotQGorensteinOnCone as exc:
        code, report = EXIT_NOT_QGORENSTEIN, {
            "error": str(exc),
            "cone": _cone_dict(exc.cone),
        }
    except (
        NotQGorenstein,
        NotAmple,
        NotQuasiprojectiveSetup,
        DegenerateCell,
        NotLatticeMeasurable,
    ) as exc:
        code, report = EXIT_NOT_QGORENSTEIN, {"error": str(exc)}
    except AssertionError as exc:
        code, report = EXIT_BREACH, {
            "error": f"internal invariant breach: {exc}"
        }
    _emit(report, getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
