"""Command-line interface: model dumps, solution generation, verification,
catalogs, and strata reports, with deterministic JSON output.

Subcommands:

* ``model``     print the graded Lie model matrices
* ``basis``     all basis solutions for a geometry and representation
* ``solution``  one solution from explicit tractor coordinates
* ``catalog``   the cataloged classical families with sign flags
* ``verify``    run a flat-operator oracle over a solution-system JSON
* ``strata``    classify rational sample points of a system

Exit codes: 0 success, 1 validation failure, 2 verification failure.
Verification failure is data, not a crash: the residuals are reported as
JSON on stdout.  All output is canonical, so identical invocations
produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bggsolve, catalogs, flatverify, strata
from .exactmath import MultiPoly, format_rational, parse_rational
from .liemodel import (
    Conformal,
    GeometryKind,
    GradedLieModel,
    Projective,
    build_model,
    geometry_str,
    parse_geometry,
)
from .repforge import (
    Representation,
    build_representation,
    canonical_descriptor,
    parse_descriptor,
)

__all__ = ["main", "operator_for_system", "system_field", "run_verification"]


class CommandError(Exception):
    """Validation failure; maps to exit code 1."""


def _dump(payload, args) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump_text(lines, args) -> None:
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _geometry(args) -> GeometryKind:
    try:
        return parse_geometry(args.geometry)
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _representation(args) -> tuple[GradedLieModel, Representation]:
    geometry = _geometry(args)
    try:
        model = build_model(geometry)
        rep = build_representation(model, args.rep)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    return model, rep


def _matrix_json(matrix) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in matrix.entries]


def cmd_model(args) -> int:
    geometry = _geometry(args)
    model = build_model(geometry)
    payload = {
        "geometry": geometry_str(geometry),
        "ambient_dim": model.ambient_dim,
        "grading_element": _matrix_json(model.grading_element),
        "generators": [_matrix_json(g) for g in model.g_minus],
        "form": None if model.form is None else _matrix_json(model.form),
        "signature": None if model.signature is None else list(model.signature),
    }
    if args.format == "text":
        lines = [f"geometry {payload['geometry']} ambient dimension {model.ambient_dim}"]
        for i, gen in enumerate(model.g_minus, start=1):
            lines.append(f"B{i}: " + repr(gen))
        lines.append("E: " + repr(model.grading_element))
        _dump_text(lines, args)
    else:
        _dump(payload, args)
    return 0


def _systems_payload(systems) -> list[dict]:
    return [bggsolve.system_to_dict(s) for s in systems]


def _system_lines(system) -> list[str]:
    lines = [
        f"{geometry_str(system.geometry)} {system.rep_descriptor} "
        f"degree bound {system.degree_bound}"
    ]
    for label, poly in system.coefficients.items():
        lines.append(f"  {label}: {poly.to_text()}")
    return lines


def cmd_basis(args) -> int:
    _, rep = _representation(args)
    systems = bggsolve.solution_basis(rep)
    if args.format == "text":
        lines = []
        for system in systems:
            lines.extend(_system_lines(system))
        _dump_text(lines, args)
    else:
        _dump(_systems_payload(systems), args)
    return 0


def _parse_tractor(text: str, dim: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    try:
        values = tuple(parse_rational(p) for p in parts)
    except ValueError as exc:
        raise CommandError(f"bad tractor coordinates: {exc}") from None
    if len(values) != dim:
        raise CommandError(
            f"tractor has {len(values)} coordinates, representation needs {dim}"
        )
    return values


def cmd_solution(args) -> int:
    _, rep = _representation(args)
    v0 = _parse_tractor(args.tractor, rep.dim)
    system = bggsolve.solution_from_tractor(rep, v0)
    if args.format == "text":
        _dump_text(_system_lines(system), args)
    else:
        _dump(bggsolve.system_to_dict(system), args)
    return 0


def cmd_catalog(args) -> int:
    geometry = _geometry(args)
    try:
        entries = catalogs.catalog(geometry, args.rep)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    payload = {
        "geometry": geometry_str(geometry),
        "rep": canonical_descriptor(parse_descriptor(args.rep)),
        "fixtures": [
            {
                "name": entry.name,
                "sign_status": entry.sign_status,
                "slots": [
                    {"label": label, "poly": poly.to_text()}
                    for label, poly in entry.coefficients.items()
                ],
                **(
                    {}
                    if entry.printed_coefficients is None
                    else {
                        "printed_slots": [
                            {"label": label, "poly": poly.to_text()}
                            for label, poly in entry.printed_coefficients.items()
                        ]
                    }
                ),
            }
            for entry in entries
        ],
    }
    if args.format == "text":
        lines = []
        for entry in entries:
            lines.append(f"{entry.name} [{entry.sign_status}]")
            for label, poly in entry.coefficients.items():
                if not poly.is_zero():
                    lines.append(f"  {label}: {poly.to_text()}")
        _dump_text(lines, args)
    else:
        _dump(payload, args)
    return 0


# -- verification bridge -----------------------------------------------------------

OPERATORS = (
    "killing",
    "conformal-killing-vector",
    "conformal-killing-form",
    "tracefree-hessian",
    "higher-density",
)


def operator_for_system(system: bggsolve.SolutionSystem) -> tuple[str, dict]:
    """Default oracle and parameters for a system's geometry and module."""
    node = parse_descriptor(system.rep_descriptor)
    geometry = system.geometry
    if isinstance(geometry, Projective):
        if node == ("ext", 2, ("dual", ("std",))):
            return "killing", {"valence": 1}
        if node == ("cartan",):
            return "killing", {"valence": 2}
        if node == ("dual", ("std",)):
            return "higher-density", {"order": 2}
        if node[0] == "sym" and node[2] == ("dual", ("std",)):
            return "higher-density", {"order": node[1] + 1}
        raise CommandError(
            f"no flat operator for projective module {system.rep_descriptor}"
        )
    if node == ("std",):
        return "tracefree-hessian", {}
    if node == ("ext", 2, ("std",)):
        return "conformal-killing-vector", {}
    if node[0] == "ext" and node[2] == ("std",) and node[1] >= 3:
        return "conformal-killing-form", {"valence": node[1] - 1}
    raise CommandError(f"no flat operator for conformal module {system.rep_descriptor}")


def _atom_index(label: str) -> int:
    if not label.startswith("e") or not label[1:].isdigit():
        raise CommandError(f"unexpected slot label {label!r}")
    return int(label[1:])


def system_field(system: bggsolve.SolutionSystem, operator: str):
    """Convert a solution system's slots to the oracle's input object.

    Symmetric valence-2 slots use the symmetrized-product normalization:
    an off-diagonal slot phi_ij contributes 1/2 to each of the two
    components, a diagonal slot contributes 1.
    """
    n = system.nvars
    if operator in ("tracefree-hessian", "higher-density"):
        (poly,) = system.coefficients.values()
        return poly
    if operator == "conformal-killing-vector":
        components = {}
        for label, poly in system.coefficients.items():
            first, _, _ = label.partition("^")
            components[(_atom_index(first) - 1,)] = poly
        return flatverify.vector_field(n, components)
    if operator == "conformal-killing-form":
        # Slot frames are metric-lowered coordinate frames, so honest
        # coordinate components pick up eps_i per slot index.
        eps = system.geometry.signature
        components = {}
        for label, poly in system.coefficients.items():
            parts = label.split("^")
            key = tuple(_atom_index(p) - 1 for p in parts[:-1])
            factor = 1
            for i in key:
                factor *= eps[i]
            components[key] = poly.scale(factor)
        valence = len(next(iter(system.coefficients)).split("^")) - 1
        return flatverify.alt_field(n, valence, components)
    if operator == "killing":
        sample = next(iter(system.coefficients))
        if sample.startswith("("):
            components: dict = {}
            for label, poly in system.coefficients.items():
                key = _killing2_indices(label)
                if key[0] == key[1]:
                    components[key] = poly
                else:
                    components[key] = poly.scale(Fraction(1, 2))
            return flatverify.sym_field(n, 2, components)
        components = {}
        for label, poly in system.coefficients.items():
            _, _, second = label.partition("^")
            components[(_atom_index(second.rstrip("*")) - 1,)] = poly
        return flatverify.sym_field(n, 1, components)
    raise CommandError(f"unknown operator {operator!r}")


def _killing2_indices(label: str) -> tuple[int, int]:
    # "(e0*^ei*).(e0*^ej*)" -> (i-1, j-1)
    halves = label.split(").(")
    if len(halves) != 2:
        raise CommandError(f"unexpected slot label {label!r}")
    out = []
    for half in halves:
        cleaned = half.strip("()")
        _, _, second = cleaned.partition("^")
        out.append(_atom_index(second.rstrip("*")) - 1)
    return tuple(sorted(out))  # type: ignore[return-value]


def run_verification(system: bggsolve.SolutionSystem, operator: str) -> dict:
    """Run one oracle over a system; returns the residual report."""
    name, params = operator_for_system(system)
    if operator != name:
        raise CommandError(
            f"operator {operator!r} does not apply to {system.rep_descriptor} "
            f"over {geometry_str(system.geometry)}; expected {name!r}"
        )
    payload = system_field(system, operator)
    if operator == "killing":
        residual = flatverify.killing_residual(payload)
    elif operator == "conformal-killing-vector":
        metric = flatverify.FlatMetric.from_geometry(system.geometry)
        residual = flatverify.conformal_killing_vector_residual(payload, metric)
    elif operator == "conformal-killing-form":
        metric = flatverify.FlatMetric.from_geometry(system.geometry)
        residual = flatverify.conformal_killing_form_residual(payload, metric)
    elif operator == "tracefree-hessian":
        metric = flatverify.FlatMetric.from_geometry(system.geometry)
        residual = flatverify.tracefree_hessian_residual(payload, metric)
    elif operator == "higher-density":
        residual = flatverify.higher_density_residual(payload, params["order"])
    else:
        raise CommandError(f"unknown operator {operator!r}")
    failures = [
        {"component": ",".join(str(i + 1) for i in key), "poly": poly.to_text()}
        for key, poly in residual.items()
        if not poly.is_zero()
    ]
    return {
        "operator": operator,
        "holds": not failures,
        "residuals": failures,
    }


def _load_system(path: str) -> bggsolve.SolutionSystem:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(f"cannot read system JSON: {exc}") from None
    try:
        return bggsolve.system_from_dict(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise CommandError(f"malformed system JSON: {exc}") from None


def cmd_verify(args) -> int:
    system = _load_system(args.input)
    report = run_verification(system, args.operator)
    _dump(report, args)
    return 0 if report["holds"] else 2


def _parse_grid(text: str) -> strata.GridSpec:
    parts = text.split(",")
    if len(parts) != 2:
        raise CommandError("grid must be perAxis,bound")
    try:
        return strata.GridSpec(per_axis=int(parts[0]), bound=parse_rational(parts[1]))
    except ValueError as exc:
        raise CommandError(f"bad grid: {exc}") from None


def _parse_points(text: str) -> strata.PointList:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            points.append(tuple(parse_rational(v) for v in chunk.split(",")))
        except ValueError as exc:
            raise CommandError(f"bad point {chunk!r}: {exc}") from None
    return strata.PointList(points=tuple(points))


def cmd_strata(args) -> int:
    system = _load_system(args.input)
    if args.grid and args.points:
        raise CommandError("give either --grid or --points, not both")
    if args.grid:
        spec: strata.SampleSpec = _parse_grid(args.grid)
    elif args.points:
        spec = _parse_points(args.points)
    else:
        raise CommandError("one of --grid or --points is required")
    try:
        report = strata.classify_points(system, spec, args.scheme)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    _dump(strata.report_to_dict(report), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bggpoly",
        description=(
            "Exact polynomial solution systems of first BGG equations on flat "
            "projective and conformal model geometries."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geometry=False, rep=False):
        if geometry:
            p.add_argument(
                "--geometry",
                required=True,
                help="projective:N or conformal:P,Q",
            )
        if rep:
            p.add_argument(
                "--rep",
                required=True,
                help="std | dual(R) | ext(r,R) | sym(k,R) | tensor(R1,R2) | cartanS2L2",
            )
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write output to a file instead of stdout")

    p_model = sub.add_parser("model", help="dump the graded Lie model")
    common(p_model, geometry=True)
    p_model.set_defaults(func=cmd_model)

    p_basis = sub.add_parser("basis", help="emit all basis solutions")
    common(p_basis, geometry=True, rep=True)
    p_basis.set_defaults(func=cmd_basis)

    p_solution = sub.add_parser("solution", help="solution from tractor coordinates")
    common(p_solution, geometry=True, rep=True)
    p_solution.add_argument(
        "--tractor", required=True, help="comma-separated rationals, e.g. 1,0,1/2"
    )
    p_solution.set_defaults(func=cmd_solution)

    p_catalog = sub.add_parser("catalog", help="emit cataloged classical families")
    common(p_catalog, geometry=True, rep=True)
    p_catalog.set_defaults(func=cmd_catalog)

    p_verify = sub.add_parser("verify", help="run a flat-operator oracle")
    p_verify.add_argument("--in", dest="input", required=True, help="system JSON path or -")
    p_verify.add_argument("--operator", required=True, choices=OPERATORS)
    p_verify.add_argument("--format", choices=("json", "text"), default="json")
    p_verify.add_argument("--out", help="write output to a file instead of stdout")
    p_verify.set_defaults(func=cmd_verify)

    p_strata = sub.add_parser("strata", help="classify rational sample points")
    p_strata.add_argument("--in", dest="input", required=True, help="system JSON path or -")
    p_strata.add_argument("--scheme", required=True, help="zero-nonzero or density-sign")
    p_strata.add_argument("--grid", help="perAxis,bound")
    p_strata.add_argument("--points", help="semicolon-separated points, e.g. 1,0;0,1/2")
    p_strata.add_argument("--format", choices=("json", "text"), default="json")
    p_strata.add_argument("--out", help="write output to a file instead of stdout")
    p_strata.set_defaults(func=cmd_strata)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "code": 1}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
