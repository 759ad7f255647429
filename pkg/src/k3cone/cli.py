"""Command-line surface: one problem file in, one JSON report out.

Exit codes: 0 success, 1 invalid input, 2 bound-limited result (every
certificate that failed is false in the report, which is still emitted),
3 internal error.  The env var K3CONE_CEILING overrides the doubling
ceiling for this invocation, taking precedence over the problem file's
``bounds.ceiling``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import report as rpt
from .cones import intersection, transform_cone
from .enumeration import (
    check_positive_closure,
    roots_up_to_degree,
    separating_roots,
)
from .errors import BoundExhausted, CoverageFailure, GeometryError
from .groups import filter_preserving_K
from .orbits import (
    ISOTROPY_ADVICE,
    OrbitTable,
    elliptic_orbits,
    find_isotropic,
    genus_orbits,
    nodal_orbits,
)
from .problem import Problem, parse_problem
from .sterk import (
    SterkDomain,
    group_words,
    reduce_to_domain,
    sterk_domain,
    verify_fundamental,
)
from .weyl import DOUBLING_CEILING, nef_test, nef_walls, walk_to_nef

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 200
DEFAULT_WORD_LENGTH = 3
DEFAULT_ISOTROPY_BOX = 10


def _parse_class(text: str, rank: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.strip().lstrip("[(").rstrip(")]").split(",")]
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise GeometryError(f"cannot parse class vector from {text!r}") from None
    if len(vec) != rank:
        raise GeometryError(f"class vector needs {rank} coordinates, got {len(vec)}")
    return vec


def _ceiling(problem: Problem) -> int | None:
    env = os.environ.get("K3CONE_CEILING")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise GeometryError(f"K3CONE_CEILING must be an integer, got {env!r}") from None
        if value < 0:
            raise GeometryError("K3CONE_CEILING must be non-negative")
        return value
    return problem.bounds.ceiling


def _enum_bound(problem: Problem, flag, default):
    if flag is not None:
        if flag < 0:
            raise GeometryError("--bound must be non-negative")
        return flag
    if problem.bounds.enumeration is not None:
        return problem.bounds.enumeration
    return default


def _nef(problem: Problem):
    return nef_walls(problem.lattice, problem.ample, ceiling=_ceiling(problem))


def _nef_certificates(nef) -> dict:
    return {"complete": nef.complete, "stable": nef.stable}


def _domain(problem: Problem, nef) -> SterkDomain:
    return sterk_domain(
        problem.lattice, problem.ample, problem.group, nef, ceiling=_ceiling(problem)
    )


def _cmd_validate(problem: Problem, args):
    lat = problem.lattice
    results = {
        "rank": str(lat.rank),
        "signature": ["1", str(lat.rank - 1)],
        "ample": rpt.encode(problem.ample),
        "ample_norm": str(lat.norm(problem.ample)),
        "generators_verified": str(len(problem.generator_matrices)),
        "group_size": str(len(problem.group.gens)),
        "supersingular_prime": None
        if problem.supersingular is None
        else str(problem.supersingular.prime),
    }
    return results, {}, []


def _cmd_roots(problem: Problem, args):
    bound = _enum_bound(problem, args.bound, 2 * problem.lattice.norm(problem.ample))
    roots = roots_up_to_degree(problem.lattice, problem.ample, bound)
    results = {
        "bound": str(bound),
        "count": str(len(roots)),
        "roots": rpt.encode(roots),
    }
    return results, {"complete": True}, []


def _cmd_walls(problem: Problem, args):
    nef = _nef(problem)
    warnings = []
    if not nef.polyhedral:
        warnings.append(
            "no walls up to a doubled bound: the chamber looks round; "
            "completeness cannot be certified by search"
        )
    elif not nef.complete:
        warnings.append("wall list is bound-limited; raise K3CONE_CEILING")
    return rpt.nef_payload(nef), _nef_certificates(nef), warnings


def _cmd_walk(problem: Problem, args):
    start = _parse_class(args.cls, problem.lattice.rank)
    endpoint, word = walk_to_nef(problem.lattice, problem.ample, start)
    results = {
        "start": rpt.encode(start),
        "endpoint": rpt.encode(endpoint),
        "reflections": rpt.encode(word),
        "steps": str(len(word)),
    }
    return results, {}, []


def _cmd_nef_test(problem: Problem, args):
    x = _parse_class(args.cls, problem.lattice.rank)
    check_positive_closure(problem.lattice, problem.ample, x)
    seps = separating_roots(problem.lattice, problem.ample, x)
    results = {
        "class": rpt.encode(x),
        "nef": not seps,
        "separating_roots": rpt.encode(seps),
    }
    return results, {}, []


def _dot_graph(problem: Problem, domain: SterkDomain) -> str:
    """Adjacency of the domain and its word-length-<=2 translates."""
    lat = problem.lattice
    cones = [("e", domain.cone)]
    for g, word in group_words(problem.group, 2):
        label = "*".join(f"g{i}" for i in word)
        cones.append((label, transform_cone(lat, domain.cone, g)))
    lines = ["graph chamber_adjacency {", '  node [shape=box];', '  "e" [style=bold];']
    for label, _ in cones[1:]:
        lines.append(f'  "{label}";')
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            meet = intersection(lat, cones[i][1], cones[j][1])
            if meet.dimension() == lat.rank - 1:
                lines.append(f'  "{cones[i][0]}" -- "{cones[j][0]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_sterk(problem: Problem, args):
    nef = _nef(problem)
    warnings = []
    try:
        domain = _domain(problem, nef)
    except BoundExhausted as e:
        domain = e.partial
        if domain is None:
            results = {"domain": None, "fundamental": None}
            return results, {"saturated": False}, [str(e)]
        warnings.append(str(e))
    seed = args.seed if args.seed is not None else (
        problem.bounds.seed if problem.bounds.seed is not None else DEFAULT_SEED
    )
    samples = problem.bounds.samples or DEFAULT_SAMPLES
    word_length = problem.bounds.word_length or DEFAULT_WORD_LENGTH
    cert = verify_fundamental(
        problem.lattice, problem.ample, problem.group, domain, nef,
        samples=samples, word_length=word_length, seed=seed,
    )
    results = {
        "domain": rpt.domain_payload(domain),
        "fundamental": rpt.fundamental_payload(cert),
    }
    certificates = {
        "saturated": domain.saturated,
        "rays_nef": cert.rays_nef,
        "coverage": cert.coverage_ok,
        "tiling": cert.tiling_ok,
    }
    if args.dot:
        Path(args.dot).write_text(_dot_graph(problem, domain))
    return results, certificates, warnings


def _cmd_reduce(problem: Problem, args):
    x = _parse_class(args.cls, problem.lattice.rank)
    nef = _nef(problem)
    domain = _domain(problem, nef)
    warnings = []
    certificates = {"saturated": domain.saturated, "in_domain": True}
    try:
        endpoint, reflections, word = reduce_to_domain(
            problem.lattice, problem.ample, problem.group, domain, x
        )
    except CoverageFailure as e:
        endpoint, reflections, word = e.reduced, (), ()
        certificates["in_domain"] = False
        warnings.append(
            "the reduced point missed the domain; the generators do not "
            "exhibit it as fundamental at this bound"
        )
    results = {
        "start": rpt.encode(x),
        "endpoint": rpt.encode(endpoint),
        "reflections": rpt.encode(reflections),
        "word": [str(i) for i in word],
    }
    return results, certificates, warnings


def _empty_table_payload(kind: str, genus) -> dict:
    return rpt.table_payload(
        OrbitTable(kind, genus, (), None, False)
    )


def _cmd_orbits(problem: Problem, args):
    lat, ample, group = problem.lattice, problem.ample, problem.group
    bound = _enum_bound(problem, args.bound, 4 * lat.norm(ample))
    nef = _nef(problem)
    warnings = []
    try:
        domain = _domain(problem, nef)
    except BoundExhausted as e:
        genus = args.genus if args.kind == "genus" else None
        results = _empty_table_payload(args.kind, genus)
        return results, {"saturated": False, "stable": False}, [str(e)]
    if args.kind == "nodal":
        table = nodal_orbits(lat, ample, group, nef, domain)
    elif args.kind == "elliptic":
        table = elliptic_orbits(lat, ample, group, domain, bound)
    else:
        if args.genus is None:
            raise GeometryError("--kind genus requires --genus")
        table = genus_orbits(lat, ample, group, nef, domain, args.genus, bound)
    certificates = {"saturated": domain.saturated, "stable": table.stable}
    if not table.stable:
        warnings.append("orbit table changed under one bound doubling")
    return rpt.table_payload(table), certificates, warnings


def _cmd_isotropic(problem: Problem, args):
    box = args.bound if args.bound is not None else DEFAULT_ISOTROPY_BOX
    found = find_isotropic(problem.lattice, box)
    warnings = []
    if found is None:
        warnings.append(f"no isotropic vector with coordinates up to {box}; not a proof of absence")
        if problem.lattice.rank >= 5:
            warnings.append(ISOTROPY_ADVICE)
    results = {
        "bound": str(box),
        "found": None if found is None else rpt.encode(found),
    }
    return results, {"found": found is not None}, warnings


def _cmd_filter_k(problem: Problem, args):
    if problem.supersingular is None:
        raise GeometryError("the problem file has no supersingular block")
    kept = filter_preserving_K(problem.lattice, problem.group, problem.supersingular)
    kept_set = {g.matrix for g in kept}
    dropped = [g.matrix for g in problem.group.gens if g.matrix not in kept_set]
    results = {
        "prime": str(problem.supersingular.prime),
        "kept": rpt.encode([g.matrix for g in kept]),
        "dropped": rpt.encode(dropped),
    }
    return results, {}, []


_HANDLERS = {
    "validate": _cmd_validate,
    "roots": _cmd_roots,
    "walls": _cmd_walls,
    "walk": _cmd_walk,
    "nef-test": _cmd_nef_test,
    "sterk": _cmd_sterk,
    "reduce": _cmd_reduce,
    "orbits": _cmd_orbits,
    "isotropic": _cmd_isotropic,
    "filter-k": _cmd_filter_k,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3cone",
        description="Exact chamber geometry for even hyperbolic lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_bound=False, with_class=False):
        p.add_argument("problem", help="path to a JSON problem file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for sampled verification (default 0)")
        if with_bound:
            p.add_argument("--bound", type=int, default=None)
        if with_class:
            p.add_argument("--class", dest="cls", required=True,
                           help="comma-separated integer coordinates")

    common(sub.add_parser("validate", help="parse and validate only"))
    common(sub.add_parser("roots", help="norm -2 classes up to a degree bound"),
           with_bound=True)
    common(sub.add_parser("walls", help="chamber walls with certification"))
    common(sub.add_parser("walk", help="reflect a class into the chamber"),
           with_class=True)
    common(sub.add_parser("nef-test", help="closed-chamber membership"),
           with_class=True)
    p = sub.add_parser("sterk", help="fundamental domain and its certificates")
    common(p)
    p.add_argument("--dot", help="write chamber adjacency graph to this file")
    common(sub.add_parser("reduce", help="reduce a class into the domain"),
           with_class=True)
    p = sub.add_parser("orbits", help="orbit table for a class kind")
    common(p, with_bound=True)
    p.add_argument("--kind", choices=["nodal", "elliptic", "genus"], required=True)
    p.add_argument("--genus", type=int, default=None)
    common(sub.add_parser("isotropic", help="bounded isotropic vector search"),
           with_bound=True)
    common(sub.add_parser("filter-k", help="generators preserving the mod-p subspace"))
    return parser


def _emit_error(kind: str, err: Exception) -> None:
    payload = {"error": kind, "type": type(err).__name__, "message": str(err)}
    where = getattr(err, "where", None)
    if where is not None:
        payload["where"] = where
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        text = Path(args.problem).read_text(encoding="utf-8")
    except OSError as e:
        _emit_error("input", e)
        return 1
    try:
        problem = parse_problem(text)
    except GeometryError as e:
        _emit_error("input", e)
        return 1
    try:
        results, certificates, warnings = _HANDLERS[args.command](problem, args)
        report = rpt.build_report(
            args.command, problem.digest, results, certificates, warnings
        )
    except GeometryError as e:
        _emit_error("input", e)
        return 1
    except Exception as e:  # pragma: no cover - defensive
        _emit_error("internal", e)
        return 3
    text = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return rpt.exit_code_for(report)


if __name__ == "__main__":
    sys.exit(main())
