"""
Command-line front end (`python -m app`, installed as `shyp`)

Results go to stdout, logs to stderr. Exit codes: 0 success, 1 failed
verification, 2 bad arguments, 3 a configured cap refused the request.
"""
from typing import Callable, Dict, Optional, Sequence
import argparse
import logging
import sys

from app.config import settings
from app.core import service as core
from app.errors import CapExceededError, InvalidInputError, ShypError, VerificationError
from app.formatting import (
    dump_json, edge_json, edge_text, facet_json, facet_text, fraction_str, path_json,
    permutahedron_json, polytope_json, subset_json, subset_text, triangulation_json
)
from app.models import OrderKind, OutputFormat, SHypersimplex
from app.permutahedra import service as perm
from app.triangulation import service as tri
from app.verify import service as verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _emit(args, payload, text: str):
    if args.format == OutputFormat.JSON.value:
        print(dump_json(payload))
    else:
        print(text)

def _polytope(args) -> SHypersimplex:
    return core.shypersimplex(args.d, args.S)


# --- Subcommands ---

def cmd_vertices(args) -> int:
    P = _polytope(args)
    _emit(args, [subset_json(A) for A in core.vertices(P)], core.format_vertices_text(P).rstrip("\n"))
    return EXIT_OK

def cmd_edges(args) -> int:
    found = core.edges(_polytope(args))
    _emit(args, [edge_json(e) for e in found], "\n".join(edge_text(e) for e in found))
    return EXIT_OK

def cmd_facets(args) -> int:
    found = core.facets(_polytope(args))
    _emit(args, [facet_json(f) for f in found], "\n".join(facet_text(f) for f in found))
    return EXIT_OK

def cmd_decompose(args) -> int:
    pieces = core.cayley_decomposition(_polytope(args))
    _emit(args, [polytope_json(Q) for Q in pieces], "\n".join(Q.label() for Q in pieces))
    return EXIT_OK

def cmd_slice(args) -> int:
    layer = core.hyperplane_slice(_polytope(args), args.level)
    _emit(args, [subset_json(A) for A in layer], "\n".join(subset_text(A) for A in layer))
    return EXIT_OK

def cmd_triangulate(args) -> int:
    P = _polytope(args)
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    order = tri.random_order(P, seed) if args.order == OrderKind.RANDOM.value else tri.lex_order(P)
    T = tri.triangulate(P, order)
    volume = tri.triangulation_volume(T)
    lines = [" ".join(str(m) for m in simplex) for simplex in T.masks()]
    lines.append(f"# {len(T)} simplices, volume {fraction_str(volume)}")
    _emit(args, triangulation_json(T, volume), "\n".join(lines))
    return EXIT_OK

def cmd_volume(args) -> int:
    volume = fraction_str(tri.volume(_polytope(args)))
    _emit(args, {"volume": volume}, volume)
    return EXIT_OK

def cmd_paths(args) -> int:
    paths = perm.monotone_paths(_polytope(args))
    text = "\n".join(" < ".join(subset_text(A) for A in W.chain) for W in paths)
    _emit(args, [path_json(W) for W in paths], text)
    return EXIT_OK

def cmd_mpp(args) -> int:
    Q = perm.monotone_path_polytope(_polytope(args))
    count = perm.perm_vertex_count(Q)
    text = f"Pi({','.join(str(x) for x in Q.p)}) with {count} vertices"
    _emit(args, permutahedron_json(Q, count), text)
    return EXIT_OK

def cmd_tdcount(args) -> int:
    t = tri.halfcube_pull_count(args.d)
    _emit(args, t, str(t))
    return EXIT_OK

def cmd_extbound(args) -> int:
    P = _polytope(args)
    bound, facets = core.extension_upper_bound(P), core.facet_count(P)
    _emit(args, {"bound": bound, "facets": facets}, f"extension bound {bound}, {facets} facets")
    return EXIT_OK

def cmd_verify(args) -> int:
    report = verify.run_checks(args.check, args.max_d, args.seed)
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{status} {check.name} ({check.cases} cases)")
        lines.extend(f"  - {failure}" for failure in check.failures)
        lines.extend(f"  * {note}" for note in check.notes)
    payload = report.model_dump()
    payload["passed"] = report.passed
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_VERIFICATION


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "vertices": cmd_vertices,
    "edges": cmd_edges,
    "facets": cmd_facets,
    "decompose": cmd_decompose,
    "slice": cmd_slice,
    "triangulate": cmd_triangulate,
    "volume": cmd_volume,
    "paths": cmd_paths,
    "mpp": cmd_mpp,
    "tdcount": cmd_tdcount,
    "extbound": cmd_extbound,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shyp", description=settings.APP_NAME)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    polytope = argparse.ArgumentParser(add_help=False, parents=[common])
    polytope.add_argument("-d", type=int, required=True, help="ambient dimension")
    polytope.add_argument("-S", required=True, help="comma list, `even` (halfcube) or `all` (cube)")
    polytope.add_argument("--max-d", type=int, default=None, help="override the enumeration cap")

    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("vertices", "edges", "facets", "decompose", "volume", "paths", "mpp", "extbound"):
        sub.add_parser(name, parents=[polytope])
    slicer = sub.add_parser("slice", parents=[polytope])
    slicer.add_argument("--level", type=int, required=True)
    pull = sub.add_parser("triangulate", parents=[polytope])
    pull.add_argument("--order", choices=[o.value for o in OrderKind], default=OrderKind.LEX.value)
    pull.add_argument("--seed", type=int, default=None)

    count = sub.add_parser("tdcount", parents=[common])
    count.add_argument("-d", type=int, required=True)

    check = sub.add_parser("verify", parents=[common])
    check.add_argument("--against", choices=["oracle"], default="oracle")
    check.add_argument("--check", action="append", choices=list(verify.CHECKS),
                       help="run only this check (repeatable)")
    check.add_argument("--max-d", type=int, default=None, help="largest dimension swept")
    check.add_argument("--seed", type=int, default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose or settings.DEBUG else settings.LOG_LEVEL
    logging.basicConfig(level=level, stream=sys.stderr)

    previous_cap = settings.MAX_D
    if args.command != "verify" and getattr(args, "max_d", None) is not None:
        settings.MAX_D = args.max_d
    try:
        return COMMANDS[args.command](args)
    except InvalidInputError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except CapExceededError as e:
        logger.error(f"Refused: {e}")
        return EXIT_CAP
    except VerificationError as e:
        logger.error(f"Verification failed: {e}")
        return EXIT_VERIFICATION
    except ShypError as e:
        logger.error(f"Internal error: {e}")
        return EXIT_VERIFICATION
    finally:
        settings.MAX_D = previous_cap


if __name__ == "__main__":
    sys.exit(main())
