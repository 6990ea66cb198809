"""Command-line front end: JSON in, JSON report out.

Exit codes: 0 success, 1 domain error (report carries the error name),
2 parse or I/O error.  Identical invocations produce byte-identical
reports; seeds and budgets are echoed back for reproducibility.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import jsonio
from .dynamics import build_generators, search_max_salem, transfer_fibrations
from .errors import DomainError, ParseError, UnknownCommand
from .fibrations import exceptional_sublattice, fibration_analysis, scan_isotropic
from .isometry import char_poly, in_so_plus, preserves_positive_cone
from .lattice import Lattice
from .roots import enumerate_norm_vectors
from .salem import entropy_interval, is_salem, salem_decomposition

COMMANDS = (
    "info",
    "roots",
    "fibration",
    "scan",
    "isometry",
    "salem",
    "search",
    "transfer",
    "exceptional",
)


@dataclass
class RunConfig:
    command: str
    lattice: str | None = None
    ambient: str | None = None
    vector: str | None = None
    matrix: str | None = None
    poly: str | None = None
    out: str | None = None
    seed: int = 0
    coord_bound: int = 2
    max_word_len: int = 6
    budget: int = 2000
    walk_budget: int = 64
    workers: int = 1
    norm: int = -2
    tolerance: Fraction = field(default_factory=lambda: Fraction(1, 10**6))

    def __post_init__(self):
        for name in ("coord_bound", "max_word_len", "budget", "walk_budget", "workers"):
            if getattr(self, name) <= 0:
                raise ParseError(f"option {name} must be positive")
        if self.tolerance <= 0:
            raise ParseError("tolerance must be a positive rational")


def _load_lattice(path: str | None) -> Lattice:
    if path is None:
        raise ParseError("missing --lattice PATH")
    return jsonio.lattice_from_json(jsonio.load_json_file(path))


def _parse_inline_json(text: str | None, what: str):
    if text is None:
        raise ParseError(f"missing --{what}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--{what} is not valid JSON: {exc}") from exc


def run(config: RunConfig) -> tuple[int, dict]:
    """Dispatch one command; returns (exit_code, report)."""
    try:
        report = _dispatch(config)
        return 0, report
    except ParseError:
        raise
    except DomainError as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        extra = getattr(exc, "report", None)
        if extra is not None:
            report["best_so_far"] = jsonio.search_report_to_json(extra)
        return 1, report


def _dispatch(config: RunConfig) -> dict:
    cmd = config.command
    if cmd == "info":
        return jsonio.lattice_report(_load_lattice(config.lattice))
    if cmd == "roots":
        lat = _load_lattice(config.lattice)
        rs = enumerate_norm_vectors(lat, config.norm)
        return {"norm": config.norm, "roots": jsonio.rootset_to_json(rs)}
    if cmd == "fibration":
        lat = _load_lattice(config.lattice)
        e = jsonio.vector_from_json(_parse_inline_json(config.vector, "vector"))
        return jsonio.fibration_class_to_json(fibration_analysis(lat, e))
    if cmd == "scan":
        lat = _load_lattice(config.lattice)
        return jsonio.atlas_to_json(scan_isotropic(lat, config.coord_bound))
    if cmd == "isometry":
        lat = _load_lattice(config.lattice)
        g = jsonio.isometry_from_json(lat, jsonio.load_json_file(config.matrix))
        report = {
            "det": g.det,
            "char_poly": list(char_poly(g)),
            "decomposition": jsonio.decomposition_to_json(
                salem_decomposition(char_poly(g))
            ),
        }
        if config.vector is not None:
            h = jsonio.vector_from_json(_parse_inline_json(config.vector, "vector"))
            report["preserves_positive_cone"] = preserves_positive_cone(g, h)
            report["in_so_plus"] = in_so_plus(g, h)
        return report
    if cmd == "salem":
        p = jsonio.poly_from_json(_parse_inline_json(config.poly, "poly"))
        ok = is_salem(p)
        report = {"is_salem": ok}
        if ok:
            dec = salem_decomposition(p)
            lo, hi = entropy_interval(dec, config.tolerance)
            report["decomposition"] = jsonio.decomposition_to_json(dec)
            report["entropy"] = [jsonio.frac_str(lo), jsonio.frac_str(hi)]
        return report
    if cmd == "search":
        lat = _load_lattice(config.lattice)
        atlas = scan_isotropic(lat, config.coord_bound)
        gens = build_generators(lat, atlas, per_class=1)
        rep = search_max_salem(
            lat,
            gens,
            max_word_len=config.max_word_len,
            budget=config.budget,
            seed=config.seed,
            workers=config.workers,
        )
        out = jsonio.search_report_to_json(rep)
        lo, hi = entropy_interval(rep.decomposition, config.tolerance)
        out["entropy"] = [jsonio.frac_str(lo), jsonio.frac_str(hi)]
        return out
    if cmd == "transfer":
        lat_x = _load_lattice(config.lattice)
        if config.ambient is None:
            raise ParseError("missing --ambient PATH")
        lat_y = jsonio.lattice_from_json(jsonio.load_json_file(config.ambient))
        iota = jsonio.matrix_from_json(jsonio.load_json_file(config.matrix))
        atlas = scan_isotropic(lat_y, config.coord_bound)
        e_list = [c.e for c in atlas.infinite_classes]
        if config.vector is not None:
            h_y = jsonio.vector_from_json(_parse_inline_json(config.vector, "vector"))
        else:
            from .dynamics import find_positive_vector

            h_y = find_positive_vector(lat_y)
        res = transfer_fibrations(lat_x, lat_y, iota, e_list, h_y, config.walk_budget)
        return jsonio.transfer_result_to_json(res)
    if cmd == "exceptional":
        lat = _load_lattice(config.lattice)
        atlas = scan_isotropic(lat, config.coord_bound)
        sub = exceptional_sublattice(lat, atlas)
        return {
            "rank": sub.rank,
            "basis": [list(row) for row in sub.basis],
            "certified": atlas.certified_full,
        }
    raise UnknownCommand(f"unknown command {cmd!r}")


def load_corpus(directory) -> dict[str, Lattice]:
    """Parse every lattice JSON file in a directory, keyed by file stem.

    Parse failures are aggregated into one ParseError naming each bad file.
    """
    directory = Path(directory)
    out: dict[str, Lattice] = {}
    problems = []
    for path in sorted(directory.glob("*.json")):
        try:
            out[path.stem] = jsonio.lattice_from_json(jsonio.load_json_file(path))
        except DomainError as exc:
            problems.append(f"{path.name}: {exc}")
    if problems:
        raise ParseError("; ".join(problems))
    return out


def builtin_corpus() -> dict[str, Lattice]:
    """The shipped example lattices."""
    root = resources.files("salemlat").joinpath("corpus")
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            data = json.loads(entry.read_text(encoding="utf-8"))
            out[entry.name[: -len(".json")]] = jsonio.lattice_from_json(data)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="salemlat",
        description="Salem degrees and entropy of even hyperbolic lattice isometries",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--lattice", metavar="PATH")
        p.add_argument("--ambient", metavar="PATH")
        p.add_argument("--vector", metavar="JSON")
        p.add_argument("--matrix", metavar="PATH")
        p.add_argument("--poly", metavar="JSON")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bound", type=int, default=2, dest="coord_bound")
        p.add_argument("--max-word-len", type=int, default=6, dest="max_word_len")
        p.add_argument("--budget", type=int, default=2000)
        p.add_argument("--walk-budget", type=int, default=64, dest="walk_budget")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--norm", type=int, default=-2)
        p.add_argument("--tol", default="1/1000000", dest="tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            lattice=args.lattice,
            ambient=args.ambient,
            vector=args.vector,
            matrix=args.matrix,
            poly=args.poly,
            out=args.out,
            seed=args.seed,
            coord_bound=args.coord_bound,
            max_word_len=args.max_word_len,
            budget=args.budget,
            walk_budget=args.walk_budget,
            workers=args.workers,
            norm=args.norm,
            tolerance=jsonio.parse_frac(args.tolerance),
        )
        code, report = run(config)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    text = jsonio.dumps(report)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
