"""Bit-exact JSON encodings for the file formats and reports.

Rationals are carried as exact strings ("13/4"), never floats, so every
report round-trips and identical runs serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .dynamics import SearchReport, TransferResult
from .errors import ParseError
from .fibrations import FibrationAtlas, FibrationClass
from .isometry import Isometry, validate_isometry
from .lattice import Lattice, Sublattice, build_lattice, discriminant_group, signature
from .roots import RootSet
from .salem import SalemDecomposition


def frac_str(f: Fraction) -> str:
    return str(Fraction(f))


def parse_frac(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {s!r}") from exc


def lattice_to_json(lat: Lattice) -> dict:
    return {"dim": lat.dim, "gram": [list(row) for row in lat.gram]}


def lattice_from_json(data) -> Lattice:
    if not isinstance(data, dict) or "gram" not in data:
        raise ParseError("lattice file must be an object with a 'gram' key")
    gram = data["gram"]
    if "dim" in data and data["dim"] != len(gram):
        raise ParseError("'dim' does not match the gram matrix size")
    return build_lattice(gram)


def vector_from_json(data) -> tuple[int, ...]:
    if isinstance(data, dict):
        data = data.get("coords")
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ParseError("vector must be a JSON list of integers (or {'coords': [...]})")
    return tuple(data)


def sublattice_to_json(s: Sublattice) -> dict:
    return {"basis": [list(row) for row in s.basis]}


def matrix_from_json(data) -> tuple[tuple[int, ...], ...]:
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) for x in row) for row in data
    ):
        raise ParseError("matrix must be a JSON list of integer rows (or {'matrix': [...]})")
    return tuple(tuple(row) for row in data)


def poly_from_json(data) -> tuple[int, ...]:
    if isinstance(data, dict):
        data = data.get("coeffs")
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ParseError("polynomial must be a JSON list of integers (or {'coeffs': [...]})")
    return tuple(data)


def poly_to_json(p) -> dict:
    return {"coeffs": list(p)}


def rootset_to_json(rs: RootSet) -> list:
    return [list(v) for v in rs.roots]


def lattice_report(lat: Lattice) -> dict:
    return {
        "dim": lat.dim,
        "signature": list(signature(lat)),
        "determinant": lat.determinant,
        "discriminant": list(discriminant_group(lat).invariant_factors),
    }


def fibration_class_to_json(c: FibrationClass) -> dict:
    return {
        "e": list(c.e),
        "rank_perp": c.rank_perp,
        "rank_perp_two": c.rank_perp_two,
        "infinite": c.infinite,
    }


def atlas_to_json(atlas: FibrationAtlas) -> dict:
    return {
        "classes": [fibration_class_to_json(c) for c in atlas.classes],
        "span_rank": atlas.span_rank,
        "certified_full": atlas.certified_full,
    }


def decomposition_to_json(dec: SalemDecomposition) -> dict:
    return {
        "cyclotomic_factors": [[n, m] for n, m in dec.cyclotomic_factors],
        "salem_factor": list(dec.salem_factor) if dec.salem_factor else None,
        "salem_degree": dec.salem_degree,
        "spectral_radius": [frac_str(dec.spectral_radius[0]), frac_str(dec.spectral_radius[1])],
        "entropy_is_zero": dec.entropy_is_zero,
    }


def isometry_to_json(g: Isometry) -> dict:
    return {"matrix": [list(row) for row in g.matrix], "det": g.det}


def isometry_from_json(lat: Lattice, data) -> Isometry:
    return validate_isometry(lat, matrix_from_json(data))


def search_report_to_json(rep: SearchReport) -> dict:
    return {
        "best_word": list(rep.best_word),
        "matrix": [list(row) for row in rep.best_isometry.matrix],
        "char_poly": list(
            rep.decomposition.reassemble()
        ),
        "decomposition": decomposition_to_json(rep.decomposition),
        "achieved_degree": rep.achieved_degree,
        "target_degree": rep.target_degree,
        "words_examined": rep.words_examined,
        "seed": rep.seed,
    }


def transfer_result_to_json(res: TransferResult) -> dict:
    return {
        "scale": res.scale,
        "walk_steps": res.walk.steps,
        "reference": list(res.reference),
        "classes": [fibration_class_to_json(c) for c in res.classes],
    }


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
