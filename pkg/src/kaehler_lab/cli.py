"""Command line front end: ``kaehler-lab <command> <input.json>``.

Input is a JSON document::

    {"field": "Q" | {"Fp": p}, "n": 2,
     "components": [{"point": ["1", "0", "3/2"]}, {"primary": ["X1^2", ...]}]}

or the same with ``"ideal": [...]`` instead of ``"components"``.  Output is
deterministic: keys are sorted, rationals are written as ``"p/q"`` strings
and generators are sorted by degree, then by the term order.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .differents import (
    StabilizationError,
    graded_ideal_hilbert_by_normal_forms,
    kaehler_different,
    noether_different_colon,
)
from .fields import Field, ModInt, field_from_spec
from .poly import Polynomial, PolynomialSyntaxError, projective_ring
from .scheme import SchemeError, SchemeSpec, build_scheme, local_ring
from .structure import Analysis, cb_test, classify, genpos_equivalence_check, separators

__all__ = ["InputError", "InputDocument", "parse_input", "run", "main", "COMMANDS"]

log = logging.getLogger("kaehler_lab")

COMMANDS = ("hilbert", "kaehler", "noether", "conductor", "classify", "report")

EXIT_OK, EXIT_ERROR, EXIT_INCONSISTENT = 0, 1, 2


class InputError(ValueError):
    """Invalid input document; carries a code and, when known, a position."""

    def __init__(self, message, code="bad-input", line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.code = code
        self.line = line
        self.column = column


@dataclass
class InputDocument:
    field: Field
    n: int
    components: list | None
    ideal: list | None
    raw: dict
    digest: str

    def build(self, max_degree=None) -> SchemeSpec:
        return build_scheme(self.field, self.n, self.components, self.ideal, max_degree=max_degree)


# -- parsing ----------------------------------------------------------------


def _position(text: str, offset: int):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, literal: str, inner: int = 0):
    """Line and column of ``literal`` (a JSON string value) in the source."""
    start = text.find(json.dumps(literal))
    if start < 0:
        start = text.find(literal)
        if start < 0:
            return None, None
        return _position(text, start + inner)
    return _position(text, start + 1 + inner)


def _check_poly(ring, s, where, text):
    if not isinstance(s, str):
        raise InputError(f"{where}: polynomial must be a string, got {s!r}", "bad-polynomial")
    try:
        return ring.parse(s)
    except PolynomialSyntaxError as exc:
        line, col = _locate(text, s, exc.pos)
        msg = str(exc).split(" at line")[0]
        raise InputError(f"{where}: {msg} in {s!r}", "bad-polynomial", line, col) from None


def parse_input(source) -> InputDocument:
    """Parse and validate an input document given as a path, JSON text or dict."""
    if isinstance(source, dict):
        text = json.dumps(source)
        data = source
    else:
        if isinstance(source, Path) or not str(source).lstrip().startswith("{"):
            try:
                text = Path(source).read_text()
            except OSError as exc:
                raise InputError(f"cannot read {source}: {exc.strerror}", "io") from None
        else:
            text = str(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc.msg}", "bad-json", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object", "bad-input")
    unknown = set(data) - {"field", "n", "components", "ideal", "name", "description"}
    if unknown:
        raise InputError(f"unknown keys: {sorted(unknown)}", "bad-input")

    try:
        field = field_from_spec(data.get("field", "Q"))
    except ValueError as exc:
        raise InputError(str(exc), "bad-field") from None
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"n must be an integer >= 1, got {n!r}", "bad-n")
    has_c, has_i = "components" in data, "ideal" in data
    if has_c == has_i:
        raise InputError("give exactly one of 'components' or 'ideal'", "bad-input")

    ring = projective_ring(field, n)
    components = ideal = None
    if has_i:
        gens = data["ideal"]
        if not isinstance(gens, list) or not gens:
            raise InputError("'ideal' must be a non-empty list of polynomials", "bad-input")
        for k, s in enumerate(gens):
            _check_poly(ring, s, f"ideal[{k}]", text)
        ideal = list(gens)
    else:
        comps = data["components"]
        if not isinstance(comps, list) or not comps:
            raise InputError("'components' must be a non-empty list", "bad-input")
        components = []
        for j, c in enumerate(comps):
            if not isinstance(c, dict) or not c or set(c) - {"point", "primary"}:
                raise InputError(f"components[{j}] must have keys 'point' and/or 'primary'", "bad-component")
            entry = {}
            if "point" in c:
                pt = c["point"]
                if not isinstance(pt, list) or len(pt) != n + 1:
                    raise InputError(f"components[{j}].point needs {n + 1} coordinates", "bad-point")
                for a in pt:
                    try:
                        field.convert(str(a) if isinstance(a, int) else a)
                    except (ValueError, TypeError, ZeroDivisionError) as exc:
                        line, col = _locate(text, a) if isinstance(a, str) else (None, None)
                        raise InputError(f"components[{j}].point: {exc}", "bad-point", line, col) from None
                entry["point"] = [str(a) for a in pt]
            if "primary" in c:
                prim = c["primary"]
                if not isinstance(prim, list) or not prim:
                    raise InputError(f"components[{j}].primary must be a non-empty list", "bad-component")
                for k, s in enumerate(prim):
                    _check_poly(ring, s, f"components[{j}].primary[{k}]", text)
                entry["primary"] = list(prim)
            components.append(entry)
    canonical = json.dumps(
        {"field": data.get("field", "Q"), "n": n, "components": components, "ideal": ideal},
        sort_keys=True,
        separators=(",", ":"),
    )
    digest = hashlib.sha256(canonical.encode()).hexdigest()
    return InputDocument(field=field, n=n, components=components, ideal=ideal, raw=data, digest=digest)


# -- serialization ----------------------------------------------------------


def jsonable(obj):
    """Convert results to plain JSON values with exact rationals as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, (Fraction, ModInt, Polynomial)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    return str(obj)


def _sorted_generators(X: SchemeSpec, gens):
    key = X.proj_ring.default_order.key
    return sorted(gens, key=lambda g: (g.degree(), key(g.leading_monomial())))


def _view_dict(X: SchemeSpec, view):
    upto = max(view.stable_from + 1, X.r_X + 1)
    return {
        "generators": [str(g) for g in _sorted_generators(X, view.minimal_generators)],
        "hf": view.hf_list(upto),
        "hp": view.hp,
        "ri": view.ri,
    }


def _hilbert_dict(X: SchemeSpec):
    H = X.hilbert
    return {
        "values": [H(i) for i in range(H.r_X + 2)],
        "r_X": H.r_X,
        "alpha_X": H.alpha_X,
        "degree": H.degree,
    }


# -- commands ---------------------------------------------------------------


def _cross_checks(X: SchemeSpec, an: Analysis, command: str) -> list:
    """Recompute through redundant routes; returns a list of disagreements."""
    fails = []
    K = an.kaehler if command in ("kaehler", "classify", "report") else None
    if K is not None:
        if X.source_generators:
            alt = kaehler_different(X, gens=X.source_generators, cap=an.cap)
            if alt != K:
                fails.append("Kaehler different from the input generators differs from the Groebner basis route")
        top = max(K.stable_from, X.r_X) + 1
        ref = graded_ideal_hilbert_by_normal_forms(K.minimal_generators, X, top)
        if ref != K.hf_list(top):
            fails.append("Hilbert function of theta_X differs between the S route and normal forms")
    if command in ("noether", "classify", "report"):
        N = an.noether
        if noether_different_colon(X, an.cap) != N:
            fails.append("Noether different differs between the tensor and colon routes")
    return fails


def run(command: str, doc: InputDocument, *, max_degree=None, cross_check=False, threads=1, timings=False):
    """Run ``command`` on ``doc``; returns ``(report dict, exit code)``."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    clock = {}
    t0 = time.perf_counter()
    X = doc.build(max_degree)
    clock["build"] = time.perf_counter() - t0
    an = Analysis(X, cap=max_degree)
    out = {
        "input_sha256": doc.digest,
        "command": command,
        "field": X.field.spec() if hasattr(X.field, "spec") else str(X.field),
        "n": X.n,
        "hilbert": _hilbert_dict(X),
        "warnings": list(X.warnings),
    }
    fails = []

    def timed(name, fn):
        t = time.perf_counter()
        value = fn()
        clock[name] = time.perf_counter() - t
        return value

    if command == "report" and threads > 1:
        # independent pieces; warm the caches concurrently
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for name in ("kaehler", "noether", "conductor", "minors"):
                pool.submit(timed, name, lambda name=name: getattr(an, name))
    if command in ("kaehler", "report"):
        out["kaehler"] = timed("kaehler", lambda: _view_dict(X, an.kaehler))
        out["kaehler"].update(an.reduced_kaehler)
    if command in ("noether", "report"):
        out["noether"] = timed("noether", lambda: _view_dict(X, an.noether))
    if command in ("conductor", "report"):
        prof = timed("conductor", lambda: an.conductor)
        out["conductor"] = prof.as_dict()
        out["conductor"]["is_cb"] = cb_test(X, prof)["is_cb"]
    if command in ("classify", "report"):
        rep = timed("classify", lambda: classify(X, an))
        out["classification"] = rep.as_dict()
        fails.extend(rep.consistency_failures)
    if command == "report":
        out["points"] = _point_data(X)
        if X.is_reduced and X.n >= 2:
            g = timed("genpos", lambda: genpos_equivalence_check(X, an))
            out["genpos_equivalence"] = g
            if not g["three_way"]:
                fails.append("generic position characterizations disagree")
    if cross_check:
        extra = timed("cross_check", lambda: _cross_checks(X, an, command))
        out["cross_check"] = {"failures": extra}
        fails.extend(extra)
    out["consistency_failures"] = fails
    if timings:
        out["timings"] = {k: round(v, 4) for k, v in sorted(clock.items())}
    return jsonable(out), (EXIT_INCONSISTENT if fails else EXIT_OK)


def _point_data(X: SchemeSpec):
    if not X.components:
        return None
    rows = []
    for j, c in enumerate(X.components):
        lr = local_ring(X, j)
        row = {
            "point": list(c.point()) if c.is_rational else None,
            "m_j": lr["m_j"],
            "kappa_j": lr["kappa_j"],
            "socle_dim": lr["socle_dim"],
            "is_gorenstein": lr["is_gorenstein"],
        }
        if c.is_gorenstein:
            sep = separators(X, j)
            row["separator_degrees"] = sep["degrees"]
            row["separators"] = [str(f) for f in sep["minimal"]]
        rows.append(row)
    return rows


# -- text output --------------------------------------------------------------


def _line(values):
    return " ".join(str(v) for v in values) + " ..."


def render_text(report: dict) -> str:
    field = report['field'] if isinstance(report['field'], str) else f"GF({report['field']['Fp']})"
    lines = [f"input {report['input_sha256'][:16]}  field {field}  n = {report['n']}"]
    H = report["hilbert"]
    lines.append(f"HF_X: {_line(H['values'])}  r_X = {H['r_X']}  alpha_X = {H['alpha_X']}  deg = {H['degree']}")
    for key, label in (("kaehler", "theta_X"), ("noether", "theta_N")):
        if key in report:
            v = report[key]
            lines.append(f"HF({label}): {_line(v['hf'])}  HP = {v['hp']}  ri = {v['ri']}")
            for g in v["generators"]:
                lines.append(f"  generator {g}")
    if "conductor" in report:
        c = report["conductor"]
        lines.append(
            f"conductor dims below r_X: {c['dims'][:-1]}  CB = {c['is_cb']}  point degrees = {c['point_degrees']}"
        )
        lines.append(
            f"lengths: R~/R = {c['len_tilde_over_R']}  R/F = {c['len_R_over_F']}  R~/F = {c['len_tilde_over_F']}"
        )
    if "classification" in report:
        c = report["classification"]
        for k in ("is_generic", "is_cb", "is_locally_gorenstein", "is_arith_gorenstein", "is_locally_ci", "is_ci"):
            lines.append(f"{k}: {c[k]}")
        for note in c.get("observations", []):
            lines.append(f"note: {note}")
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    for f in report.get("consistency_failures", []):
        lines.append(f"CONSISTENCY FAILURE: {f}")
    if "timings" in report:
        lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in report["timings"].items()))
    return "\n".join(lines) + "\n"


# -- entry point ----------------------------------------------------------------


def _configure_logging():
    level = os.environ.get("KAEHLER_LAB_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), format="%(levelname)s %(name)s: %(message)s")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kaehler-lab", description="Differents and structure of 0-dimensional schemes.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="path to the input JSON document")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable output")
    p.add_argument("--max-degree", type=int, default=None, metavar="K", help="override the analysis degree cap")
    p.add_argument("--cross-check", action="store_true", help="recompute through redundant routes")
    p.add_argument("--threads", type=int, default=1, metavar="K", help="worker threads for report")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (output is then not reproducible)")
    return p


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        doc = parse_input(Path(args.input))
        report, code = run(
            args.command,
            doc,
            max_degree=args.max_degree,
            cross_check=args.cross_check,
            threads=max(1, args.threads),
            timings=args.timings,
        )
    except (InputError, SchemeError) as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except StabilizationError as exc:
        print(f"error [no-stabilization]: {exc}; try a larger --max-degree", file=sys.stderr)
        return EXIT_ERROR
    if args.fmt == "text":
        sys.stdout.write(render_text(report))
    else:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
