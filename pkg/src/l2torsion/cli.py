"""Command-line interface: one JSON document in, one JSON report out.

Exit codes: 0 success (including verdict ``false``), 2 malformed input,
3 undecided, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import catalog, stallings
from .complex import BasedComplex, presentation_complex, torsion, torsion_of_hom
from .fkdet import DEFAULT_N, DEFAULT_TRIALS, FKEstimationError, estimate_fk, fk_of_torsion
from .fox import fox_jacobian
from .freegroup import FreeHom, parse_word
from .groupring import GroupRingElt, parse_element
from .laurent import LaurentPoly
from .leading import Character, delta, leading_complex, leading_elt
from .oracle import Budget
from .polytope import PolytopeDiff, fibered_report, poly_of_elt, thurston_dual_ball, wh_normalize
from .restriction import FiniteQuotientSpec, QuotientError, ResUnavailable, coset_table, lambda_matrix
from .restriction import res_invariants, res_of_torsion

EXIT_SCHEMA = 2
EXIT_UNDECIDED = 3
EXIT_INTERNAL = 4


class SchemaError(ValueError):
    pass


class Undecided(RuntimeError):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


# ------------------------------------------------------------------ parsing


def _need(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing field {key!r}")
    return doc[key]


def parse_hom(doc: dict) -> tuple[FreeHom, list[str] | None]:
    if "example" in doc:
        name = str(doc["example"])
        if name == "genus2":
            return catalog.genus2_hom(), ["x", "y"]
        if name.startswith("chainlink"):
            n = int(name.split("-", 1)[1]) if "-" in name else int(_need(doc, "n"))
            return catalog.chainlink_hom(n), None
        raise SchemaError(f"unknown example {name!r}")
    alphabet = doc.get("alphabet")
    m = int(_need(doc, "codomain_rank"))
    images = _need(doc, "images")
    if not isinstance(images, list):
        raise SchemaError("images must be a list of words")
    n = int(doc.get("domain_rank", len(images)))
    if n != len(images):
        raise SchemaError(f"domain_rank {n} but {len(images)} images")
    return FreeHom(n, m, tuple(parse_word(str(w), m, alphabet) for w in images)), alphabet


def parse_elt(doc: dict):
    """Element document: ``{"rank", "element", "alphabet"?, "ring"?}``."""
    rank = int(_need(doc, "rank"))
    raw = _need(doc, "element")
    if doc.get("ring", "free") == "laurent":
        if not isinstance(raw, list):
            raise SchemaError("Laurent elements are lists of {coeff, exps}")
        return LaurentPoly.from_json(raw, rank), None
    alphabet = doc.get("alphabet")
    if isinstance(raw, list):
        return GroupRingElt.from_json(raw, rank, alphabet), alphabet
    return parse_element(str(raw), rank, alphabet), alphabet


def parse_complex(doc: dict) -> BasedComplex:
    if "example" in doc:
        name = doc["example"]
        table = {"circle": catalog.circle_complex, "torus": catalog.torus_complex, "trefoil": catalog.trefoil_complex}
        if name not in table:
            raise SchemaError(f"unknown example {name!r}")
        return table[name]()
    if "presentation" in doc:
        pres = doc["presentation"]
        m = int(_need(pres, "generators"))
        alphabet = pres.get("alphabet")
        rels = [parse_word(str(r), m, alphabet) for r in pres.get("relators", [])]
        return presentation_complex(m, rels)
    return BasedComplex.from_json(doc, doc.get("alphabet"))


def _show(x, alphabet=None) -> str:
    return x.to_string(alphabet) if isinstance(x, GroupRingElt) else x.to_string()


def _budget(args) -> Budget:
    return Budget(max_size=args.budget_size, seed=args.seed)


# ----------------------------------------------------------------- commands


def cmd_fox_jacobian(doc, args) -> dict:
    phi, alphabet = parse_hom(doc)
    j = fox_jacobian(phi)
    return {"shape": list(j.shape), "matrix": j.to_strings(alphabet), "json": j.to_json(alphabet)}


def _torsion_payload(tau, alphabet=None) -> dict:
    out = tau.to_json(alphabet)
    if not tau.is_zero() and tau.polytope is not None:
        out["polytope_normalized"] = wh_normalize(tau.polytope).to_json()
    return out


def cmd_torsion_hom(doc, args) -> dict:
    phi, alphabet = parse_hom(doc)
    tau = torsion_of_hom(phi, _budget(args))
    if tau.undecided:
        raise Undecided("invertibility of the Fox Jacobian is undecided", _torsion_payload(tau, alphabet))
    _maybe_figure(args, tau.polytope, "torsion polytope")
    return {"torsion": _torsion_payload(tau, alphabet)}


def cmd_check_taut(doc, args) -> dict:
    phi, _ = parse_hom(doc)
    if not phi.is_square():
        return {"taut": False, "reason": "genus mismatch: domain and codomain ranks differ"}
    verdict = stallings.decide_weak_iso(phi)
    payload = {
        "injective": stallings.is_injective(phi),
        "image_rank": stallings.image_core(phi).rank(),
    }
    if verdict is None:
        raise Undecided("compressedness check exceeded the vertex cap", payload)
    payload["taut"] = verdict
    return payload


def cmd_check_product(doc, args) -> dict:
    phi, _ = parse_hom(doc)
    return {"product": stallings.is_isomorphism(phi), "injective": stallings.is_injective(phi)}


def cmd_torsion_complex(doc, args) -> dict:
    c = parse_complex(doc)
    tau = torsion(c, _budget(args))
    if tau.undecided:
        raise Undecided("no matrix chain certified within the budget", _torsion_payload(tau))
    return {"complex": {"dims": list(c.dims), "rank": c.rank}, "torsion": _torsion_payload(tau)}


def cmd_leading(doc, args) -> dict:
    phi = Character.from_json(_need(doc, "character"))
    if "complex" in doc:
        c = leading_complex(phi, parse_complex(doc["complex"]))
        return {"complex": c.to_json()}
    a, alphabet = parse_elt(doc)
    return {"leading": _show(leading_elt(phi, a), alphabet), "degree": str(delta(phi, a))}


def _maybe_figure(args, poly, title: str) -> None:
    path = getattr(args, "figure", None)
    if not path or poly is None:
        return
    from .plotting import render_diff

    if poly.dim != 2:
        print(f"figure skipped: polytope has dimension {poly.dim}", file=sys.stderr)
        return
    render_diff(poly, path, title)
    print(f"figure written to {path}", file=sys.stderr)


def cmd_polytope(doc, args) -> dict:
    a, _ = parse_elt(doc)
    p = poly_of_elt(a)
    _maybe_figure(args, PolytopeDiff.of(p), "polytope")
    return {"polytope": p.to_json(), "affine_dimension": p.affine_dimension()}


def cmd_thurston_ball(doc, args) -> dict:
    if "images" in doc or "example" in doc:
        phi, _ = parse_hom(doc)
        tau = torsion_of_hom(phi, _budget(args))
        if tau.is_zero():
            raise Undecided("torsion is zero, no dual Thurston ball", tau.to_json())
    else:
        a, _ = parse_elt(doc)
        tau = _ElementTorsion(a)
    ball = thurston_dual_ball(tau)
    _maybe_figure(args, ball.diff, "dual Thurston ball")
    return {"dual_thurston_ball": ball.to_json()}


class _ElementTorsion:
    """A single element viewed as a torsion value ``[a]``."""

    def __init__(self, a):
        self.polytope = PolytopeDiff.of(poly_of_elt(a))

    def is_zero(self) -> bool:
        return False


def cmd_fibered_report(doc, args) -> dict:
    a, _ = parse_elt(doc)
    rows = fibered_report(a)
    return {"vertices": rows, "all_monic": all(r["monic"] for r in rows)}


def cmd_stallings(doc, args) -> dict:
    if "images" in doc or "example" in doc:
        phi, _ = parse_hom(doc)
        words, m = list(phi.images), phi.codomain_rank
    else:
        m = int(_need(doc, "rank"))
        words = [parse_word(str(w), m, doc.get("alphabet")) for w in _need(doc, "words")]
    g = stallings.build_core(words, m)
    out = {"core": g.to_json(), "rank": g.rank()}
    try:
        out["compressed"] = stallings.is_compressed(g)
    except stallings.VertexCapExceeded:
        out["compressed"] = None
    if "member" in doc:
        out["membership"] = {str(w): stallings.membership(parse_word(str(w), m, doc.get("alphabet")), g) for w in doc["member"]}
    return out


def cmd_restrict(doc, args) -> dict:
    spec = FiniteQuotientSpec.from_json(_need(doc, "spec"))
    data = coset_table(spec)
    out = {"schreier": data.to_json()}
    try:
        if "hom" in doc:
            phi, _ = parse_hom(doc["hom"])
            tau = torsion_of_hom(phi, _budget(args))
            if tau.is_zero():
                raise SchemaError("cannot restrict zero torsion")
            out["res"] = str(res_of_torsion(tau, data))
        else:
            a, _ = parse_elt({**doc, "rank": doc.get("rank", spec.rank)})
            out["lambda"] = lambda_matrix(a, data).to_strings()
            out["res"] = res_invariants(a, data).to_string()
    except ResUnavailable as exc:
        raise Undecided(str(exc), out) from exc
    return out


def cmd_fk_det(doc, args) -> dict:
    n, trials = args.N, args.trials
    if "images" in doc or "example" in doc:
        phi, _ = parse_hom(doc)
        est = fk_of_torsion(torsion_of_hom(phi, _budget(args)), n, trials, args.seed)
    else:
        a, _ = parse_elt(doc)
        est = estimate_fk(a, n, trials, args.seed)
    return est.to_json()


def cmd_chainlink(doc, args) -> dict:
    n = args.n
    phi = catalog.chainlink_hom(n)
    tau = torsion_of_hom(phi, _budget(args))
    rep_y = tau.element_rep.map_words(catalog.y_basis_change(n), n - 1)
    from .complex import wh_element_equal
    from .polytope import hull, standard_simplex

    simplex = hull(rep_y.support_points(), n - 1) == standard_simplex(n - 1)
    if n == 3:
        _maybe_figure(args, PolytopeDiff.of(hull(rep_y.support_points(), 2)), "3-chain link, y basis")
    return {
        "n": n,
        "hom": [str(w) for w in phi.images],
        "torsion": _torsion_payload(tau),
        "element_rep_y_basis": rep_y.to_string([f"y{i}" for i in range(1, n)]),
        "matches_sum": wh_element_equal(tau.element_rep, catalog.chainlink_expected(n)),
        "polytope_is_standard_simplex": simplex,
        "taut": stallings.decide_weak_iso(phi),
        "product": stallings.is_isomorphism(phi),
    }


def cmd_selftest(doc, args) -> dict:
    from .selftest import run

    results = run(args.level)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"level": args.level, "passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}


COMMANDS = {
    "fox-jacobian": (cmd_fox_jacobian, "Fox Jacobian of a homomorphism"),
    "torsion-hom": (cmd_torsion_hom, "universal torsion of a homomorphism"),
    "check-taut": (cmd_check_taut, "taut verdict for a sutured handlebody"),
    "check-product": (cmd_check_product, "product verdict for a sutured handlebody"),
    "torsion-complex": (cmd_torsion_complex, "torsion of a based chain complex"),
    "leading": (cmd_leading, "leading term of an element or complex"),
    "polytope": (cmd_polytope, "polytope of an element"),
    "thurston-ball": (cmd_thurston_ball, "dual Thurston ball, twice the torsion polytope"),
    "fibered-report": (cmd_fibered_report, "per-vertex monicity"),
    "stallings": (cmd_stallings, "Stallings core graph"),
    "restrict": (cmd_restrict, "restriction to a finite-index normal subgroup"),
    "fk-det": (cmd_fk_det, "Fuglede-Kadison determinant estimate"),
    "chainlink": (cmd_chainlink, "the n-chain link example"),
    "selftest": (cmd_selftest, "run the acceptance criteria"),
}

NO_INPUT = {"chainlink", "selftest"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l2torsion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget-size", type=int, default=8, help="largest substitution size for the oracle")
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--pretty", action="store_true", help="indent the JSON report")
        if name == "chainlink":
            p.add_argument("n", type=int)
        elif name == "selftest":
            p.add_argument("--level", choices=["quick", "full"], default="full")
        else:
            p.add_argument("input", nargs="?", help="input JSON file (default: stdin)")
            p.add_argument("--json", dest="inline", help="input JSON given inline")
        if name == "fk-det":
            p.add_argument("--N", type=int, default=DEFAULT_N)
        if name in ("polytope", "thurston-ball", "torsion-hom", "chainlink"):
            p.add_argument("--figure", help="write a 2-D polytope figure (.svg or .png)")
    return parser


def _read_input(args) -> dict:
    if args.command in NO_INPUT:
        return {}
    if args.inline is not None:
        text = args.inline
    elif args.input:
        text = Path(args.input).read_text()
    else:
        text = sys.stdin.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("input must be a JSON object")
    return doc


def _options(args) -> dict:
    opts = {"seed": args.seed, "budget": _budget(args).to_json(), "trials": args.trials}
    if hasattr(args, "N"):
        opts["N"] = args.N
    return opts


def _emit(report: dict, pretty: bool) -> None:
    json.dump(report, sys.stdout, indent=2 if pretty else None, sort_keys=True)
    sys.stdout.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    t0 = time.perf_counter()
    report = {"command": args.command, "options": _options(args)}
    try:
        doc = _read_input(args)
        report["input"] = doc
        report["result"] = handler(doc, args)
        code = 0
        if args.command == "selftest" and not report["result"]["passed"]:
            code = 1
    except Undecided as exc:
        report["undecided"] = {"reason": str(exc), "partial": exc.payload}
        code = EXIT_UNDECIDED
    except (SchemaError, QuotientError, KeyError, ValueError, TypeError, OSError) as exc:
        report["error"] = {"kind": "schema", "message": str(exc)}
        code = EXIT_SCHEMA
    except FKEstimationError as exc:
        report["error"] = {"kind": "estimation", "message": str(exc)}
        code = EXIT_INTERNAL
    except Exception as exc:  # anything else is a bug
        report["error"] = {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}
        code = EXIT_INTERNAL
    _emit(report, args.pretty)
    print(f"{args.command}: {time.perf_counter() - t0:.3f}s exit {code}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
