"""Command-line front end.

Exit codes: 0 computed (or the property holds), 1 the property is false,
2 input error, 3 budget exceeded.  Every report is assembled in full before
anything is printed, so a failing run prints nothing on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import algebra as alg
from . import varieties as var
from .errors import AlgebraError, BudgetExceeded, ModeUnsoundWarning
from .fields import QQ, Field, parse_field, parse_scalar
from .io import format_algebra, load_algebra, load_morphism, parse_element, resolve_variety
from .linalg import Subspace, span
from .polys import homogeneous_components, parse_poly
from .words import print_word

SCHEMA = 1
EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class Report:
    data: dict
    text: list = dc_field(default_factory=list)
    code: int = EXIT_OK


# -- rendering helpers ------------------------------------------------------------


def _scalar(field: Field, a) -> str:
    return field.format(a)


def _vector(field: Field, v) -> list:
    return [_scalar(field, a) for a in v]


def algebra_json(a: alg.FdAlgebra) -> dict:
    products = []
    for i in range(a.dim):
        for j in range(a.dim):
            v = a.product(i, j)
            if any(v):
                products.append({"left": a.basis_names[i], "right": a.basis_names[j], "value": a.format_element(v)})
    return {"field": str(a.field), "dim": a.dim, "basis": list(a.basis_names), "products": products}


def algebra_text(a: alg.FdAlgebra, indent: str = "  ") -> list:
    return [indent + line for line in format_algebra(a).splitlines()]


def matrix_json(f: alg.Morphism) -> list:
    return [_vector(f.matrix.field, r) for r in f.matrix.rows]


def morphism_json(f: alg.Morphism) -> dict:
    return {
        "images": {n: f.target.format_element(c) for n, c in zip(f.source.basis_names, f.matrix.columns())},
        "matrix": matrix_json(f),
        "injective": f.injective,
        "surjective": f.surjective,
    }


def morphism_text(f: alg.Morphism, indent: str = "  ") -> list:
    return [f"{indent}{n} -> {f.target.format_element(c)}" for n, c in zip(f.source.basis_names, f.matrix.columns())]


def subspace_json(a: alg.FdAlgebra, s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [a.format_element(v) for v in s.basis]}


def subspace_text(a: alg.FdAlgebra, s: Subspace, indent: str = "  ") -> list:
    return [f"{indent}{a.format_element(v)}" for v in s.basis] or [f"{indent}(zero subspace)"]


# -- input helpers ---------------------------------------------------------------


def _field(args) -> Field:
    return parse_field(args.field) if args.field else QQ


def _algebras(args, count: int, what: str = "algebra"):
    paths = args.algebra or []
    if len(paths) < count:
        raise InputError(f"this command needs {count} --algebra file(s), got {len(paths)}")
    return [load_algebra(p) for p in paths[:count]]


def _variety(args, field: Field | None = None):
    if not args.variety:
        raise InputError("this command needs --variety")
    return resolve_variety(args.variety, field or _field(args))


def _degree(args, default: int = 4) -> int:
    return args.degree if args.degree is not None else default


def _named_maps(args):
    """``--map [name=]path`` entries as (name, path) pairs."""
    out = []
    for item in args.map or []:
        name, sep, path = item.partition("=")
        if not sep or Path(item).exists():
            name, path = "", item
        out.append((name, path))
    return out


def _maps(args, count: int | None = None):
    entries = _named_maps(args)
    if count is not None and len(entries) < count:
        raise InputError(f"this command needs {count} --map file(s), got {len(entries)}")
    algs = [load_algebra(p) for p in args.algebra or []]
    out = []
    for k, (_, path) in enumerate(entries):
        src = algs[k] if k < len(algs) else None
        tgt = algs[k + 1] if k + 1 < len(algs) else None
        out.append(load_morphism(path, src, tgt))
    return out


def _elements(args, a: alg.FdAlgebra):
    return [parse_element(s, a.basis_names, a.field) for s in args.poly or []]


def _polys(args, field: Field):
    if not args.poly:
        raise InputError("this command needs --poly")
    return [parse_poly(s, field) for s in args.poly]


def _letters(args, fallback=()):
    if args.letters:
        return tuple(s.strip() for s in args.letters.split(",") if s.strip())
    return tuple(fallback)


def _lambdas(text: str, field: Field) -> list:
    items = [s.strip() for s in text.split(",")]
    if "..." in items:
        k = items.index("...")
        fill = 16 - (len(items) - 1)
        if fill < 0:
            raise InputError("more than 16 coefficients given")
        pad = items[k - 1] if k > 0 else "0"
        items = items[:k] + [pad] * fill + items[k + 1:]
    if len(items) != 16:
        raise InputError(f"--lambda needs 16 coefficients, got {len(items)}")
    return [parse_scalar(s, field) for s in items]


# -- verbs ----------------------------------------------------------------------------


def cmd_check_identity(args) -> Report:
    (a,) = _algebras(args, 1)
    if args.variety:
        polys = list(_variety(args, a.field).polys)
    else:
        polys = _polys(args, a.field)
    results, text, code = [], [], EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ModeUnsoundWarning)
        for p in polys:
            r = var.check_identity(a, p, args.mode, args.budget)
            item = {"poly": str(p), "mode": r.mode, "status": r.status, "holds": r.holds}
            line = f"{p}: {r.status} ({r.mode})"
            text.append(line)
            if r.witness is not None:
                wit = {v: a.format_element(e) for v, e in r.witness.items()}
                item["witness"] = wit
                item["value"] = a.format_element(r.value)
                for v, e in wit.items():
                    text.append(f"  witness {v} -> {e}")
                text.append(f"  value {item['value']}")
            if not r.holds:
                code = EXIT_FALSE
            results.append(item)
    return Report({"results": results, "holds": code == EXIT_OK}, text, code)


def cmd_implied(args) -> Report:
    v = _variety(args)
    d = _degree(args)
    polys = _polys(args, v.field)
    results, text, code = [], [], EXIT_OK
    for p in polys:
        letters = _letters(args, p.variables())
        ok = var.identity_implied(v, p, d, letters, args.budget_words)
        results.append({"poly": str(p), "implied": ok})
        text.append(f"{p}: {'implied' if ok else 'not implied'} by {v.name} over {v.field} at degree <= {d}")
        if not ok:
            code = EXIT_FALSE
    return Report({"variety": v.name, "field": str(v.field), "degree": d, "results": results}, text, code)


def cmd_reflect(args) -> Report:
    (a,) = _algebras(args, 1)
    v = _variety(args, a.field)
    ideal = var.identity_ideal(a, v, args.mode, args.budget)
    q, eta = alg.quotient(a, ideal)
    data = {"ideal": subspace_json(a, ideal), "reflection": algebra_json(q), "unit": morphism_json(eta)}
    text = [f"I(A) dimension {ideal.dim}"] + subspace_text(a, ideal)
    text += [f"L(A) dimension {q.dim}"] + algebra_text(q) + ["unit"] + morphism_text(eta)
    return Report(data, text)


def cmd_kernel(args) -> Report:
    (f,) = _maps(args, 1)
    k, incl = alg.kernel(f)
    data = {"kernel": algebra_json(k), "inclusion": morphism_json(incl)}
    text = [f"kernel dimension {k.dim}"] + algebra_text(k) + ["inclusion"] + morphism_text(incl)
    return Report(data, text)


def _quotient_report(q, proj, label: str) -> Report:
    data = {label: algebra_json(q), "projection": morphism_json(proj)}
    text = [f"{label} dimension {q.dim}"] + algebra_text(q) + ["projection"] + morphism_text(proj)
    return Report(data, text)


def cmd_cokernel(args) -> Report:
    (f,) = _maps(args, 1)
    return _quotient_report(*alg.cokernel(f), "cokernel")


def cmd_coequalize(args) -> Report:
    f, g = _maps(args, 2)
    return _quotient_report(*alg.coequalizer(f, g), "coequalizer")


def cmd_quotient(args) -> Report:
    (a,) = _algebras(args, 1)
    s = span(_elements(args, a), a.dim, a.field)
    return _quotient_report(*alg.quotient(a, s), "quotient")


def cmd_ideal(args) -> Report:
    (a,) = _algebras(args, 1)
    gens = _elements(args, a)
    s = span(gens, a.dim, a.field)
    i = alg.generated_ideal(a, gens)
    data = {"span_is_ideal": alg.is_ideal(a, s), "span_is_subalgebra": alg.is_subalgebra(a, s), "ideal": subspace_json(a, i)}
    text = [
        f"span of generators: dimension {s.dim}, ideal {str(data['span_is_ideal']).lower()}, "
        f"subalgebra {str(data['span_is_subalgebra']).lower()}",
        f"generated ideal dimension {i.dim}",
    ] + subspace_text(a, i)
    return Report(data, text)


def cmd_subalgebra(args) -> Report:
    (a,) = _algebras(args, 1)
    s = alg.generated_subalgebra(a, _elements(args, a))
    sub, incl = alg.subalgebra(a, s)
    data = {"subspace": subspace_json(a, s), "subalgebra": algebra_json(sub), "inclusion": morphism_json(incl)}
    text = [f"generated subalgebra dimension {s.dim}"] + subspace_text(a, s) + algebra_text(sub)
    return Report(data, text)


def cmd_product(args) -> Report:
    a, c = _algebras(args, 2)
    p, pa, pc = alg.product(a, c)
    data = {"product": algebra_json(p), "pi_1": morphism_json(pa), "pi_2": morphism_json(pc)}
    text = [f"product dimension {p.dim}"] + algebra_text(p)
    return Report(data, text)


def cmd_pullback(args) -> Report:
    f, g = _maps(args, 2)
    res = alg.pullback(f, g)
    data = {"pullback": algebra_json(res.P), "pi_1": morphism_json(res.pi_a), "pi_2": morphism_json(res.pi_c)}
    text = [f"pullback dimension {res.P.dim}"] + algebra_text(res.P)
    text += ["pi_1"] + morphism_text(res.pi_a) + ["pi_2"] + morphism_text(res.pi_c)
    return Report(data, text)


def cmd_image(args) -> Report:
    (f,) = _maps(args, 1)
    p, m = alg.image_factorization(f)
    data = {"image": algebra_json(p.target), "epi": morphism_json(p), "mono": morphism_json(m)}
    text = [f"image dimension {p.target.dim}"] + algebra_text(p.target) + ["inclusion"] + morphism_text(m)
    return Report(data, text)


def cmd_exact(args) -> Report:
    maps = _maps(args, 1)
    rep = alg.is_exact(maps)
    joints = [{"joint": j.index + 1, "image_dim": j.image_dim, "kernel_dim": j.kernel_dim, "exact": j.exact} for j in rep.joints]
    data = {
        "joints": joints,
        "exact": rep.exact,
        "first_injective": rep.injective_start,
        "last_surjective": rep.surjective_end,
        "short_exact": rep.short_exact,
    }
    text = [f"joint {j['joint']}: image_dim {j['image_dim']}, kernel_dim {j['kernel_dim']}, exact {str(j['exact']).lower()}" for j in joints]
    text.append(f"exact {str(rep.exact).lower()}")
    if len(maps) == 2:
        text.append(f"short exact {str(rep.short_exact).lower()}")
    return Report(data, text, EXIT_OK if rep.exact else EXIT_FALSE)


def _free_report(free: var.TruncatedFreeAlgebra) -> tuple:
    a = free.carrier
    data = {
        "dim": a.dim,
        "dims_by_degree": {str(k): v for k, v in free.dims_by_degree().items()},
        "relations_by_degree": {str(k): v for k, v in free.relations_by_degree.items()},
        "algebra": algebra_json(a),
    }
    text = [f"dimension {a.dim}"]
    text.append("by degree " + " ".join(f"{k}:{v}" for k, v in free.dims_by_degree().items()))
    text += algebra_text(a)
    return data, text


def cmd_free(args) -> Report:
    v = _variety(args)
    letters = _letters(args)
    if not letters:
        raise InputError("free needs --letters")
    d = _degree(args)
    free = var.truncated_free(v, letters, d, args.budget_words)
    data, text = _free_report(free)
    classes = {print_word(w): a_ for w, a_ in free.word_images.items() if w.length <= min(d, 2)}
    data["classes"] = {w: free.carrier.format_element(e) for w, e in classes.items()}
    text = [f"free {v.name} algebra on {','.join(letters)} over {v.field}, degree <= {d}"] + text
    text.append("classes of words of length <= 2")
    text += [f"  {w} = {free.carrier.format_element(e)}" for w, e in classes.items()]
    return Report({"variety": v.name, "letters": list(letters), "degree": d, **data}, text)


def cmd_coproduct(args) -> Report:
    a, c = _algebras(args, 2)
    v = _variety(args, a.field)
    d = _degree(args)
    res = var.truncated_coproduct(a, c, v, d, args.budget_words)
    data, text = _free_report(res.free)
    data["injections"] = [morphism_json(i) for i in res.injections]
    text = [f"coproduct in {v.name}, degree <= {d}"] + text
    for k, i in enumerate(res.injections, 1):
        text += [f"injection {k}"] + morphism_text(i)
    return Report({"variety": v.name, "degree": d, **data}, text)


def cmd_flat(args) -> Report:
    b, x = _algebras(args, 2)
    v = _variety(args, b.field)
    d = _degree(args)
    k, incl = var.flat(b, x, v, d, args.budget_words)
    data = {"variety": v.name, "degree": d, "flat": algebra_json(k), "inclusion": morphism_json(incl)}
    text = [f"B-flat-X dimension {k.dim}"] + algebra_text(k) + ["inclusion"] + morphism_text(incl)
    return Report(data, text)


def cmd_coherent(args) -> Report:
    b, x, y = _algebras(args, 3)
    v = _variety(args, b.field)
    d = _degree(args, 3)
    rep = var.coherence_probe(b, x, y, v, d, args.budget_words)
    missing = [rep.coproduct.format_element(m) for m in rep.missing]
    data = {
        "variety": v.name,
        "degree": d,
        "coherent": rep.coherent,
        "flat_dim": rep.flat_dim,
        "generated_dim": rep.generated_dim,
        "missing": missing,
    }
    text = [
        f"{'coherent' if rep.coherent else 'not coherent'} at degree <= {d}",
        f"B-flat-(X+Y) dimension {rep.flat_dim}, generated by the two images {rep.generated_dim}",
    ]
    text += [f"  not generated: {m}" for m in missing]
    return Report(data, text, EXIT_OK if rep.coherent else EXIT_FALSE)


def cmd_orzech(args) -> Report:
    v = _variety(args)
    if not args.lambda_:
        raise InputError("orzech needs --lambda")
    lam = _lambdas(args.lambda_, v.field)
    d = _degree(args, 3)
    # the usual instantiations (qLie, Assoc) are stated for the first equation only
    eqs = tuple(int(s) for s in args.equations.split(",")) if args.equations else (1,)
    if any(e not in (1, 2) for e in eqs):
        raise InputError("--equations takes 1, 2 or 1,2")
    res = var.orzech_check(v, lam, d, eqs, args.budget_words)
    polys = var.orzech_polys(lam, v.field)
    ok = all(res.values())
    data = {
        "variety": v.name,
        "degree": d,
        "lambda": [_scalar(v.field, c) for c in lam],
        "equations": [{"equation": k, "poly": str(polys[k - 1]), "implied": res[k]} for k in eqs],
        "holds": ok,
    }
    text = [f"equation {k}: {polys[k - 1]} = 0 {'implied' if res[k] else 'not implied'}" for k in eqs]
    if 2 not in eqs:
        text.append("equation 2 not checked (use --equations 1,2)")
    text.append("holds" if ok else "fails")
    return Report(data, text, EXIT_OK if ok else EXIT_FALSE)


def cmd_homog(args) -> Report:
    if args.variety:
        v = _variety(args)
        d = _degree(args)
        checks = var.homogeneous_closure_check(v, d, args.budget_words)
        ok = all(c.implied for c in checks)
        items = [
            {"identity": str(c.identity), "type": str(c.type), "component": str(c.component), "implied": c.implied}
            for c in checks
        ]
        text = [f"{c.identity}: component {c.component} of type {c.type} {'implied' if c.implied else 'NOT implied'}" for c in checks]
        return Report({"variety": v.name, "degree": d, "components": items, "all_implied": ok}, text, EXIT_OK if ok else EXIT_FALSE)
    items, text = [], []
    for p in _polys(args, _field(args)):
        comps = homogeneous_components(p)
        items.append({"poly": str(p), "components": [{"type": dict(t), "component": str(c)} for t, c in comps.items()]})
        text.append(f"{p}")
        text += [f"  type {t}: {c}" for t, c in comps.items()]
    return Report({"results": items}, text)


def cmd_derivations(args) -> Report:
    (a,) = _algebras(args, 1)
    mats = alg.derivation_matrices(a)
    der = alg.derivations(a)
    data = {
        "dim": der.dim,
        "matrices": [[_vector(a.field, r) for r in m.rows] for m in mats],
        "algebra": algebra_json(der),
    }
    text = [f"Der(A) dimension {der.dim}"]
    for name, m in zip(der.basis_names, mats):
        text.append(f"  {name}: " + "; ".join(f"{b} -> {a.format_element(c)}" for b, c in zip(a.basis_names, m.columns())))
    text += algebra_text(der)
    return Report(data, text)


def cmd_commutator(args) -> Report:
    (a,) = _algebras(args, 1)
    c = alg.commutator_algebra(a)
    return Report({"algebra": algebra_json(c)}, [f"commutator algebra dimension {c.dim}"] + algebra_text(c))


def cmd_split_five(args) -> Report:
    names = ("f", "g", "s", "k", "q", "t", "alpha", "beta", "gamma")
    entries = dict(_named_maps(args))
    missing = [n for n in names if n not in entries]
    if missing:
        raise InputError("split-five needs --map NAME=path for " + ", ".join(missing))
    diagram = {n: load_morphism(entries[n]) for n in names}
    iso = alg.split_short_five_check(diagram)
    data = {"beta_iso": iso, "alpha_iso": diagram["alpha"].is_iso, "gamma_iso": diagram["gamma"].is_iso}
    text = [f"alpha iso {str(data['alpha_iso']).lower()}, gamma iso {str(data['gamma_iso']).lower()}", f"beta iso {str(iso).lower()}"]
    return Report(data, text, EXIT_OK if iso else EXIT_FALSE)


COMMANDS = {
    "check-identity": (cmd_check_identity, "test identities on an algebra (--algebra, --poly or --variety)"),
    "implied": (cmd_implied, "decide whether --poly follows from --variety at degree <= --degree"),
    "reflect": (cmd_reflect, "reflection L(A) = A/I(A) into --variety"),
    "kernel": (cmd_kernel, "kernel of a morphism (--map)"),
    "cokernel": (cmd_cokernel, "cokernel of a morphism (--map)"),
    "coequalize": (cmd_coequalize, "coequalizer of two parallel morphisms (--map twice)"),
    "quotient": (cmd_quotient, "quotient of --algebra by the ideal spanned by --poly elements"),
    "ideal": (cmd_ideal, "ideal generated by --poly elements of --algebra"),
    "subalgebra": (cmd_subalgebra, "subalgebra generated by --poly elements of --algebra"),
    "product": (cmd_product, "product of two algebras"),
    "pullback": (cmd_pullback, "pullback of two morphisms with common codomain"),
    "image": (cmd_image, "image factorization of a morphism"),
    "exact": (cmd_exact, "exactness of a sequence of composable morphisms"),
    "free": (cmd_free, "truncated free algebra of --variety on --letters"),
    "coproduct": (cmd_coproduct, "truncated coproduct of two algebras in --variety"),
    "flat": (cmd_flat, "B-flat-X for --algebra B --algebra X"),
    "coherent": (cmd_coherent, "coherence probe for --algebra B X Y"),
    "orzech": (cmd_orzech, "check the two degree-3 equations with coefficients --lambda"),
    "homog": (cmd_homog, "homogeneous components of --poly, or closure check for --variety"),
    "derivations": (cmd_derivations, "derivation algebra Der(A)"),
    "commutator": (cmd_commutator, "commutator bracket algebra of an associative algebra"),
    "split-five": (cmd_split_five, "split short five check (--map NAME=path for all nine maps)"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nonassoc", description="Exact computations with non-associative algebras.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="COMMAND")
    for verb, (_, help_) in COMMANDS.items():
        p = sub.add_parser(verb, help=help_, description=help_)
        p.add_argument("--algebra", action="append", metavar="FILE", help="algebra file (repeatable, order matters)")
        p.add_argument("--map", action="append", metavar="[NAME=]FILE", help="morphism file (repeatable)")
        p.add_argument("--variety", metavar="NAME|FILE", help="preset name or variety file")
        p.add_argument("--poly", action="append", metavar="EXPR", help="polynomial or element (repeatable)")
        p.add_argument("--letters", metavar="a,b,...", help="free generators")
        p.add_argument("--degree", type=int, metavar="D", help="truncation degree")
        p.add_argument("--mode", choices=var.MODES, help="identity check mode")
        p.add_argument("--budget", type=int, default=var.DEFAULT_BUDGET, metavar="N", help="cap on exhaustive assignments")
        p.add_argument("--budget-words", type=int, default=var.DEFAULT_WORD_BUDGET, metavar="N", help="cap on truncated word basis size")
        p.add_argument("--field", metavar="Q|GF(p)", help="ground field for presets and polynomials (default Q)")
        p.add_argument("--lambda", dest="lambda_", metavar="c1,...,c16", help="coefficients; '...' repeats the previous entry")
        p.add_argument("--equations", metavar="1,2", help="which of the two equations to check (default 1)")
        p.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def render(report: Report, verb: str, fmt: str) -> str:
    if fmt == "json":
        payload = {"schema": SCHEMA, "command": verb, "exit_code": report.code, **report.data}
        return json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    return "\n".join(report.text) + "\n"


def _glue_values(argv):
    """Attach values that start with '-' (``--lambda -1,...``) to their flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--lambda", "--poly"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    handler = COMMANDS[args.verb][0]
    try:
        report = handler(args)
    except BudgetExceeded as e:
        print(f"error: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (AlgebraError, InputError, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render(report, args.verb, args.format))
    return report.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
