"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed (the witness is
printed), 2 bad usage or unreadable input.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction

from . import algebra as alg
from .cache import DiffCache
from .chern import chern_character, chern_matrix, pair
from .cyclic import hc_cohomology_dims, hc_dims, hp_cohomology_dims, hp_dims, mixed_complex, sbi_report
from .growth import (GrowthClass, GrowthSequence, NonCanonical, NotComparable, SequenceSyntaxError, classify,
                     inclusion_witness, lim_prod_demo)
from .hochschild import HomologyReport, SizeLimit, hh_cohomology_dims, hh_dims
from .linalg import RankMismatch, mod_check
from .verifiers import (check_adjoint_projection, morita_check, resolution_of_unitalization,
                        verify_additivity, verify_separable_vanishing)

FAMILIES = ("s1", "su2", "field", "dual", "matrix")


class InputError(Exception):
    pass


class CheckFailed(Exception):
    """A mathematical check failed; ``report`` carries the witness."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


# ------------------------------------------------------------------ inputs

def build_family(name: str, truncation: int | None):
    """(algebra, block decomposition or None) for a built-in family."""
    if name == "s1":
        return alg.truncated_convolution("S1", truncation or 1)
    if name == "su2":
        return alg.truncated_convolution("SU2", truncation or 2)
    if name == "field":
        return alg.block_algebra([1])
    if name == "matrix":
        return alg.block_algebra([truncation or 2])
    if name == "dual":
        return alg.dual_numbers(), None
    raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def load_algebra_file(path: str, check_unit: bool = True) -> alg.Algebra:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return alg.from_document(doc, check_unit=check_unit)
    except alg.AlgebraFormatError as exc:
        raise InputError(f"{path}: field {exc}") from None
    except alg.NotUnital as exc:
        raise InputError(f"{path}: field unit: {exc}") from None


def resolve_algebra(args, check_unit: bool = True):
    if getattr(args, "input", None):
        if args.family:
            raise InputError("give either an input file or --family, not both")
        blocks = None
        a = load_algebra_file(args.input, check_unit)
        return a, blocks, args.input
    if not args.family:
        raise InputError("no algebra given: pass an input file or --family")
    a, blocks = build_family(args.family, args.truncation)
    label = args.family + (f" N={args.truncation}" if args.truncation else "")
    return a, blocks, label


def _cache(args) -> DiffCache | None:
    if args.cache_dir:
        try:
            return DiffCache(args.cache_dir)
        except OSError as exc:
            raise InputError(f"cache dir {args.cache_dir}: {exc.strerror}") from None
    return DiffCache.from_env()


def _cutoff(args) -> int:
    if args.cutoff < 0:
        raise InputError("--cutoff must be >= 0")
    return args.cutoff


# ------------------------------------------------------------------ output

def _plain(x):
    """JSON-safe copy: Fractions become strings, tuples lists, keys strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _text(report: dict) -> str:
    lines = []
    if "theory" in report:
        lines.append(f"{report['theory']}  (cutoff {report['cutoff']})")
        lines.append("degree  dim  flag")
        for n, (d, f) in enumerate(zip(report["dims"], report["flags"])):
            lines.append(f"{n:>6}  {d:>3}  {f}")
        lines.append(f"dims: {report['dims']}")
        cert = report.get("certificates")
        if cert:
            lines.append(f"certificate: {json.dumps(cert, sort_keys=True)}")
        return "\n".join(lines)
    for key in sorted(report):
        val = report[key]
        if key == "checks":
            for c in val:
                lines.append(f"  {'ok  ' if c['ok'] else 'FAIL'}  {c['check']:<20} {c['algebra']}")
            continue
        lines.append(f"{key}: {json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val}")
    return "\n".join(lines)


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "theory" in report:
        w.writerow(["theory", "degree", "dim", "flag"])
        for n, (d, f) in enumerate(zip(report["dims"], report["flags"])):
            w.writerow([report["theory"], n, d, f])
    else:
        w.writerow(["key", "value"])
        for key in sorted(report):
            val = report[key]
            w.writerow([key, json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val])
    return buf.getvalue().rstrip("\n")


def render(report: dict, fmt: str) -> str:
    report = _plain(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "csv":
        return _csv(report)
    return _text(report)


# ------------------------------------------------------------------ commands

def cmd_algebra_check(args) -> dict:
    a, _, label = resolve_algebra(args, check_unit=False)
    res = alg.check_associative(a)
    report = {"kind": "algebra-check", "algebra": label, "dim": a.dim, "associative": res.ok,
              "witness": list(res.witness) if res.witness else None}
    if getattr(args, "input", None):
        with open(args.input, encoding="utf-8") as fh:
            declared = json.load(fh).get("unit")
        report["unit_declared"] = declared is not None
        report["unital"] = a.unit is not None
        if declared is not None and a.unit is None:
            report["unit_witness"] = _unit_witness(a, declared)
    else:
        report["unital"] = a.unit is not None
    if not res.ok:
        i, j, k = res.witness
        raise CheckFailed(f"not associative: (b{i} b{j}) b{k} != b{i} (b{j} b{k})", report)
    if report.get("unit_witness") is not None:
        raise CheckFailed(f"declared unit fails on basis element {report['unit_witness']}", report)
    return report


def _unit_witness(a: alg.Algebra, declared) -> int:
    u = {k: alg._parse_scalar(x, f"unit[{k}]") for k, x in enumerate(declared)}
    for i in range(a.dim):
        e = {i: Fraction(1)}
        if a.mul(u, e) != e or a.mul(e, u) != e:
            return i
    return -1


def _homology(args, theory: str) -> dict:
    a, _, _ = resolve_algebra(args)
    cutoff = _cutoff(args)
    cache = _cache(args)
    co = args.cohomology
    if theory == "hh":
        fn = hh_cohomology_dims if co else hh_dims
        rep: HomologyReport = fn(a, cutoff, normalized=not args.unnormalized, force=args.force, cache=cache)
    else:
        if args.unnormalized:
            raise InputError("--unnormalized applies to hh only; cyclic theories use normalized chains")
        fn = {"hc": (hc_dims, hc_cohomology_dims), "hp": (hp_dims, hp_cohomology_dims)}[theory][co]
        rep = fn(a, cutoff, force=args.force, cache=cache)
    return rep.to_dict()


def cmd_hh(args):
    return _homology(args, "hh")


def cmd_hc(args):
    return _homology(args, "hc")


def cmd_hp(args):
    return _homology(args, "hp")


def cmd_sbi(args) -> dict:
    a, _, _ = resolve_algebra(args)
    cert = sbi_report(a, _cutoff(args), force=args.force, cache=_cache(args))
    report = cert.to_dict()
    if not cert.exact:
        bad = [nd.to_dict() for nd in cert.nodes if not nd.exact]
        raise CheckFailed(f"SBI sequence not exact at {bad[0]['group']}", {**report, "witness": bad})
    return report


def verify_corpus(cutoff: int, cache: DiffCache | None = None) -> dict:
    """Structural checks on the built-in corpus; ``ok`` is the conjunction."""
    kw = {"cache": cache}
    checks = []
    m2, _ = alg.block_algebra([2])
    fld, _ = alg.block_algebra([1])
    dual = alg.dual_numbers()

    add = verify_additivity(dual, m2, cutoff, **kw)
    checks.append({"check": "additivity", "algebra": "dual+M2", "ok": add.additive, **add.to_dict()})

    sep_corpus = [("field", fld), ("M2", m2), ("S1 N=1", alg.truncated_convolution("S1", 1)[0]),
                  ("SU2 N=2", alg.truncated_convolution("SU2", 2)[0]), ("dual", dual)]
    for name, a in sep_corpus:
        rep = verify_separable_vanishing(a, cutoff, **kw)
        expect_separable = name != "dual"
        ok = rep.status != "violated" and rep.separable == expect_separable
        checks.append({"check": "separability", "algebra": name, "ok": ok, **rep.to_dict()})

    for name, a in [("field", fld), ("dual", dual), ("M2+field", alg.direct_sum(m2, fld))]:
        rep = resolution_of_unitalization(a)
        checks.append({"check": "resolution", "algebra": name, "ok": rep.exact, **rep.to_dict()})

    for name, (a, blocks) in [("S1 N=1", alg.truncated_convolution("S1", 1)),
                              ("SU2 N=2", alg.truncated_convolution("SU2", 2))]:
        rep = check_adjoint_projection(a, blocks)
        checks.append({"check": "adjoint-projection", "algebra": name, **rep.to_dict()})

    hh_m2, hh_f = morita_check(2, cutoff, **kw)
    checks.append({"check": "morita", "algebra": "M2 vs field", "ok": hh_m2 == hh_f, "hh": [hh_m2, hh_f]})
    return {"kind": "verify-all", "cutoff": cutoff, "ok": all(c["ok"] for c in checks), "checks": checks}


def cmd_verify_all(args) -> dict:
    report = verify_corpus(_cutoff(args), _cache(args))
    if not report["ok"]:
        bad = [c for c in report["checks"] if not c["ok"]]
        raise CheckFailed(f"{bad[0]['check']} failed on {bad[0]['algebra']}", {**report, "witness": bad})
    return report


def cmd_chern(args) -> dict:
    a, blocks, label = resolve_algebra(args)
    degree = args.degree
    if degree < 0 or degree % 2:
        raise InputError("--degree must be even and >= 0")
    mc = mixed_complex(a, max(degree, 1), force=args.force, cache=_cache(args))
    if args.idempotent:
        e = _parse_vector(args.idempotent, a.dim)
        try:
            cyc = chern_character(a, e, degree, complex=mc)
        except ValueError as exc:
            raise InputError(f"idempotent: {exc}") from None
        traces = alg.trace_space_basis(a)
        return {"kind": "chern", "algebra": label, "degree": degree, "closed": cyc.is_closed(mc),
                "pairings": [pair(t, cyc) for t in traces],
                "component_sizes": [len(c) for c in cyc.components]}
    if blocks is None:
        raise InputError("chern needs a block family (s1, su2, field, matrix) or --idempotent")
    mat = chern_matrix(a, blocks, degree)
    k = len(blocks.block_sizes)
    closed = all(chern_character(a, blocks.minimal_idempotent(j), degree, complex=mc).is_closed(mc)
                 for j in range(k))
    identity = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    report = {"kind": "chern", "algebra": label, "degree": degree, "closed": closed,
              "matrix": mat.to_dense(), "identity": mat.to_dense() == identity}
    if not (closed and report["identity"]):
        raise CheckFailed("Chern matrix is not the identity or a cycle is not closed", report)
    return report


def _parse_vector(text: str, dim: int) -> dict:
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        try:
            k, v = part.split(":")
            k = int(k)
            out[k] = Fraction(v.strip())
        except ValueError:
            raise InputError(f"bad vector entry {part!r}; expected index:value") from None
        if not 0 <= k < dim:
            raise InputError(f"vector index {k} out of range for dim {dim}")
    return out


def _weight(text: str):
    if text not in ("1", "n"):
        raise InputError("--weight must be 1 or n")
    return 1 if text == "1" else "n"


def _sequence_report(seq: GrowthSequence, weight) -> dict:
    table = classify(seq, weight)
    show = {True: "yes", False: "no", None: "undecided"}
    return {"sequence": str(seq), "p": list(seq.p), "q": list(seq.q), "r": seq.r, "s": seq.s,
            "overrides": [[k, v] for k, v in seq.overrides], "weight": str(weight),
            "classes": {c.value: show[table[c]] for c in GrowthClass}}


def cmd_growth_classify(args) -> dict:
    try:
        seq = GrowthSequence.parse(args.sequence, args.overrides or None)
    except (SequenceSyntaxError, NonCanonical) as exc:
        raise InputError(str(exc)) from None
    return {"kind": "growth-classify", **_sequence_report(seq, _weight(args.weight))}


def _growth_class(name: str) -> GrowthClass:
    for c in GrowthClass:
        if c.value.lower() == name.lower():
            return c
    raise InputError(f"unknown growth class {name!r}; choose from {', '.join(c.value for c in GrowthClass)}")


def cmd_growth_witness(args) -> dict:
    lower, upper = _growth_class(args.lower), _growth_class(args.upper)
    weight = _weight(args.weight)
    try:
        seq = inclusion_witness(lower, upper, weight)
    except NotComparable as exc:
        raise InputError(str(exc)) from None
    return {"kind": "growth-witness", "lower": lower.value, "upper": upper.value,
            **_sequence_report(seq, weight)}


def cmd_demo_lim_prod(args) -> dict:
    if args.k < 1:
        raise InputError("k must be >= 1")
    return lim_prod_demo(args.k).to_dict()


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", help="differential cache (default: $CYCLIC_WORKBENCH_CACHE)")
    common.add_argument("--no-mod-check", action="store_true", help="skip the random-prime rank cross-check")
    common.add_argument("--seed", type=int, default=0, help="seed for the mod-check primes")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="algebra file (JSON)")
    source.add_argument("--family", choices=FAMILIES)
    source.add_argument("--truncation", type=int, help="irrep cutoff for s1/su2, size for matrix")
    source.add_argument("--force", action="store_true", help="lift the tensor-size cap")

    p = argparse.ArgumentParser(prog="cyclic-workbench",
                                description="Hochschild and cyclic homology of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", help="algebra utilities").add_subparsers(dest="action", required=True)
    a.add_parser("check", parents=[common, source], help="associativity and unit").set_defaults(fn=cmd_algebra_check)

    for name, fn in (("hh", cmd_hh), ("hc", cmd_hc), ("hp", cmd_hp)):
        sp = sub.add_parser(name, parents=[common, source], help=f"{name.upper()} dimensions")
        sp.add_argument("--cutoff", type=int, default=3)
        sp.add_argument("--cohomology", action="store_true", help="dual complex instead")
        sp.add_argument("--unnormalized", action="store_true", help="full bar complex (hh only)")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("sbi", parents=[common, source], help="SBI exactness certificate")
    sp.add_argument("--cutoff", type=int, default=3)
    sp.set_defaults(fn=cmd_sbi)

    v = sub.add_parser("verify", help="verifier suites").add_subparsers(dest="action", required=True)
    sp = v.add_parser("all", parents=[common], help="every structural check on the built-in corpus")
    sp.add_argument("--cutoff", type=int, default=3)
    sp.set_defaults(fn=cmd_verify_all)

    sp = sub.add_parser("chern", parents=[common, source], help="Chern character pairings")
    sp.add_argument("--degree", type=int, default=4, help="top even chain degree")
    sp.add_argument("--idempotent", help="idempotent as index:value pairs")
    sp.set_defaults(fn=cmd_chern)

    g = sub.add_parser("growth", help="growth classes").add_subparsers(dest="action", required=True)
    sp = g.add_parser("classify", parents=[common])
    sp.add_argument("sequence", help="e.g. 'n^3', '1/(n+1)^2', '2^n * fact(n)^-1'")
    sp.add_argument("--overrides", default="", help="finite changes as index:value pairs")
    sp.add_argument("--weight", default="1")
    sp.set_defaults(fn=cmd_growth_classify)
    sp = g.add_parser("witness", parents=[common])
    sp.add_argument("lower")
    sp.add_argument("upper")
    sp.add_argument("--weight", default="1")
    sp.set_defaults(fn=cmd_growth_witness)

    d = sub.add_parser("demo", help="demonstrations").add_subparsers(dest="action", required=True)
    sp = d.add_parser("lim-prod", parents=[common])
    sp.add_argument("--k", type=int, default=10)
    sp.set_defaults(fn=cmd_demo_lim_prod)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    guard = contextlib.nullcontext() if args.no_mod_check else mod_check(primes=1, seed=args.seed)
    try:
        with guard:
            report = args.fn(args)
    except CheckFailed as exc:
        print(render(exc.report, args.format), file=stdout)
        print(f"check failed: {exc}", file=stderr)
        return 1
    except RankMismatch as exc:
        print(f"rank cross-check failed: {exc}", file=stderr)
        return 1
    except SizeLimit as exc:
        print(f"input error: degree {exc.degree} needs {exc.size} basis elements, over the cap; "
              "use --force to lift it", file=stderr)
        return 2
    except (InputError, alg.NotUnital) as exc:
        print(f"input error: {exc}", file=stderr)
        return 2
    print(render(report, args.format), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
