"""Command-line front end.  Every command prints one JSON document.

Exit status is 0 iff every check in the command passed, 2 for usage or
input errors, 1 for a failed identity.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from gmpy2 import mpq

from . import bform, clifford, heis_fock, rewrite, tilde_fock
from .algebra import Element, ParseError, Scalar, format_element, parse, word_str
from .partitions import partition_count, partitions_of


class UsageError(Exception):
    pass


def _q(c) -> str:
    c = mpq(c)
    return f"{c.numerator}/{c.denominator}"


def _mu(text: str) -> Scalar:
    try:
        mu = mpq(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"mu must be a rational p/q, got {text!r}") from None
    if mu == 0:
        raise UsageError("mu must be nonzero")
    return mu


def _element_rows(e: Element) -> list[dict]:
    return [{"coeff": _q(c), "word": [repr(g) for g in w]} for w, c in e]


def _word_json(w) -> list[str]:
    return [repr(g) for g in w]


def _parse(text: str) -> Element:
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands; each returns (result payload, ok flag or None, first counterexample)


def cmd_nf1(args):
    e = _parse(args.expr)
    nf = rewrite.nf1(e)
    return {"input": args.expr, "normal_form": _element_rows(nf), "text": format_element(nf)}, None, None


def cmd_nf2(args):
    e = _parse(args.expr)
    nf = clifford.nf2(e)
    return {"input": args.expr, "normal_form": _element_rows(nf), "text": format_element(nf)}, None, None


def cmd_pi(args):
    e = _parse(args.expr)
    return {"input": args.expr, "image": clifford.format_smash(clifford.pi(e))}, None, None


def cmd_confluence(args):
    if args.window < 0:
        raise UsageError("window must be nonnegative")
    reports = rewrite.confluence_suite(args.window)
    bad = [r for r in reports if not r.agree]
    counts = {f: sum(1 for r in reports if r.family == f) for f in rewrite.FAMILIES}
    first = None
    if bad:
        r = bad[0]
        first = {"overlap": r.describe(), "left_first": format_element(r.left_first),
                 "right_first": format_element(r.right_first)}
    return {"overlaps": len(reports), "per_family": counts, "disagreements": len(bad)}, not bad, first


def cmd_fock(args):
    if args.fock_cmd == "apply":
        e = _parse(args.word)
        P = heis_fock.apply_element(e, heis_fock.ONE, _mu(args.mu))
        return {"word": args.word, "mu": _q(_mu(args.mu)), "vector": heis_fock.format_poly(P)}, None, None
    if args.fock_cmd == "duality":
        if args.max_weight < 0:
            raise UsageError("max-weight must be nonnegative")
        bad = [lam for n in range(args.max_weight + 1) for lam in partitions_of(n)
               if not heis_fock.duality_check(lam)]
        checked = sum(partition_count(n) for n in range(args.max_weight + 1))
        first = {"partition": list(bad[0])} if bad else None
        return {"partitions_checked": checked, "violations": [list(l) for l in bad]}, not bad, first
    if args.fock_cmd == "relations":
        try:
            window = heis_fock.ModeWindow(args.window, args.degree)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        mus = [_mu(m) for m in (args.mu or ["1"])]
        fails = heis_fock.relations_suite(window, mus)
        first = None
        if fails:
            f = fails[0]
            first = {"relation": f["relation"], "m": f["m"], "n": f["n"], "mu": _q(f["mu"]),
                     "monomial": heis_fock.format_poly({f["monomial"]: 1})[0]["monomial"],
                     "residual": heis_fock.format_poly(f["residual"])}
        return {"window": args.window, "degree": args.degree, "mu": [_q(m) for m in mus],
                "failures": len(fails)}, not fails, first
    raise UsageError(f"unknown fock command {args.fock_cmd!r}")


def cmd_gram(args):
    if args.degree < 0:
        raise UsageError("degree must be nonnegative")
    G = bform.gram(args.degree, _mu(args.mu))
    return {
        "degree": G.degree,
        "mu": _q(_mu(args.mu)),
        "labels": [list(l) for l in G.labels],
        "matrix": [[_q(c) for c in row] for row in G.entries],
        "identity": G.is_identity(),
        "det": _q(G.det()),
    }, None, None


def cmd_gdim(args):
    if args.max < 0:
        raise UsageError("max must be nonnegative")
    dims = bform.gdim(args.max, _mu(args.mu))
    expect = [partition_count(n) for n in range(args.max + 1)]
    first = None
    if dims != expect:
        n = next(i for i, (d, p) in enumerate(zip(dims, expect)) if d != p)
        first = {"degree": n, "dimension": dims[n], "partitions": expect[n]}
    return {"mu": _q(_mu(args.mu)), "dimensions": dims, "partition_counts": expect}, dims == expect, first


def cmd_tilde(args):
    if args.tilde_cmd == "verify":
        if args.energy < 0 or args.window < 0:
            raise UsageError("energy and window must be nonnegative")
        fails = tilde_fock.tilde_relations_suite(args.energy, args.window)
        first = None
        if fails:
            f = fails[0]
            first = {"relation": f["relation"], "m": f["m"], "n": f["n"],
                     "state": {"a": list(f["state"].a), "b": list(f["state"].b)},
                     "residual": tilde_fock.format_vector(f["residual"])}
        states = len(tilde_fock.states_up_to_energy(args.energy))
        return {"energy": args.energy, "window": args.window, "states": states,
                "failures": len(fails)}, not fails, first
    if args.tilde_cmd == "sc":
        try:
            v = tilde_fock.structure_constant(args.u, args.n, args.w)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {"u": args.u, "n": args.n, "w": args.w, "vector": tilde_fock.format_vector(v)}, None, None
    raise UsageError(f"unknown tilde command {args.tilde_cmd!r}")


def _ybe_payload(order: int):
    r = tilde_fock.ybe_unitarity_check(tilde_fock.STILDE, order)
    payload = {
        "order": order,
        "qybe_residual": {k: v.rows(("x", "z")) for k, v in r["qybe_residual"].items()},
        "unitarity_deviation": {k: v.rows(("x",)) for k, v in r["unitarity_deviation"].items()},
        "unitary_entries": r["unitary_entries"],
    }
    first = None
    if not r["qybe_ok"]:
        k = next(k for k, v in r["qybe_residual"].items() if not v.is_zero())
        first = {"basis": k, "residual": payload["qybe_residual"][k]}
    return payload, r["qybe_ok"], first


def cmd_ybe(args):
    if args.order < 1:
        raise UsageError("order must be at least 1")
    return _ybe_payload(args.order)


# ---------------------------------------------------------------------------
# suite


def _suite_checks(quick: bool):
    """(name, thunk) pairs; each thunk returns (summary, ok, first_failure)."""
    W = 3 if quick else 6
    D = 3 if quick else 6

    def confluence():
        reports = rewrite.confluence_suite(W)
        bad = [r.describe() for r in reports if not r.agree]
        return {"overlaps": len(reports)}, not bad, bad[0] if bad else None

    def pbw():
        r = clifford.pbw_cross_validation(2 if quick else 3, 4)
        f = r["failures"]
        return {"words": r["checked"]}, not f, (word_str(f[0]["word"]) if f else None)

    def relations():
        fails = heis_fock.relations_suite(heis_fock.ModeWindow(W, D), [1, 2, mpq(-1, 3)])
        first = None if not fails else f"{fails[0]['relation']} m={fails[0]['m']} n={fails[0]['n']}"
        return {"window": W, "degree": D}, not fails, first

    def duality():
        bad = [lam for n in range(D + 1) for lam in partitions_of(n) if not heis_fock.duality_check(lam)]
        return {"max_weight": D}, not bad, (list(bad[0]) if bad else None)

    def gram():
        bad = [n for n in range(D + 1) if not bform.gram(n, 1).is_identity()]
        return {"degrees": D + 1}, not bad, bad[0] if bad else None

    def gdim():
        N = 6 if quick else 10
        expect = [partition_count(n) for n in range(N + 1)]
        bad = [mu for mu in (1, 2) if bform.gdim(N, mu) != expect]
        return {"max": N}, not bad, (f"mu={bad[0]}" if bad else None)

    def degree0():
        r = rewrite.degree0_suite()
        f = r["failures"]
        return {"pairs": r["pairs"]}, not f, (word_str(f[0]["word"]) if f else None)

    def lemma_omega():
        r = heis_fock.lemma_omega_suite(4, heis_fock.ModeWindow(4, 0))
        v = r["violations"]
        return {"checked": r["checked"]}, not v, (word_str(v[0]) if v else None)

    def tilde():
        E, M = (3, 3) if quick else (5, 4)
        fails = tilde_fock.tilde_relations_suite(E, M)
        first = None if not fails else f"{fails[0]['relation']} m={fails[0]['m']} n={fails[0]['n']}"
        return {"energy": E, "window": M}, not fails, first

    def structure():
        bad = []
        for n in range(6):
            for u in "ab":
                if tilde_fock.structure_constant(u, n, u):
                    bad.append(f"{u}_{n}{u}")
            expect = tilde_fock.vacuum() if n == 0 else {}
            if tilde_fock.structure_constant("a", n, "b") != expect:
                bad.append(f"a_{n}b")
        return {}, not bad, bad[0] if bad else None

    def ybe():
        payload, ok, first = _ybe_payload(8)
        return {"unitary_entries": payload["unitary_entries"]}, ok, first

    return [
        ("confluence", confluence),
        ("pbw_cross_validation", pbw),
        ("fock_relations", relations),
        ("duality", duality),
        ("gram_orthonormal", gram),
        ("graded_dimensions", gdim),
        ("degree_zero_quotient", degree0),
        ("lemma_omega", lemma_omega),
        ("tilde_relations", tilde),
        ("structure_constants", structure),
        ("yang_baxter", ybe),
    ]


def cmd_suite(args):
    results = {}
    first = None
    for name, thunk in _suite_checks(args.quick):
        t0 = time.perf_counter()
        summary, ok, bad = thunk()
        entry = {"ok": ok, "summary": summary}
        if args.timings:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        if not ok:
            entry["first_counterexample"] = bad
            if first is None:
                first = {"check": name, "counterexample": bad}
        results[name] = entry
    return {"checks": results}, first is None, first


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clifflike", description=__doc__.splitlines()[0])
    p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("nf1", "normal form in the strictly shifted basis"),
                           ("nf2", "normal form in the weakly increasing basis"),
                           ("pi", "image in the Clifford smash product")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("expr", help='element, e.g. "1/2*Y[-1]*Ys[0] - Y[2]"')

    sp = sub.add_parser("confluence", help="check all overlap ambiguities")
    sp.add_argument("--window", type=int, default=6)

    fock = sub.add_parser("fock", help="the realization on Q[x1, x2, ...]")
    fsub = fock.add_subparsers(dest="fock_cmd", required=True)
    sp = fsub.add_parser("apply", help="apply an element to the vacuum 1")
    sp.add_argument("--word", required=True)
    sp.add_argument("--mu", default="1")
    sp = fsub.add_parser("duality", help="Y_{-lam}.1 = (-1)^|lam| Ys_{-lam'}.1")
    sp.add_argument("--max-weight", type=int, default=6)
    sp = fsub.add_parser("relations", help="relation residuals on monomials")
    sp.add_argument("--window", type=int, default=6)
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--mu", action="append", help="repeatable; default 1")

    sp = sub.add_parser("gram", help="Gram matrix in one degree")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--mu", default="1")
    sp = sub.add_parser("gdim", help="graded dimensions")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--mu", default="1")

    tilde = sub.add_parser("tilde", help="the fermionic realization")
    tsub = tilde.add_subparsers(dest="tilde_cmd", required=True)
    sp = tsub.add_parser("verify", help="component relation residuals")
    sp.add_argument("--energy", type=int, default=5)
    sp.add_argument("--window", type=int, default=4)
    sp = tsub.add_parser("sc", help="structure constant u~_n w~")
    sp.add_argument("--u", choices=("a", "b"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", choices=("a", "b"), required=True)

    sp = sub.add_parser("ybe", help="Yang-Baxter and unitarity of S(x)")
    sp.add_argument("--order", type=int, default=8)

    sp = sub.add_parser("suite", help="run verification suites")
    sp.add_argument("which", choices=("all",))
    sp.add_argument("--quick", action="store_true", help="smaller windows")
    sp.add_argument("--timings", action="store_true", help="include wall-clock seconds (not reproducible)")
    return p


COMMANDS = {
    "nf1": cmd_nf1, "nf2": cmd_nf2, "pi": cmd_pi, "confluence": cmd_confluence,
    "fock": cmd_fock, "gram": cmd_gram, "gdim": cmd_gdim, "tilde": cmd_tilde,
    "ybe": cmd_ybe, "suite": cmd_suite,
}


def _params(args) -> dict:
    skip = {"command", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "params": _params(args)}
    try:
        result, ok, first = COMMANDS[args.command](args)
    except UsageError as exc:
        report["error"] = str(exc)
        status = 2
    else:
        report["result"] = result
        if ok is not None:
            report["ok"] = ok
            if not ok:
                report["first_counterexample"] = first
        status = 0 if ok in (None, True) else 1
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status, text


def main(argv=None) -> int:
    status, text = run(argv)
    out = sys.stderr if status == 2 else sys.stdout
    print(text, file=out)
    return status


if __name__ == "__main__":
    sys.exit(main())
