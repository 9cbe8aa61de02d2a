"""Command-line entry point.  Every subcommand prints one JSON report on stdout.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
3 contract violation (bad input caught by a precondition).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from .exact import ContractError, GaussianRational, Q

log = logging.getLogger("sorelations")

SCHEMA = 1


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.checks: list[dict] = []
        self.values: dict = {}

    def check(self, name: str, ok: bool, details: str = ""):
        if not ok and not details:
            details = "check failed"
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "details": details})
        log.info("%s: %s %s", name, "pass" if ok else "FAIL", details)
        return ok

    def skip(self, name: str, details: str):
        self.checks.append({"name": name, "status": "skip", "details": details})

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def document(self, elapsed_ms: float) -> dict:
        return {"schema": SCHEMA, "command": self.command, "inputs": self.inputs,
                "checks": self.checks, "values": self.values, "timing": round(elapsed_ms, 3)}


def _s(x) -> str:
    """Stable string for exact scalars."""
    if isinstance(x, GaussianRational) and x.im == 0:
        return str(x.re)
    return str(x)


def markdown(doc: dict) -> str:
    lines = [f"### {doc['command']}", "", "| check | status | details |", "|---|---|---|"]
    for c in doc["checks"]:
        lines.append(f"| {c['name']} | {c['status']} | {c['details']} |")
    if doc["values"]:
        lines += ["", "| value | |", "|---|---|"]
        lines += [f"| {k} | {v} |" for k, v in doc["values"].items()]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_clifford(args, rep: Report):
    from .clifford import Signature, check_blade_bracket, check_so_bracket, gamma_rep
    sigs = [(p, N - p) for N in range(2, args.max_dim + 1) for p in range(N + 1)]
    if args.p is not None:
        sigs = [(args.p, args.q)]
    for p, q in sigs:
        sig = Signature(p, q)
        bad = check_blade_bracket(sig)
        rep.check(f"blade bracket so({p},{q})", not bad, f"first failure {bad[0]}" if bad else "")
        bad = check_so_bracket(gamma_rep(sig))
        rep.check(f"gamma bracket so({p},{q})", not bad, f"first failure {bad[0]}" if bad else "")
    rep.values["signatures"] = len(sigs)


def cmd_verify_cartan(args, rep: Report):
    from .cartan import build_dictionary, parse_algebra, verify_abstract, verify_cartan_relations
    from .clifford import gamma_rep
    kind, n = parse_algebra(args.algebra)
    d = build_dictionary(kind, n)
    rep.check("change of basis invertible", d.is_invertible())
    r = verify_abstract(d)
    rep.check("relations in the abstract algebra", r.passed, str(r.failures[:3]) if r.failures else "")
    r = verify_cartan_relations(d, gamma_rep(d.sig))
    rep.check("relations on the spin representation", r.passed, str(r.failures[:3]) if r.failures else "")
    rep.values["basis_size"] = len(d.names)


def _compact_values(m, rep: Report):
    from .compact import casimir_C, check_relations, weyl_dim
    r = check_relations(m)
    rep.values["dim"] = m.dim
    rep.check("dimension matches Weyl formula", m.dim == weyl_dim(m.kind, m.highest_weight))
    rep.check("quadratic relations", r.passed, "" if r.passed else f"first violation at {r.first_violation}")
    C = casimir_C(m)
    N = m.rep.signature.dim
    rep.values["C"] = _s(C)
    rep.values["c2"] = _s(C * GaussianRational(Q(1, 2)))
    if r.passed:
        rep.values["a"] = _s(r.a)
        rep.check("a = -2C/(p+q)", r.a == C * GaussianRational(Q(-2, N)))
    return r


def cmd_verify_compact(args, rep: Report):
    from .cartan import Weight, is_noncompact, parse_algebra
    from .compact import module_for_weight
    kind, n = parse_algebra(args.algebra)
    if is_noncompact(kind):
        raise ContractError("verify-compact needs a compact algebra; use verify-noncompact")
    m = module_for_weight(kind, n, Weight.parse(args.hw))
    _compact_values(m, rep)
    if args.expect_fail:
        # negative control: the report passes when the relations fail
        rel = next(c for c in rep.checks if c["name"] == "quadratic relations")
        rel["status"] = "pass" if rel["status"] == "fail" else "fail"
        rel["details"] = "expected failure observed" if rel["status"] == "pass" else "relations unexpectedly hold"
        rel["name"] = "quadratic relations fail (negative control)"


def cmd_verify_annihilator(args, rep: Report):
    from .cartan import D, Weight, parse_algebra
    from .compact import module_for_weight, verify_annihilator_identity
    kind, n = parse_algebra(args.algebra)
    if kind != D:
        raise ContractError("the annihilator identity is stated for so(2n)")
    m = module_for_weight(kind, n, Weight.parse(args.hw))
    r = verify_annihilator_identity(m)
    rep.check("O vanishes", r.O_zero)
    rep.check("O_1 kills the highest weight vector", r.O1_kills_hw)
    rep.check("decomposition of sum M_1k^2", r.decomposition)
    rep.check("cross-term identity", r.cross_terms)
    rep.values["reflected"] = r.reflected


def cmd_verify_noncompact(args, rep: Report):
    from .cartan import Weight, is_noncompact, parse_algebra
    from .classify import build_system
    from .verma import build_truncated, check_relations_truncated
    kind, n = parse_algebra(args.algebra)
    if not is_noncompact(kind):
        raise ContractError("verify-noncompact needs so(2,q)")
    hw = Weight.parse(args.hw)
    m = build_truncated(kind, n, hw, args.cutoff, require_dominant=not args.allow_nondominant)
    r = check_relations_truncated(m)
    ok = r.passed != args.expect_fail
    name = "quadratic relations (truncated)" + (" fail (negative control)" if args.expect_fail else "")
    rep.check(name, ok, "" if ok else f"violation at {r.first_violation}" if r.first_violation
              else "relations unexpectedly hold")
    rep.values["checked"] = r.checked
    if args.expect_fail:
        return
    C = m.casimir_C()
    c = build_system(kind, n).constant_at(hw)
    rep.values.update(a=_s(r.a), C=_s(C), c=str(c))
    rep.check("a = -2C/(p+q)", r.a == C * GaussianRational(Q(-2, m.d.sig.dim)))
    rep.check("a = -2c", r.a == GaussianRational(-2 * c))
    inert = m.gram_inertia()
    zero = sum(x[1] for x in inert.values())
    neg = sum(x[2] for x in inert.values())
    rep.values.update(n_neg=neg, n_zero=zero, blocks=len(inert))
    rep.check("Shapovalov form positive semidefinite", neg == 0, f"{neg} negative directions" if neg else "")
    rep.check("radical is nontrivial", zero > 0, "all Gram blocks nondegenerate" if zero == 0 else "")


def cmd_classify(args, rep: Report):
    from .cartan import parse_algebra
    from .classify import brute_force, build_system, solve
    kind, n = parse_algebra(args.algebra)
    sysm = build_system(kind, n)
    sol = solve(sysm)
    rep.values["system"] = sysm.describe()
    rep.values["solutions"] = sol.to_json()
    rep.check("every solution satisfies the system",
              all(sysm.satisfied_by(w) for w in sol.points)
              and all(sysm.satisfied_by(w) for f in sol.families for w in f.members(3)))
    if args.brute_bound is not None:
        b = Q(args.brute_bound)
        brute = brute_force(sysm, b).expand(b)
        mine = sol.expand(b)
        rep.check(f"solve agrees with brute force (bound {args.brute_bound})", brute == mine,
                  f"only brute: {sorted(brute - mine)[:3]} only solve: {sorted(mine - brute)[:3]}")


def cmd_verify_dynsym(args, rep: Report):
    from .dynsym import build_dynsym_1d, build_dynsym_2d, verify_table
    mu = Q(args.mu)
    t = build_dynsym_1d(mu) if args.dim == 1 else build_dynsym_2d(mu)
    comm, anti = verify_table(t)
    rep.check("commutation relations", comm.passed, f"failures {comm.failures[:3]}" if comm.failures else "")
    rep.check("anticommutator relations", anti.passed, f"failures {anti.failures[:3]}" if anti.failures else "")
    rep.values.update(quadruples=comm.checked, pairs=anti.checked, constant=_s(t.constant))


def cmd_spectrum(args, rep: Report):
    from . import spectral
    mu = Fraction(args.mu)
    if args.dim == 1:
        es = spectral.solve_1d(mu, args.levels, args.r_max, args.grid)
        degs = [1] * len(es)
        want_deg = degs
    else:
        from .verma import threads
        res = spectral.solve_2d(mu, count=args.levels, r_max=args.r_max, grid_points=args.grid,
                                workers=args.workers or threads())
        es, degs = res.energies, res.degeneracies
        want_deg = [int(2 * (i + mu) + 1) for i in range(args.levels)]
        rep.check("degeneracies 2(I+mu)+1", degs == want_deg, f"got {degs}, want {want_deg}")
    ref = [spectral.exact_level(args.dim, mu, i) for i in range(args.levels)]
    errs = [abs(e - r) / abs(r) for e, r in zip(es, ref)]
    rep.check(f"levels within {args.rel_tol:.1%}", len(es) == len(ref) and max(errs) < args.rel_tol,
              f"relative errors {[f'{x:.2e}' for x in errs]}")
    rep.check("strictly increasing", all(a < b for a, b in zip(es, es[1:])))
    rep.values.update(energies=[round(e, 10) for e in es], degeneracies=degs, reference=ref)


# acceptance-style sweep over the other commands
ALL_RUNS = [
    ["verify-clifford", "--max-dim", "7"],
    ["verify-cartan", "--algebra", "so(2,4)"],
    ["verify-cartan", "--algebra", "so(2,5)"],
    ["verify-compact", "--algebra", "so5", "--hw", "1/2,1/2"],
    ["verify-compact", "--algebra", "so7", "--hw", "1/2,1/2,1/2"],
    ["verify-compact", "--algebra", "so5", "--hw", "1,0", "--expect-fail"],
    ["verify-compact", "--algebra", "so6", "--hw", "1,1,1"],
    ["verify-annihilator", "--algebra", "so4", "--hw", "1,-1"],
    ["classify", "--algebra", "so(2,4)", "--brute-bound", "6"],
    ["verify-noncompact", "--algebra", "so(2,3)", "--hw", "-1/2,0", "--cutoff", "6"],
    ["verify-noncompact", "--algebra", "so(2,4)", "--hw", "-3/2,1/2,1/2", "--cutoff", "6"],
    ["verify-dynsym", "--dim", "1", "--mu", "1/2"],
    ["verify-dynsym", "--dim", "2", "--mu", "1/2"],
    ["spectrum", "--dim", "2", "--mu", "0", "--levels", "3"],
]


def cmd_all(args, rep: Report):
    parser = build_parser()
    for argv in ALL_RUNS:
        sub = parser.parse_args(_join_values(argv))
        inner = Report(sub.command, {})
        sub.func(sub, inner)
        label = " ".join(argv)
        for c in inner.checks:
            rep.checks.append({**c, "name": f"[{label}] {c['name']}"})
    rep.values["runs"] = len(ALL_RUNS)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sorelations", description=__doc__.splitlines()[0])
    ap.add_argument("--markdown", action="store_true", help="also print a markdown table on stderr")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-clifford", help="bracket identity over signatures p+q <= max-dim")
    p.add_argument("--max-dim", type=int, default=7)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int, default=0)
    p.set_defaults(func=cmd_verify_clifford)

    p = sub.add_parser("verify-cartan")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_verify_cartan)

    p = sub.add_parser("verify-compact")
    p.add_argument("--algebra", required=True)
    p.add_argument("--hw", required=True, help="comma-separated, e.g. 1/2,1/2")
    p.add_argument("--expect-fail", action="store_true")
    p.set_defaults(func=cmd_verify_compact)

    p = sub.add_parser("verify-annihilator")
    p.add_argument("--algebra", required=True)
    p.add_argument("--hw", required=True)
    p.set_defaults(func=cmd_verify_annihilator)

    p = sub.add_parser("verify-noncompact")
    p.add_argument("--algebra", required=True)
    p.add_argument("--hw", required=True)
    p.add_argument("--cutoff", type=int, default=6)
    p.add_argument("--expect-fail", action="store_true")
    p.add_argument("--allow-nondominant", action="store_true")
    p.set_defaults(func=cmd_verify_noncompact)

    p = sub.add_parser("classify")
    p.add_argument("--algebra", required=True)
    p.add_argument("--brute-bound")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-dynsym")
    p.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_verify_dynsym)

    p = sub.add_parser("spectrum")
    p.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--grid", type=int, default=20000)
    p.add_argument("--r-max", type=float, default=200.0)
    p.add_argument("--rel-tol", type=float, default=0.005)
    p.add_argument("--workers", type=int, help="sector threads (default DYNSYM_THREADS or 1)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("all", help="run a representative sweep of every command")
    p.set_defaults(func=cmd_all)
    return ap


def _join_values(argv):
    """``--hw -1,1/2`` -> ``--hw=-1,1/2`` so negative weights are not read as flags."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--hw", "--mu"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "command", "markdown", "verbose") and v is not None}
    rep = Report(args.command, inputs)
    t0 = time.perf_counter()
    code = 0
    try:
        args.func(args, rep)
    except ContractError as e:
        rep.check("contract", False, str(e))
        code = 3
    doc = rep.document((time.perf_counter() - t0) * 1000)
    print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    if args.markdown:
        print(markdown(doc), file=sys.stderr)
    if code:
        return code
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
