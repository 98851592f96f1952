"""Command-line interface: ``twistcoh <subcommand> ...`` (also ``python3 -m twistcoh``)."""

from __future__ import annotations

import argparse
import configparser
import json
import random
import sys
from pathlib import Path

from . import __version__

SCHEMA_PREFIX = "twistcoh"
SCHEMA_VERSION = 1

_BOOL = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}


def load_config(path: str | Path) -> dict:
    """Read a ``key = value`` file ('#' comments, no sections needed)."""
    text = Path(path).read_text()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.read_string("[twistcoh]\n" + text)
    return dict(parser["twistcoh"])


def _as_bool(value: str, key: str) -> bool:
    try:
        return _BOOL[value.strip().lower()]
    except KeyError:
        raise ValueError(f"config key {key!r}: expected a boolean, got {value!r}") from None


def _global_flags() -> argparse.ArgumentParser:
    # defaults are SUPPRESS so flags may appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for all random choices")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="bounded worker pool size")
    p.add_argument("--config", default=argparse.SUPPRESS, metavar="PATH", help="key = value config file")
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog="twistcoh",
        description="Exact twisted cohomology of Artin groups of types A and B.",
        parents=[flags],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complex", parents=[flags], help="dump the cochain complex")
    p.add_argument("--family", choices=["A", "B"], default="B")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod-phi", type=int, default=None, help="reduce entries mod Phi_m first")

    p = sub.add_parser("cohomology", parents=[flags], help="cohomology by Smith normal form")
    p.add_argument("--family", choices=["A", "B"], default="B")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod-phi", type=int, default=None, help="family B: reduce mod Phi_m (required)")

    p = sub.add_parser("oracle", parents=[flags], help="closed-form tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod-phi", type=int, default=None)
    p.add_argument("--ratio", action="store_true", help="the q = -1 table over Q[t^+-1]")

    p = sub.add_parser("verify", parents=[flags], help="run the verification suite")
    p.add_argument("--family", choices=["B"], default="B")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--only", default=None, help="comma-separated checks to run")
    p.add_argument("--skip", default=None, help="comma-separated checks to skip")
    p.add_argument("--perturb-oracle", action="store_true", help="negative control: drop one predicted prime")
    p.add_argument("--perturb-matrix", action="store_true", help="negative control: corrupt one matrix entry")
    p.add_argument("--output", default=None, metavar="PATH", help="also write the JSON report here")

    p = sub.add_parser("poincare", parents=[flags], help="weighted Poincare series of W(B_n) by enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cosets", action="store_true", help="also list minimal coset representatives")

    p = sub.add_parser("euler", parents=[flags], help="alternating count over finite parabolic subsets")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph", metavar="PATH", help="graph file: 'rank n' then lines 'i j label'")
    g.add_argument("--affine", choices=["A", "B", "C"], help="affine family of rank n+1")
    g.add_argument("--random", type=int, metavar="K", help="K random two-dimensional graphs")
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("tym", parents=[flags], help="u-representation and induced matrices")
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--check", action="store_true", help="relations and conjugation identity (default)")
    mode.add_argument("--tables", action="store_true", help="transferred cohomology tables")

    p = sub.add_parser("ideals", parents=[flags], help="Groebner checks of the two ideal lemmas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lemma", type=int, choices=[1, 2], default=None,
                   help="1: multiplication map into R/I(n, k-1); 2: product decomposition of I(n)")
    return parser


def _settings(args) -> dict:
    """Merge defaults < config file < command-line flags."""
    out = {"json": False, "seed": 0, "workers": 1}
    cfg = {}
    if getattr(args, "config", None):
        cfg = load_config(args.config)
        for key in ("seed", "workers"):
            if key in cfg:
                out[key] = int(cfg[key])
        if "json" in cfg:
            out["json"] = _as_bool(cfg["json"], "json")
    for key in ("json", "seed", "workers"):
        if hasattr(args, key):
            out[key] = getattr(args, key)
    out["config"] = cfg
    return out


def _emit(settings: dict, kind: str, payload: dict, text: str) -> None:
    if settings["json"]:
        doc = {"schema": f"{SCHEMA_PREFIX}.{kind}/{SCHEMA_VERSION}", **payload}
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands; each returns an exit code


def cmd_complex(args, st) -> int:
    from .salvetti import build_complex, reduce_complex_mod_phi

    cx = build_complex(args.family, args.n)
    if args.mod_phi:
        cx = reduce_complex_mod_phi(cx, args.mod_phi)
    payload = cx.to_json()
    if args.mod_phi:
        payload["m"] = args.mod_phi
    lines = [f"family {cx.family}  n={cx.n}  ring {cx.ring}"]
    for k in cx.degrees:
        lines.append(f"C^{k}: {' '.join(cx.basis(k)) or '-'}")
    for k in cx.degrees:
        if k - cx.shift < len(cx.matrices):
            lines.append(f"d^{k}:")
            for row in cx.matrix(k):
                lines.append("  [" + ", ".join(str(x) if x else "0" for x in row) + "]")
    _emit(st, "complex", payload, "\n".join(lines))
    return 0


def cmd_cohomology(args, st) -> int:
    from .homology import cohomology_modules, cyclotomic_candidates
    from .salvetti import build_complex, reduce_complex_mod_phi, type_a_over_q

    if args.family == "A":
        cx = type_a_over_q(args.n)
        mods = cohomology_modules(cx, cyclotomic_candidates(args.n + 1))
        ring = "Q[q]"
    else:
        if not args.mod_phi:
            print("error: family B needs --mod-phi m (R itself is not a PID)", file=sys.stderr)
            return 2
        cx = reduce_complex_mod_phi(build_complex("B", args.n), args.mod_phi)
        mods = cohomology_modules(cx)
        ring = cx.ring
    payload = {"family": args.family, "n": args.n, "m": args.mod_phi, "ring": ring,
               "degrees": [d.to_json() for d in mods]}
    lines = [f"H^*(family {args.family}, n={args.n}) over {ring}"]
    for d in mods:
        prim = ", ".join(f"({p})^{k}" if k > 1 else f"({p})" for p, k in d.to_json()["primary"])
        lines.append(f"H^{d.degree}: free rank {d.free_rank}; torsion {prim or '0'}"
                     + (f"; unexplained degree {d.unexplained_degree}" if d.unexplained_degree else ""))
    _emit(st, "cohomology", payload, "\n".join(lines))
    return 0


def cmd_oracle(args, st) -> int:
    from .oracle import main_theorem_table, predicted_mod_phi, ratio_theorem_table

    if args.ratio:
        table = ratio_theorem_table(args.n)
        _emit(st, "oracle", table.to_json(),
              "\n".join(f"H^{k}: Q[t]/({', '.join(str(x) for x in v)})" for k, v in sorted(table.modules.items())))
        return 0
    if args.mod_phi:
        pred = predicted_mod_phi(args.n, args.mod_phi)
        doc = pred.to_json()
        lines = [f"predicted H^*(C_{args.n} mod Phi_{args.mod_phi}) over K_{args.mod_phi}[t]"]
        for k in range(args.n + 1):
            row = doc["degrees"].get(str(k), [])
            lines.append(f"H^{k}: " + (", ".join(f"({p})^{c}" if c > 1 else f"({p})" for p, c in row) or "0"))
        _emit(st, "oracle", doc, "\n".join(lines))
        return 0
    table = main_theorem_table(args.n)
    lines = [f"H^*(B_{args.n}; R)"]
    for k in range(args.n + 1):
        v = table.degree(k)
        lines.append(f"H^{k}: " + (" + ".join(str(x) for x in v) or "0"))
    _emit(st, "oracle", table.to_json(), "\n".join(lines))
    return 0


def cmd_verify(args, st) -> int:
    from .verify import TOGGLES, VerifyConfig, run_verify

    cfgfile = st["config"]
    cfg = VerifyConfig(seed=st["seed"], workers=st["workers"])
    if "n_max" in cfgfile:
        cfg.n_max = int(cfgfile["n_max"])
    if "m_max" in cfgfile:
        cfg.m_max = int(cfgfile["m_max"])
    for key in ("betti_points", "random_graphs"):
        if key in cfgfile:
            setattr(cfg, key, int(cfgfile[key]))
    for key in ("perturb_oracle", "perturb_matrix"):
        if key in cfgfile:
            setattr(cfg, key, _as_bool(cfgfile[key], key))
    for name in TOGGLES:
        key = f"check_{name}"
        if key in cfgfile:
            cfg.enabled[name] = _as_bool(cfgfile[key], key)
    unknown = set(cfgfile) - {"n_max", "m_max", "betti_points", "random_graphs", "perturb_oracle",
                              "perturb_matrix", "seed", "workers", "json"} - {f"check_{t}" for t in TOGGLES}
    if unknown:
        print(f"error: unknown config keys {sorted(unknown)}", file=sys.stderr)
        return 2
    if args.n_max is not None:
        cfg.n_max = args.n_max
    if args.m_max is not None:
        cfg.m_max = args.m_max
    if args.perturb_oracle:
        cfg.perturb_oracle = True
    if args.perturb_matrix:
        cfg.perturb_matrix = True
    if args.only:
        wanted = {s.strip() for s in args.only.split(",") if s.strip()}
        cfg.enabled = {k: k in wanted for k in TOGGLES}
        cfg.enabled.update({k: True for k in wanted if k not in TOGGLES})
    if args.skip:
        for s in args.skip.split(","):
            if s.strip():
                cfg.enabled[s.strip()] = False
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_verify(cfg)
    doc = report.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2))
    if st["json"]:
        print(json.dumps(doc, indent=2))
    else:
        print(report.to_text())
    return 0 if report.passed else 1


def cmd_poincare(args, st) -> int:
    from .arith import qt_double_factorial
    from .coxeter import enumerate_weighted_poincare, minimal_coset_reps

    w = enumerate_weighted_poincare(args.n)
    closed = qt_double_factorial(args.n)
    ok = w == closed
    payload = {"n": args.n, "series": w.to_string(), "matches_closed_form": ok}
    lines = [f"W(q,t) for B_{args.n} = {w}", f"equals [2n]!!: {ok}"]
    if args.cosets:
        reps, gen = minimal_coset_reps(args.n)
        payload["cosets"] = [{"word": list(word), "length": ln, "special": r} for word, ln, r in reps]
        payload["coset_generating_function"] = gen.to_string()
        lines.append(f"{len(reps)} minimal coset representatives; generating function {gen}")
    _emit(st, "poincare", payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_euler(args, st) -> int:
    from .coxeter import (
        affine_a_graph,
        affine_b_graph,
        affine_c_graph,
        euler_characteristic_kfin,
        parse_graph,
        random_two_dimensional_graph,
    )

    graphs = []
    if args.graph:
        graphs.append(parse_graph(Path(args.graph).read_text()))
    elif args.affine:
        if args.n is None:
            print("error: --affine needs --n", file=sys.stderr)
            return 2
        make = {"A": affine_a_graph, "B": affine_b_graph, "C": affine_c_graph}[args.affine]
        graphs.append(make(args.n))
    else:
        rng = random.Random(st["seed"])
        for _ in range(args.random):
            graphs.append(random_two_dimensional_graph(args.n or rng.randint(3, 6), rng))
    rows = [{"graph": g.to_text(), "rank": g.rank, "euler": euler_characteristic_kfin(g)} for g in graphs]
    text = "\n".join(f"rank {r['rank']}: chi = {r['euler']}   [{r['graph'].replace(chr(10), '; ')}]" for r in rows)
    _emit(st, "euler", {"graphs": rows}, text)
    return 0


def cmd_tym(args, st) -> int:
    from .shapiro import (
        affine_cohomology_table,
        check_braid_relations,
        check_conjugation_equivalence,
        check_pure_braid_abelian,
        induced_representation,
        tym_cohomology_table,
        tym_representation,
    )

    if args.tables:
        tables = [tym_cohomology_table(args.n).to_json()]
        if args.n >= 2:
            tables.append(affine_cohomology_table(args.n, "Q").to_json())
            tables.append(affine_cohomology_table(args.n, "Q[q]").to_json())
        lines = []
        for t in tables:
            lines.append(f"H^*({t['group']}; {t['coefficients']})  [{t['provenance']}]")
            for k, v in t["degrees"].items():
                lines.append(f"  H^{k}: {', '.join(v)}")
        _emit(st, "tym", {"n": args.n, "tables": tables}, "\n".join(lines))
        return 0
    results = {
        "braid_relations_u": check_braid_relations(tym_representation(args.n)),
        "braid_relations_induced": check_braid_relations(induced_representation(args.n)),
        "conjugation_identity": check_conjugation_equivalence(args.n),
        "pure_braid_abelian": check_pure_braid_abelian(tym_representation(args.n)),
    }
    ok = all(results.values())
    lines = [f"{k}: {'PASS' if v else 'FAIL'}" for k, v in results.items()]
    _emit(st, "tym", {"n": args.n, "checks": results, "status": "PASS" if ok else "FAIL"}, "\n".join(lines))
    return 0 if ok else 1


def cmd_ideals(args, st) -> int:
    from .groebner import verify_lemma_ideali1, verify_lemma_ideali2

    reports = []
    if args.lemma in (None, 1):
        for k in range(2, args.n + 1):
            if args.n % k == 0:
                reports.append(verify_lemma_ideali2(args.n, k))
    if args.lemma in (None, 2):
        reports.append(verify_lemma_ideali1(args.n))
    ok = all(r.passed for r in reports)
    lines = [f"{r.name} {r.params}: {r.status}  {r.details}" for r in reports]
    _emit(st, "ideals", {"n": args.n, "reports": [r.to_json() for r in reports],
                         "status": "PASS" if ok else "FAIL"}, "\n".join(lines) or "no applicable lemma instances")
    return 0 if ok else 1


COMMANDS = {
    "complex": cmd_complex,
    "cohomology": cmd_cohomology,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "poincare": cmd_poincare,
    "euler": cmd_euler,
    "tym": cmd_tym,
    "ideals": cmd_ideals,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        st = _settings(args)
        return COMMANDS[args.command](args, st)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
