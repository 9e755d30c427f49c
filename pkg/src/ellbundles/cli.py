"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 invalid arguments, 3 a resource
cap was exceeded.
"""
from __future__ import annotations

import argparse
import ast
import json
import sys
from dataclasses import dataclass, field
from importlib import resources

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    format: str = "json"
    seed: int = 0
    cap: int | None = None


# -- output ---------------------------------------------------------------------------


def emit(report, fmt: str) -> str:
    """JSON (sorted keys, newline-terminated) or the report's ASCII form."""
    if fmt == "ascii" and not isinstance(report, dict):
        return report.to_ascii()
    if fmt == "ascii" and "ascii" in report:
        return report["ascii"]
    data = report if isinstance(report, dict) else report.to_dict()
    data = {k: v for k, v in data.items() if k != "ascii"}
    if not data:
        return "{}\n"
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def load_schema(name: str) -> dict:
    text = resources.files("ellbundles").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(data: dict, name: str) -> None:
    import jsonschema
    jsonschema.validate(data, load_schema(name))


# -- argument helpers ---------------------------------------------------------------------


def _pair(text: str) -> tuple:
    try:
        k, l = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected K,L, got {text!r}") from exc
    return k, l


def _span(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    return lo, hi


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _bundle_spec(text: str):
    """'Line:0,Ealpha:-2,FPush:4' -> StandardBundle."""
    from .moduli3 import KINDS, StandardBundle, StandardSummand
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        kind, _, tw = part.partition(":")
        if kind not in KINDS:
            raise argparse.ArgumentTypeError(f"unknown summand kind {kind!r}")
        try:
            out.append(StandardSummand(kind, int(tw or 0)))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad twist in {part!r}") from exc
    return StandardBundle(out)


# -- representation expressions -------------------------------------------------------------


def build_construct(expr: str, group: str):
    """Evaluate a small expression language for representations:
    mbar(n), m(n), trivial(G), P, Zzeta, IdealZeta, Z, sign,
    ind(H, X), res(H, X), sum(X, ...), tensor(X, Y), dual(X).
    ind(H, X) induces to the ambient group; a C2xC2 module is pulled back to Q8
    when H is Q8."""
    from .exactalg.rings import Integers
    from . import reps
    from .moduli3 import sign_lattice

    groups = {name: reps.build_group(name) for name in reps.SUPPORTED}
    ambient = groups[group]
    lattices = reps.s3_lattices()
    atoms = {"P": lattices.P, "Zzeta": lattices.Zzeta, "IdealZeta": lattices.IdealZeta,
             "Z": lattices.Z, "sign": sign_lattice()}

    def as_group(node):
        if isinstance(node, ast.Name) and node.id in groups:
            return groups[node.id]
        raise UsageError(f"expected a group name, got {ast.unparse(node)}")

    def as_int(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        raise UsageError(f"expected an integer, got {ast.unparse(node)}")

    def ev(node):
        if isinstance(node, ast.Name):
            if node.id in atoms:
                return atoms[node.id]
            raise UsageError(f"unknown module {node.id!r}")
        if not isinstance(node, ast.Call) or not isinstance(node.func, ast.Name) or node.keywords:
            raise UsageError(f"cannot evaluate {ast.unparse(node)}")
        f, args = node.func.id, node.args
        if f == "mbar" and len(args) == 1:
            return reps.mbar(as_int(args[0]))
        if f == "m" and len(args) == 1:
            return reps.m_n(as_int(args[0]), Integers())
        if f == "trivial" and len(args) == 1:
            return reps.trivial(as_group(args[0]), Integers())
        if f == "ind" and len(args) == 2:
            H, x = as_group(args[0]), ev(args[1])
            if x.group.name == "C2xC2" and H.name == "Q8":
                x = reps.pullback_q8(x)
            if x.group.name != H.name:
                raise UsageError(f"module lives on {x.group.name}, not {H.name}")
            return reps.induce(x, ambient)
        if f == "res" and len(args) == 2:
            return reps.restrict(ev(args[1]), as_group(args[0]))
        if f == "sum" and args:
            return reps.direct_sum(*(ev(a) for a in args))
        if f == "tensor" and len(args) == 2:
            return reps.tensor(ev(args[0]), ev(args[1]))
        if f == "dual" and len(args) == 1:
            return reps.dual(ev(args[0]))
        raise UsageError(f"unknown construction {f} with {len(args)} arguments")

    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse construct {expr!r}") from exc
    try:
        return ev(tree.body)
    except (reps.GroupError, reps.RepError) as exc:
        if isinstance(exc, reps.RankBoundError):
            raise
        raise UsageError(str(exc)) from exc


# -- subcommands ---------------------------------------------------------------------------


def cmd_wpl(cfg: CommandConfig) -> tuple:
    from . import wpl
    k, l = cfg.options["weights"]
    lo, hi = cfg.options["range"]
    ch = wpl.chart(wpl.WeightedLine(k, l), lo, hi)
    data = ch.to_dict()
    data["ascii"] = ch.to_ascii()
    return data, EXIT_OK


def cmd_ext_chart(cfg: CommandConfig) -> tuple:
    from .hopfext import (delta_stabilize, delta_torsion_flags, ext_chart, weierstrass,
                          weierstrass_short)
    o = cfg.options
    algebroid = {"auto": None, "full": weierstrass, "short": weierstrass_short}[o["model"]]
    try:
        chart = ext_chart(o["smax"], o["nmax"], o["prime"],
                          algebroid=algebroid() if algebroid else None, cap=cfg.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    delta_torsion_flags(chart)
    data = chart.to_dict()
    text = chart.to_ascii()
    if o["stabilize"]:
        rows = []
        for s in range(1, chart.s_max + 1):
            for n in range(chart.n_max + 1):
                st = delta_stabilize(chart, s, n)
                if st.stabilized:
                    rows.append({"s": s, "n": n, "group": str(st.group)})
        data["stable"] = rows
        text += "".join(f"stable ({r['s']},{r['n']}): {r['group']}\n" for r in rows)
    data["ascii"] = text
    return data, EXIT_OK


def cmd_reps(cfg: CommandConfig) -> tuple:
    from . import reps
    from .exactalg.rings import FiniteField
    o = cfg.options
    rep = build_construct(o["construct"], o["group"])
    p = o["field"]
    if not isinstance(rep.domain, FiniteField):
        rep = reps.reduce_mod(rep, p)
    elif rep.domain.q != p:
        raise UsageError(f"construct is defined over F_{rep.domain.q}, not F_{p}")
    report = reps.decompose(rep, seed=cfg.seed, rank_bound=o["rank_bound"])
    data = report.to_dict()
    data.update({"group": rep.group.name, "construct": o["construct"], "field": p})
    lines = [f"{o['construct']} over F_{p} ({rep.group.name}), rank {rep.rank}, seed {cfg.seed}"]
    for s in data["summands"]:
        lines.append(f"  rank {s['rank']:>3} x{s['multiplicity']}  End/rad dim "
                     f"{s['end_mod_rad_dim']}  {'certified' if s['certified'] else 'uncertified'}"
                     f"  {s['fingerprint']}")
    lines += [f"  flag: {f}" for f in data["flags"]]
    data["ascii"] = "\n".join(lines) + "\n"
    return data, EXIT_OK


def _bundle_row(b) -> dict:
    from .moduli3 import cohomology_table
    d = b.to_dict()
    d["cohomology"] = cohomology_table(b)
    return d


def cmd_bundles(cfg: CommandConfig) -> tuple:
    from . import moduli3 as m3
    o = cfg.options
    action = o["action"]
    if action == "normalize":
        try:
            with open(o["spec"], encoding="utf-8") as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {o['spec']}: {exc}") from exc
        e = m3.IteratedExtension.from_dict(spec)
        resolver = {"enumerate": m3.EnumerateAll, "zero": m3.Zero}[o["resolver"]]()
        result = m3.normalize(e, resolver)
        forms = [_bundle_row(b) for b in result.sorted_forms()]
        data = {"input_rank": e.rank, "resolver": o["resolver"], "normal_forms": forms,
                "rules": result.rules}
        data["ascii"] = "".join(f"{f['label']}  (rank {f['rank']})\n" for f in forms)
        return data, EXIT_OK
    if action == "cohomology":
        b = o["bundle"]
        data = _bundle_row(b)
        data["ascii"] = (f"{b.label()}\n"
                         + "".join(f"{k}: {' '.join(map(str, v))}\n"
                                   for k, v in data["cohomology"].items()))
        return data, EXIT_OK
    if action == "ifunctor":
        L = m3.i_functor(build_construct(o["lattice"], "S3"))
        data = {"lattice": o["lattice"], "image": L.to_dict()}
        data["ascii"] = f"I({o['lattice']}) = {L.label()}\n"
        return data, EXIT_OK
    raise UsageError(f"unknown bundles action {action}")


def cmd_verify(cfg: CommandConfig) -> tuple:
    from .verify import run_suite
    report = run_suite(cfg.options["suite"], criteria=cfg.options["criterion"] or None)
    data = report.to_dict()
    data["ascii"] = report.to_ascii()
    return data, EXIT_OK if report.passed else EXIT_CHECK


COMMANDS = {"wpl": cmd_wpl, "ext-chart": cmd_ext_chart, "reps": cmd_reps,
            "bundles": cmd_bundles, "verify": cmd_verify}
SCHEMAS = {"wpl": "wpl", "ext-chart": "ext-chart", "reps": "reps", "bundles": "bundles",
           "verify": "verify"}


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "ascii"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="ellbundles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("wpl", parents=[common], help="line bundle cohomology on P(k,l)")
    p.add_argument("--weights", type=_pair, required=True, metavar="K,L")
    p.add_argument("--range", type=_span, required=True, metavar="LO..HI")

    p = sub.add_parser("ext-chart", parents=[common], help="cobar Ext chart")
    p.add_argument("--smax", type=_nonneg, required=True)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--prime", type=int, default=3)
    p.add_argument("--model", choices=("auto", "full", "short"), default="auto")
    p.add_argument("--cap", type=_nonneg, default=None,
                   help="cobar basis cap (default from ELLBUNDLES_BASIS_CAP or 20000)")
    p.add_argument("--stabilize", action="store_true",
                   help="also report Δ-stabilized groups where the range allows")

    p = sub.add_parser("reps", parents=[common], help="module decomposition")
    p.add_argument("action", choices=("decompose",))
    p.add_argument("--group", default="GL2F3", choices=("S3", "C2xC2", "Q8", "SL2F3", "GL2F3"))
    p.add_argument("--construct", required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--rank-bound", type=_nonneg, default=128, dest="rank_bound")

    p = sub.add_parser("bundles", parents=[common], help="standard bundles at 3")
    p.add_argument("action", choices=("normalize", "cohomology", "ifunctor"))
    p.add_argument("--spec", help="JSON stage list for normalize")
    p.add_argument("--resolver", choices=("enumerate", "zero"), default="enumerate")
    p.add_argument("--bundle", type=_bundle_spec, help="e.g. Line:0,Ealpha:-2")
    p.add_argument("--lattice", help="dictionary expression, e.g. sum(P, Zzeta)")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance manifest")
    p.add_argument("--suite", default="paper")
    p.add_argument("--criterion", type=int, action="append")
    return parser


def _join_negative_values(argv: list) -> list:
    # argparse reads "--range -22..12" as two flags; rewrite to "--range=-22..12"
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--range={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def parse_config(argv) -> CommandConfig:
    parser = build_parser()
    ns = parser.parse_args(_join_negative_values(list(argv)))
    opts = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "format", "seed", "cap")}
    cap = getattr(ns, "cap", None)
    if ns.subcommand == "bundles":
        need = {"normalize": "spec", "cohomology": "bundle", "ifunctor": "lattice"}[ns.action]
        if opts.get(need) is None:
            parser.error(f"bundles {ns.action} requires --{need}")
    if ns.subcommand == "ext-chart" and ns.prime < 2:
        parser.error("--prime must be a prime")
    return CommandConfig(ns.subcommand, opts, ns.format, ns.seed, cap)


def run(cfg: CommandConfig) -> tuple:
    """Returns (exit status, output text)."""
    from .hopfext import ResourceLimitError
    from .moduli3 import MalformedExtension, NotInDictionary, Unsupported
    from .reps import RankBoundError
    try:
        data, status = COMMANDS[cfg.subcommand](cfg)
    except (ResourceLimitError, RankBoundError) as exc:
        return EXIT_RESOURCE, json.dumps({"error": str(exc), "kind": "resource"}) + "\n"
    except (UsageError, MalformedExtension, NotInDictionary, Unsupported) as exc:
        return EXIT_USAGE, json.dumps({"error": str(exc), "kind": "usage"},
                                      ensure_ascii=False) + "\n"
    return status, emit(data, cfg.format)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status, text = run(cfg)
    stream = sys.stdout if status in (EXIT_OK, EXIT_CHECK) else sys.stderr
    stream.write(text)
    stream.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
