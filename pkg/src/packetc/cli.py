"""packetc command line.

Every command prints one response: a table by default, or with --json an
envelope {"schema", "command", "result", "diagnostics"}.  Failures print
{"schema", "command", "error": {"code", "message", "path"}} and exit 2
(validation) or 3 (unsupported).
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus, duality, global_admissibility, jacquet, local_forms, packets, parameters, tempered
from .component_group import Character, center_element, component_group, s_arthur, s_langlands
from .local_forms import FormError, Place, QuadraticSpace
from .parameters import GroupKind, Parameter, ParameterError

SCHEMA = "packetc/1"
EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 2, 3


class CommandError(ValueError):
    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


# input helpers


def read_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read {source}: {exc.strerror}", source) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"invalid JSON: {exc}", source) from exc


def load_parameter(source: str) -> Parameter:
    obj = read_json(source)
    try:
        return Parameter.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise CommandError(f"parameter schema violation: missing or malformed {exc}", source) from exc


def parse_signs(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    out = []
    for part in parts:
        part = part.strip()
        if part in ("+", "1", "+1"):
            out.append(1)
        elif part in ("-", "-1"):
            out.append(-1)
        else:
            raise CommandError(f"cannot read sign {part!r} in {text!r}")
    return tuple(out)


def place_of(args) -> Place:
    if getattr(args, "place", None) is not None:
        return Place.parse(args.place)
    if getattr(args, "p", None) is not None:
        return Place(args.p)
    return Place(3)


def sign_str(v: int) -> str:
    return "+" if v == 1 else "-"


def chars(values) -> str:
    return "".join(sign_str(v) for v in values)


# table rendering


def table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def kv_table(result: dict) -> str:
    return table(["key", "value"], [(k, json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in result.items()])


class Response:
    """A result plus an optional table renderer; the table is derived from
    the same dict that goes to JSON."""

    def __init__(self, result, render=None, diagnostics=()):
        self.result = result
        self.render = render or (lambda r: kv_table(r) if isinstance(r, dict) else str(r))
        self.diagnostics = list(diagnostics)


# forms


def cmd_forms_hilbert(args):
    place = place_of(args)
    v = local_forms.hilbert_symbol(Fraction(args.a), Fraction(args.b), place)
    return Response({"place": str(place), "a": args.a, "b": args.b, "symbol": v}, lambda r: str(r["symbol"]))


def cmd_forms_classify(args):
    place = place_of(args)
    spaces = local_forms.enumerate_spaces(place, args.dim, Fraction(args.disc))
    rows = []
    for s in spaces:
        row = s.to_json()
        row["witt"] = local_forms.witt_index(s)
        row["kottwitz"] = local_forms.kottwitz_sign(s)
        row["invariant"] = local_forms.normalized_invariant(s)
        rows.append(row)
    return Response(
        {"place": str(place), "dim": args.dim, "disc": args.disc, "spaces": rows},
        lambda r: table(
            ["form", "witt", "kottwitz", "invariant"],
            [(json.dumps(s.get("signature", s.get("hasse"))), s["witt"], s["kottwitz"], s["invariant"]) for s in r["spaces"]],
        ),
    )


def _space_from_args(args) -> QuadraticSpace:
    if args.signature:
        pos, neg = (int(x) for x in args.signature.split(","))
        return QuadraticSpace.real(pos, neg)
    if args.diag:
        return QuadraticSpace.from_diagonal([Fraction(x) for x in args.diag.split(",")], place_of(args))
    if args.dim is None:
        raise CommandError("give --diag, --signature or --dim")
    return QuadraticSpace.with_normalized_hasse(place_of(args), args.dim, Fraction(args.disc), args.hasse)


def cmd_forms_witt(args):
    s = _space_from_args(args)
    out = s.to_json()
    out.update(witt=local_forms.witt_index(s), kottwitz=local_forms.kottwitz_sign(s),
               invariant=local_forms.normalized_invariant(s))
    return Response(out)


def cmd_forms_product(args):
    a, b = Fraction(args.a), Fraction(args.b)
    places = [local_forms.REAL] + [Place(p) for p in local_forms.prime_factors(2 * abs(
        local_forms._as_integer_class(a) * local_forms._as_integer_class(b)))]
    rows = [{"place": str(v), "symbol": local_forms.hilbert_symbol(a, b, v)} for v in places]
    prod = 1
    for r in rows:
        prod *= r["symbol"]
    return Response(
        {"a": args.a, "b": args.b, "local": rows, "product": prod},
        lambda r: table(["place", "symbol"], [(x["place"], x["symbol"]) for x in r["local"]] + [("product", r["product"])]),
    )


# parameters


def cmd_param_validate(args):
    param = load_parameter(args.file)
    kind = parameters.validate(param)
    group = component_group(param)
    return Response({
        "kind": kind.value,
        "N": param.N,
        "group_dim": param.group_dim,
        "k": group.k,
        "basis": group.basis_names(),
        "label_disc": param.label_disc(),
        "z": list(center_element(group).coords),
        "s_langlands": list(s_langlands(group).coords),
        "s_arthur": list(s_arthur(group).coords),
    })


def cmd_param_dual(args):
    param = load_parameter(args.file)
    parameters.validate(param)
    dual = parameters.dual_parameter(param)
    return Response(dual.to_json(), lambda r: json.dumps(r, indent=2))


def cmd_param_random(args):
    rng = corpus.seeded_rng(args.seed)
    out = [corpus.random_discrete(rng, args.kind, max_blocks=args.blocks, max_N=args.max_n).to_json()
           for _ in range(args.count)]
    return Response(out, lambda r: "\n".join(json.dumps(x) for x in r))


# packets


def _form(param, args):
    return packets.pure_inner_form(param, args.hasse, place_of(args))


def cmd_packet_enumerate(args):
    param = load_parameter(args.file)
    form = _form(param, args)
    tab = packets.enumerate_packet(param, form)
    names = tab.group.basis_names()
    return Response(
        {"basis": names, "hasse": form.hasse, "kottwitz": form.kottwitz, "n_phi": tab.n_phi,
         "form": form.to_json(), "entries": [list(e.values) for e in tab.entries]},
        lambda r: table(["#"] + r["basis"], [[i] + [sign_str(v) for v in e] for i, e in enumerate(r["entries"])]),
    )


def _character(param, text) -> Character:
    return component_group(param).character(parse_signs(text))


def cmd_packet_evaluate(args):
    param = load_parameter(args.file)
    form = _form(param, args)
    s = component_group(param).element(parse_signs(args.s))
    combo = packets.evaluate_at(param, form, s)
    terms = [{"eps": list(k.values), "coeff": str(v)} for k, v in sorted(combo.terms.items())]
    return Response({"s": list(s.coords), "terms": terms},
                    lambda r: table(["eps", "coeff"], [(chars(t["eps"]), t["coeff"]) for t in r["terms"]]))


def cmd_packet_invert(args):
    param = load_parameter(args.file)
    form = _form(param, args)
    eps = _character(param, args.eps)
    coeffs = packets.invert(param, form, eps)
    back = packets.recombine(param, form, coeffs)
    terms = [{"s": list(s.coords), "coeff": str(c)} for s, c in sorted(coeffs.items())]
    recovered = [{"eps": list(k.values), "coeff": str(v)} for k, v in sorted(back.terms.items())]
    return Response({"eps": list(eps.values), "coefficients": terms, "recombined": recovered},
                    lambda r: table(["s", "coeff"], [(chars(t["s"]), t["coeff"]) for t in r["coefficients"]]))


# jacquet


def _member(args):
    param = load_parameter(args.file)
    form = _form(param, args)
    return jacquet.PacketMember(param, _character(param, args.eps), form)


def _member_json(m):
    if m is None:
        return None
    return {"parameter": m.parameter.to_json(), "eps": list(m.character.values), "form": m.form.to_json()}


def cmd_jacquet_apply(args):
    member = _member(args)
    rho = parameters.REGISTRY.get(args.rho) if args.rho in parameters.REGISTRY else None
    if rho is None:
        raise CommandError(f"unknown label {args.rho!r}")
    out = jacquet.jac(member, rho, Fraction(args.x))
    return Response({"rho": args.rho, "x": args.x, "result": _member_json(out)},
                    lambda r: "0" if r["result"] is None else json.dumps(r["result"], indent=2))


def cmd_jacquet_support(args):
    member = _member(args)
    sup = jacquet.cuspidal_support(member)
    return Response({
        "cuspidal": _member_json(sup.cuspidal_pair),
        "gl_segments": [[name, str(x)] for name, x in sup.gl_segments],
        "r": sup.r,
        "levi_rank": sup.levi_rank,
        "is_cuspidal": jacquet.is_cuspidal(member),
    })


def cmd_jacquet_cuspidal_count(args):
    param = load_parameter(args.file)
    return Response({"count": jacquet.count_cuspidals(param, _form(param, args))}, lambda r: str(r["count"]))


# tempered


def cmd_tempered_constituents(args):
    param = load_parameter(args.file)
    form = _form(param, args)
    group = component_group(param)
    items = tempered.constituents(param, form)
    counts = tempered.extension_counts(param, form)
    return Response(
        {"basis": group.basis_names(), "transfers": tempered.levi_transfers(param, form),
         "constituents": [list(e.values) for e in items],
         "extension_counts": [{"eps_M": list(k), "count": v} for k, v in sorted(counts.items())]},
        lambda r: table(["#"] + r["basis"], [[i] + [sign_str(v) for v in e] for i, e in enumerate(r["constituents"])]),
    )


def cmd_tempered_rgroup(args):
    param = load_parameter(args.file)
    dec = tempered.decompose(param)
    return Response({
        "ell": dec.ell,
        "rgroup_order": 2**dec.ell,
        "gl_part": [{"rho": rho.name, "a": a, "q": q} for rho, a, q in dec.gl_part],
        "discrete_support": dec.discrete_support.to_json(),
    })


# duality


def cmd_dual_map(args):
    psi = load_parameter(args.file)
    phi = parameters.dual_parameter(psi)
    try:
        form = packets.pure_inner_form(phi, args.hasse, place_of(args))
    except FormError as exc:
        raise duality.Unsupported(str(exc)) from exc
    mapping = duality.unipotent_packet(psi, form)
    rows = [{"eps_psi": list(k.values), "eps_phi": list(v.values)} for k, v in sorted(mapping.items())]
    return Response({"twist": list(duality.epsilon_phi(phi, form.place).values), "map": rows},
                    lambda r: table(["eps(psi)", "eps(phi)"], [(chars(x["eps_psi"]), chars(x["eps_phi"])) for x in r["map"]]))


def cmd_dual_signs(args):
    param = load_parameter(args.file)
    place = place_of(args)
    signs = duality.t_sign(param, place)
    group = component_group(param)
    rows = [{"eps": list(e.values), "levi_rank": r, "sigma": duality.sigma_sign(param, e, place),
             "eps_s_langlands": e(s_langlands(group))} for e, r in sorted(signs.r_table.items())]
    return Response({"t": signs.t, "a_gstar": signs.a_gstar, "rows": rows},
                    lambda r: f"t = {r['t']}  a_G* = {r['a_gstar']}\n" + table(
                        ["eps", "levi_rank", "sigma", "eps(s_phi)"],
                        [(chars(x["eps"]), x["levi_rank"], x["sigma"], x["eps_s_langlands"]) for x in r["rows"]]))


def cmd_dual_twist(args):
    param = load_parameter(args.file)
    place = place_of(args)
    tw = duality.epsilon_phi(param, place)
    group = component_group(param)
    return Response({"basis": group.basis_names(), "eps_phi": list(tw.values)},
                    lambda r: table(r["basis"], [[sign_str(v) for v in r["eps_phi"]]]))


# global


def _setting(args):
    obj = read_json(args.file)
    try:
        return global_admissibility.GlobalSetting.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise CommandError(f"setting schema violation: {exc}", args.file) from exc


def cmd_global_admissible(args):
    setting = _setting(args)
    raw = json.loads(args.family) if args.family.lstrip().startswith("[") else read_json(args.family)
    eps = tuple(Character(tuple(parse_signs(x) if isinstance(x, str) else (int(v) for v in x))) for x in raw)
    ok = global_admissibility.is_admissible(setting, eps)
    out = {"admissible": ok}
    if ok:
        family = global_admissibility.family_for(setting, eps)
        out["product_formula"] = global_admissibility.passes_product_formula(setting, family)
        out["family"] = family.to_json(setting)
    return Response(out)


def cmd_global_enumerate(args):
    setting = _setting(args)
    fams = global_admissibility.enumerate_admissible(setting)
    diags = [] if setting.center_compatible() else ["loc maps do not send the global center to the local centers"]
    return Response(
        {"count": len(fams), "kernel_size": len(global_admissibility.kernel(setting)),
         "coset": global_admissibility.is_kernel_coset(setting, fams),
         "families": [f.to_json(setting) for f in fams]},
        lambda r: table([str(d.place) for d in setting.places],
                        [[chars(p["eps"]) for p in f["places"]] for f in r["families"]]),
        diags,
    )


# batch


def cmd_batch(args):
    obj = read_json(args.file)
    if not isinstance(obj, list):
        raise CommandError("batch input must be a JSON list of argv lists or strings", args.file)
    out = []
    for i, item in enumerate(obj):
        argv = shlex.split(item) if isinstance(item, str) else [str(x) for x in item]
        code, envelope = execute(argv)
        out.append({"argv": argv, "exit": code, "response": envelope})
    return Response(out, lambda r: table(["#", "exit", "command"], [(i, x["exit"], " ".join(x["argv"])) for i, x in enumerate(r)]))


# parser


def _add_place(p):
    p.add_argument("--p", type=int, help="prime p for Q_p (default 3)")
    p.add_argument("--place", help="place: a prime or 'real'")


def _add_form(p):
    _add_place(p)
    p.add_argument("--hasse", type=int, choices=(1, -1), default=1, help="normalized Hasse invariant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="packetc", description="Discrete-series packet bookkeeping for orthogonal groups.")
    parser.add_argument("--json", action="store_true", help="emit the JSON envelope")
    top = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, help_=None):
        p = group.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return p

    forms = top.add_parser("forms", help="quadratic forms over Q_p and R").add_subparsers(dest="cmd", required=True)
    p = sub(forms, "hilbert", cmd_forms_hilbert)
    p.add_argument("a")
    p.add_argument("b")
    _add_place(p)
    p = sub(forms, "classify", cmd_forms_classify)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--disc", default="1")
    _add_place(p)
    p = sub(forms, "witt", cmd_forms_witt)
    p.add_argument("--dim", type=int)
    p.add_argument("--disc", default="1")
    p.add_argument("--hasse", type=int, choices=(1, -1), default=1)
    p.add_argument("--diag", help="comma-separated diagonal entries")
    p.add_argument("--signature", help="pos,neg at the real place")
    _add_place(p)
    p = sub(forms, "product", cmd_forms_product)
    p.add_argument("a")
    p.add_argument("b")

    param = top.add_parser("param", help="parameters").add_subparsers(dest="cmd", required=True)
    sub(param, "validate", cmd_param_validate).add_argument("file")
    sub(param, "dual", cmd_param_dual).add_argument("file")
    p = sub(param, "random", cmd_param_random)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--group", dest="kind", choices=[k.value for k in GroupKind], default=GroupKind.ODD.value)
    p.add_argument("--blocks", type=int, default=4)
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--seed", type=int, help="defaults to PACKETC_SEED")

    packet = top.add_parser("packet", help="discrete packets").add_subparsers(dest="cmd", required=True)
    p = sub(packet, "enumerate", cmd_packet_enumerate)
    p.add_argument("file")
    _add_form(p)
    p = sub(packet, "evaluate", cmd_packet_evaluate)
    p.add_argument("file")
    p.add_argument("--s", required=True, help="element of A(phi), e.g. +,-")
    _add_form(p)
    p = sub(packet, "invert", cmd_packet_invert)
    p.add_argument("file")
    p.add_argument("--eps", required=True)
    _add_form(p)

    jac = top.add_parser("jacquet", help="Jacquet modules").add_subparsers(dest="cmd", required=True)
    p = sub(jac, "apply", cmd_jacquet_apply)
    p.add_argument("file")
    p.add_argument("--eps", required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--x", required=True, help="exponent, e.g. 3/2")
    _add_form(p)
    p = sub(jac, "support", cmd_jacquet_support)
    p.add_argument("file")
    p.add_argument("--eps", required=True)
    _add_form(p)
    p = sub(jac, "cuspidal-count", cmd_jacquet_cuspidal_count)
    p.add_argument("file")
    _add_form(p)

    temp = top.add_parser("tempered", help="tempered parameters").add_subparsers(dest="cmd", required=True)
    p = sub(temp, "constituents", cmd_tempered_constituents)
    p.add_argument("file")
    _add_form(p)
    sub(temp, "rgroup", cmd_tempered_rgroup).add_argument("file")

    dual = top.add_parser("dual", help="duality signs").add_subparsers(dest="cmd", required=True)
    p = sub(dual, "map", cmd_dual_map)
    p.add_argument("file")
    _add_form(p)
    p = sub(dual, "signs", cmd_dual_signs)
    p.add_argument("file")
    _add_place(p)
    p = sub(dual, "twist", cmd_dual_twist)
    p.add_argument("file")
    _add_place(p)

    glob = top.add_parser("global", help="global admissibility").add_subparsers(dest="cmd", required=True)
    p = sub(glob, "admissible", cmd_global_admissible)
    p.add_argument("file")
    p.add_argument("--family", required=True, help="JSON list of per-place sign lists, or a file")
    sub(glob, "enumerate", cmd_global_enumerate).add_argument("file")

    p = top.add_parser("batch", help="run a JSON list of commands")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_batch)
    return parser


def _command_name(args) -> str:
    return " ".join(x for x in (getattr(args, "group", None), getattr(args, "cmd", None)) if x)


def execute(argv) -> tuple[int, dict]:
    """Run one command; returns (exit code, envelope) without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_OK if exc.code == 0 else EXIT_INVALID
        return code, {"schema": SCHEMA, "command": " ".join(argv[:2]),
                      "error": {"code": "usage", "message": "bad command line", "path": None}, "diagnostics": []}
    name = _command_name(args)
    try:
        resp = args.fn(args)
    except duality.Unsupported as exc:
        return EXIT_UNSUPPORTED, _error(name, "unsupported", exc)
    except CommandError as exc:
        return EXIT_INVALID, _error(name, "schema", exc, exc.path)
    except (ParameterError, FormError, global_admissibility.SettingError) as exc:
        return EXIT_INVALID, _error(name, "validation", exc)
    except (ValueError, KeyError) as exc:
        return EXIT_INVALID, _error(name, "validation", exc)
    env = {"schema": SCHEMA, "command": name, "result": resp.result, "diagnostics": resp.diagnostics}
    env["_render"] = resp.render
    return EXIT_OK, env


def _error(name, code, exc, path=None):
    return {"schema": SCHEMA, "command": name, "error": {"code": code, "message": str(exc), "path": path}, "diagnostics": []}


def _strip(env):
    if isinstance(env, dict):
        return {k: _strip(v) for k, v in env.items() if k != "_render"}
    if isinstance(env, list):
        return [_strip(x) for x in env]
    return env


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    as_json = "--json" in argv
    if not argv or argv in (["-h"], ["--help"]):
        build_parser().print_help()
        return EXIT_OK
    try:
        build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    code, env = execute(argv)
    render = env.get("_render")
    env = _strip(env)
    if as_json:
        print(json.dumps(env, indent=2, sort_keys=True))
    elif "error" in env:
        print(f"error ({env['error']['code']}): {env['error']['message']}", file=sys.stderr)
    else:
        print(f"# {SCHEMA} {env['command']}")
        print(render(env["result"]))
        for d in env["diagnostics"]:
            print(f"note: {d}")
    return code


if __name__ == "__main__":
    sys.exit(main())
