"""``latgal`` command line.

Exit codes: 0 success, 1 property false or witness found, 2 input error,
3 internal alarm (a proved statement failed on a verified instance).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import fixtures
from .abelian import FinAbGroup, bimodule, subgroup_lattice
from .errors import (
    HypothesisNotMet, LatgalError, NotAdjoint, NotModular, NotMonotone, TheoremViolation,
)
from .essentiality import (
    closed_elements, coclosed_elements, hollow_dimension, is_amply_supplemented,
    is_extending, is_hollow, is_lifting, is_uc, is_ucc, is_uniform, uniform_dimension,
)
from .formats import emit_dot, format_lattice, load_lattice, load_map
from .galois import (
    FLAG_NAMES, GaloisConnection, MODES, classify, closed_correspondence, galois_elements,
    verify_dual_correspondence, verify_extending_transfer, verify_udim_theorem,
)
from .lattice import (
    Lattice, cyclic_elements, dual, is_cyclically_generated, is_distributive, is_modular,
)
from .search import PropertyQuery, find_witness, run_theorem_suite

SCHEMA = 1
OK, FALSE, INPUT_ERROR, ALARM = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if getattr(args, "json", False):
        out = {"schema": SCHEMA, "command": args.command}
        out.update(payload)
        sys.stdout.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _names(L: Lattice, xs) -> list[str]:
    return [L.names[x] for x in sorted(xs)]


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


# -- loading -----------------------------------------------------------------

def _load_lattice(args) -> Lattice:
    if args.fixture:
        if args.fixture not in fixtures.LATTICES:
            raise InputError(f"unknown lattice fixture {args.fixture!r}; "
                             f"choose from {', '.join(fixtures.LATTICES)}")
        return fixtures.lattice(args.fixture)
    if len(args.files) != 1:
        raise InputError("expected one lattice file (or --fixture)")
    return load_lattice(args.files[0])


def _load_connection(args) -> GaloisConnection:
    if args.fixture:
        if args.fixture not in fixtures.CONNECTIONS:
            raise InputError(f"unknown connection fixture {args.fixture!r}; "
                             f"choose from {', '.join(fixtures.CONNECTIONS)}")
        a, b, fa, fb = fixtures.CONNECTIONS[args.fixture]
        A, B = fixtures.lattice(a), fixtures.lattice(b)
        pa, pb = fixtures.fixture_path(fa), fixtures.fixture_path(fb)
    elif len(args.files) == 4:
        A, B = load_lattice(args.files[0]), load_lattice(args.files[1])
        pa, pb = args.files[2], args.files[3]
    else:
        raise InputError("expected A.lat B.lat alpha.map beta.map (or --fixture)")
    alpha, beta = load_map(pa, A, B), load_map(pb, B, A)
    try:
        return GaloisConnection(alpha, beta)
    except NotMonotone as exc:
        L = A if exc.side == "alpha" else B
        x, y = exc.pair
        raise NotMonotone((L.names[x], L.names[y]), exc.side) from None
    except NotAdjoint as exc:
        a, b = exc.pair
        raise NotAdjoint((A.names[a], B.names[b])) from None


def _is_connection(args) -> bool:
    # a name that is both a lattice and a connection fixture means the lattice here
    if args.fixture:
        return args.fixture in fixtures.CONNECTIONS and args.fixture not in fixtures.LATTICES
    return len(args.files) == 4


# -- commands ----------------------------------------------------------------

def _lattice_summary(L: Lattice) -> dict[str, Any]:
    return {
        "name": L.name,
        "size": L.n,
        "covers": len(L.covers),
        "bottom": L.names[L.bottom],
        "top": L.names[L.top],
    }


def cmd_check_lattice(args) -> int:
    L = _load_lattice(args)
    if args.dot:
        sys.stdout.write(emit_dot(L))
        return OK
    info = _lattice_summary(L)
    text = (f"{L.name}: valid bounded lattice, {L.n} elements, {len(L.covers)} covers, "
            f"bottom {info['bottom']}, top {info['top']}")
    _emit(args, {"valid": True, "lattice": info, "text": format_lattice(L)}, text)
    return OK


def _lattice_props(L: Lattice) -> dict[str, Any]:
    modular = is_modular(L)
    ud, hd = uniform_dimension(L), hollow_dimension(L)
    out: dict[str, Any] = {
        "modular": modular,
        "distributive": is_distributive(L),
        "cyclically_generated": is_cyclically_generated(L),
        "uc": is_uc(L),
        "ucc": is_ucc(L),
        "uniform": is_uniform(L),
        "hollow": is_hollow(L),
        "extending": is_extending(L) if modular else None,
        "lifting": is_lifting(L) if modular else None,
        "amply_supplemented": is_amply_supplemented(L),
        "udim": ud.value,
        "udim_witness": _names(L, ud.witness),
        "hdim": hd.value,
        "hdim_witness": _names(L, hd.witness),
        "closed": _names(L, closed_elements(L)),
        "coclosed": _names(L, coclosed_elements(L)),
        "cyclic": _names(L, cyclic_elements(L)),
    }
    return out


def cmd_props(args) -> int:
    L = _load_lattice(args)
    props = _lattice_props(L)
    if args.dot:
        sys.stdout.write(emit_dot(L, highlight=closed_elements(L)))
        return OK
    lines = [f"{L.name} ({L.n} elements)"]
    for k, v in props.items():
        if isinstance(v, list):
            v = "{" + ", ".join(v) + "}"
        elif isinstance(v, bool):
            v = _mark(v)
        elif v is None:
            v = "n/a"
        lines.append(f"  {k:<22} {v}")
    _emit(args, {"lattice": L.name, "properties": props}, "\n".join(lines))
    return OK


def cmd_check_conn(args) -> int:
    try:
        G = _load_connection(args)
    except (NotMonotone, NotAdjoint) as exc:
        _emit(args, {"valid": False, "reason": str(exc)}, f"not a Galois connection: {exc}")
        return FALSE
    left, right = galois_elements(G)
    payload = {
        "valid": True,
        "A": G.A.name,
        "B": G.B.name,
        "galois_A": _names(G.A, left),
        "galois_B": _names(G.B, right),
    }
    text = (f"Galois connection {G.A.name} -> {G.B.name}\n"
            f"  Galois elements in A: {{{', '.join(payload['galois_A'])}}}\n"
            f"  Galois elements in B: {{{', '.join(payload['galois_B'])}}}")
    _emit(args, payload, text)
    return OK


def cmd_classify(args) -> int:
    G = _load_connection(args)
    r = classify(G)
    js = r.to_json(G)
    wl = js["witnesses"]
    lines = [f"{G.A.name} -> {G.B.name}"]
    for name in FLAG_NAMES:
        ok = js[name]
        w = "" if ok else f"  (witness {wl[name]})"
        lines.append(f"  {name:<22} {_mark(ok)}{w}")
    _emit(args, {"A": G.A.name, "B": G.B.name, "flags": {k: js[k] for k in FLAG_NAMES},
                 "witnesses": wl}, "\n".join(lines))
    return OK if (r.essential and r.retractable and r.uc) else FALSE


def cmd_bijection(args) -> int:
    G = _load_connection(args)
    try:
        res = closed_correspondence(G, args.mode)
    except HypothesisNotMet as exc:
        _emit(args, {"applicable": False, "unmet": exc.failed},
              "hypotheses not met: " + ", ".join(exc.failed))
        return FALSE
    js = res.to_json(G)
    lines = [f"closed correspondence ({args.mode}): {'verified' if res.verified else 'FAILED'}"]
    lines += [f"  {a} -> {b}" for a, b in js["phi"].items()]
    lines += [f"  {k:<26} {_mark(v)}" for k, v in js["checks"].items()]
    _emit(args, {"applicable": True, **js}, "\n".join(lines))
    return OK if res.verified else ALARM


def _report(args, rep) -> int:
    lines = [f"{rep.name}: {rep.status}"] + [f"  {k:<22} {v}" for k, v in rep.clauses.items()]
    _emit(args, {"applicable": True, **rep.to_json()}, "\n".join(lines))
    return OK if rep.passed else ALARM


def _not_applicable(args, exc: HypothesisNotMet) -> int:
    _emit(args, {"applicable": False, "unmet": exc.failed},
          "hypotheses not met: " + ", ".join(exc.failed))
    return FALSE


def cmd_udim(args) -> int:
    if _is_connection(args):
        G = _load_connection(args)
        try:
            return _report(args, verify_udim_theorem(G))
        except HypothesisNotMet as exc:
            return _not_applicable(args, exc)
    L = _load_lattice(args)
    ud, hd = uniform_dimension(L), hollow_dimension(L)
    payload = {"lattice": L.name, "udim": ud.value, "udim_witness": _names(L, ud.witness),
               "hdim": hd.value, "hdim_witness": _names(L, hd.witness)}
    text = (f"udim({L.name}) = {ud.value}  witness {{{', '.join(payload['udim_witness'])}}}\n"
            f"hdim({L.name}) = {hd.value}  witness {{{', '.join(payload['hdim_witness'])}}}")
    _emit(args, payload, text)
    return OK


def cmd_extending(args) -> int:
    if _is_connection(args):
        G = _load_connection(args)
        try:
            return _report(args, verify_extending_transfer(G))
        except HypothesisNotMet as exc:
            return _not_applicable(args, exc)
    L = _load_lattice(args)
    try:
        ext = is_extending(L)
    except NotModular:
        _emit(args, {"lattice": L.name, "extending": None, "reason": "not modular"},
              f"{L.name} is not modular; extending is only defined here for modular lattices")
        return FALSE
    _emit(args, {"lattice": L.name, "extending": ext}, f"{L.name} extending: {_mark(ext)}")
    return OK if ext else FALSE


def cmd_dual(args) -> int:
    if _is_connection(args):
        G = _load_connection(args)
        try:
            return _report(args, verify_dual_correspondence(G))
        except HypothesisNotMet as exc:
            return _not_applicable(args, exc)
    L = _load_lattice(args)
    D = dual(L)
    _emit(args, {"lattice": D.name, "text": format_lattice(D)}, format_lattice(D))
    return OK


def cmd_search(args) -> int:
    if args.suite:
        rep = run_theorem_suite(args.max_size, workers=args.workers,
                                reproducer_dir=args.reproducers)
        payload = rep.to_json()
        lines = [f"theorem suite up to size {rep.max_n}: {rep.lattices} lattices, "
                 f"{rep.connections} connections, {rep.total_failures} failures"]
        for st, cl in payload["clauses"].items():
            for name, s in cl.items():
                lines.append(f"  {st}.{name:<40} tested {s['tested']:>6}  vacuous {s['vacuous']:>6}"
                             f"  failures {s['failures']}")
        _emit(args, payload, "\n".join(lines))
        return ALARM if rep.total_failures else OK
    if not args.query:
        raise InputError("search needs --query or --suite")
    q = PropertyQuery.parse(args.query, args.target)
    w = find_witness(q, args.max_size)
    if w is None:
        _emit(args, {"query": str(q), "target": q.target, "found": False, "max_size": args.max_size},
              "none")
        return OK
    if q.target == "lattice":
        L = w.instance
        payload = {"query": str(q), "target": q.target, "found": True, "lattice": format_lattice(L),
                   "properties": w.certificate}
        text = format_lattice(L)
    else:
        G = w.instance
        payload = {
            "query": str(q), "target": q.target, "found": True,
            "A": format_lattice(G.A), "B": format_lattice(G.B),
            "alpha": {G.A.names[a]: G.B.names[G.al[a]] for a in range(G.A.n)},
            "beta": {G.B.names[b]: G.A.names[G.be[b]] for b in range(G.B.n)},
            "classification": w.certificate,
        }
        text = (format_lattice(G.A) + "\n" + format_lattice(G.B) + "\n"
                + "alpha: " + ", ".join(f"{k}->{v}" for k, v in payload["alpha"].items()) + "\n"
                + "beta: " + ", ".join(f"{k}->{v}" for k, v in payload["beta"].items()))
    _emit(args, payload, text)
    return FALSE


def _group(text: str) -> FinAbGroup:
    try:
        return FinAbGroup.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_abelian(args) -> int:
    M = _group(args.group)
    if args.with_group is None:
        L = subgroup_lattice(M)
        if args.dot:
            sys.stdout.write(emit_dot(L))
            return OK
        _emit(args, {"group": list(M.orders), "subgroups": L.n, "text": format_lattice(L)},
              format_lattice(L))
        return OK
    N = _group(args.with_group)
    H = bimodule(M, N)
    sides = {}
    for key, G in (("rM_lU", H.connection_rm_lu), ("rN_lU", H.connection_rn_lu)):
        js = classify(G).to_json(G)
        sides[key] = {"A_size": G.A.n, "B_size": G.B.n,
                      "flags": {k: js[k] for k in FLAG_NAMES}, "witnesses": js["witnesses"]}
    small = max(M.order, N.order) <= 8
    modules = {
        "hom_order": H.U.order,
        "N_is_M_retractable": H.retractable(),
        "M_is_N_coretractable": H.coretractable(),
        "M_is_N_semi_projective": H.semi_projective() if small else None,
        "N_is_M_semi_injective": H.semi_injective() if small else None,
    }
    if modules["N_is_M_retractable"] != sides["rN_lU"]["flags"]["retractable"]:
        raise TheoremViolation("M-retractability disagrees with the connection flag")
    if modules["M_is_N_coretractable"] != sides["rM_lU"]["flags"]["retractable"]:
        raise TheoremViolation("N-coretractability disagrees with the connection flag")
    lines = [f"M = {M.name}, N = {N.name}, |Hom(M,N)| = {H.U.order}"]
    for k, v in modules.items():
        if k != "hom_order":
            lines.append(f"  {k:<24} {'n/a' if v is None else _mark(v)}")
    for key, s in sides.items():
        flags = " ".join(f"{k}{_mark(v)}" for k, v in s["flags"].items())
        lines.append(f"  {key} ({s['A_size']} -> {s['B_size']}): {flags}")
    _emit(args, {"M": list(M.orders), "N": list(N.orders), "modules": modules,
                 "connections": sides}, "\n".join(lines))
    return OK


# -- parser ------------------------------------------------------------------

def _add_inputs(p: argparse.ArgumentParser, what: str) -> None:
    p.add_argument("files", nargs="*", help=what)
    p.add_argument("--fixture", help="use a shipped fixture by name")
    p.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latgal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    lat = "a lattice file"
    conn = "A.lat B.lat alpha.map beta.map"
    either = f"{lat}, or {conn}"

    p = sub.add_parser("check-lattice", help="validate a lattice file")
    _add_inputs(p, lat)
    p.add_argument("--dot", action="store_true", help="print the Hasse diagram as DOT")
    p.set_defaults(func=cmd_check_lattice)

    p = sub.add_parser("props", help="lattice properties, closed elements and dimensions")
    _add_inputs(p, lat)
    p.add_argument("--dot", action="store_true", help="DOT with closed elements highlighted")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("check-conn", help="verify that two maps form a Galois connection")
    _add_inputs(p, conn)
    p.set_defaults(func=cmd_check_conn)

    p = sub.add_parser("classify", help="classify a Galois connection")
    _add_inputs(p, conn)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bijection", help="closed-element correspondence")
    _add_inputs(p, conn)
    p.add_argument("--mode", choices=MODES, default="modular")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("udim", help="uniform/hollow dimension, or the dimension comparison")
    _add_inputs(p, either)
    p.set_defaults(func=cmd_udim)

    p = sub.add_parser("extending", help="extending property, or its transfer along a connection")
    _add_inputs(p, either)
    p.set_defaults(func=cmd_extending)

    p = sub.add_parser("dual", help="dual lattice, or the coclosed correspondence")
    _add_inputs(p, either)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("search", help="witness search or the full statement sweep")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--query", help="boolean property expression")
    p.add_argument("--target", choices=("connection", "lattice"))
    p.add_argument("--suite", action="store_true", help="run the statement sweep")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--reproducers", help="directory for failure reproducers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("abelian", help="subgroup lattices and Hom connections of finite abelian groups")
    p.add_argument("--group", required=True, help="cyclic orders, e.g. 2,4")
    p.add_argument("--with", dest="with_group", help="second group N for Hom(M, N)")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_abelian)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"latgal: internal alarm: {exc}", file=sys.stderr)
        return ALARM
    except (InputError, LatgalError, OSError, KeyError, ValueError) as exc:
        print(f"latgal: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
