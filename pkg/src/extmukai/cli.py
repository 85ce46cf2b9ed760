"""Command-line front end.

Every verb reads rationals as "p/q" strings and emits a canonical JSON
report on stdout (sorted keys, fixed separators), or a plain-text variant
with --format text.  Exit codes: 0 all checks passed, 1 verification
failure, 2 malformed input.

Vector syntax: a comma-separated list of rationals ("1,0,-1/2,...") in
(alpha, H^2 basis..., beta) coordinates, or an expression in the named
generators alpha, beta, delta, e1, e2, ... (H^2 basis), combined with
+, - and rational multiples, e.g. "alpha+5/4*beta", "delta/3", "2*e1-e2".
H^2-only contexts (--lam, b-fields) use the same syntax without alpha/beta
and accept "0" for the zero class.

Isometry syntax for --iso:
    bfield:<h2 expr>       reflection:<vector expr>
    transvection:<vector expr>|<vector expr>
    shift                  catalog:<key>
"""

import argparse
import json
import sys
from fractions import Fraction

from .catalog import CATALOG_KEYS, CatalogError, action
from .isometry import (
    IsometryError,
    disc_action,
    eichler_transport,
    eichler_transvection,
    generate_bounded,
    lattice_witness,
    minus_identity,
    preserves_lattice,
    reflection,
    spinor_norm,
)
from .lattice import LatticeError, NotFound
from .linalg import Mat, Q
from .moduli import AlgebraicMukaiLattice, ModuliError, disc_lemma_check, fineness, ns_of_moduli, partner_invariants
from .serialize import (
    FormatError,
    canonical_json,
    isometry_to_json,
    lattice_from_json,
    matrix_to_json,
    parse_rat,
    rat_str,
    vector_to_json,
)
from .spaces import (
    ExtMukaiSpace,
    SpaceError,
    b_field,
    ext_vector_line_bundle,
    ext_vector_point,
    k3n_lattices,
    k3n_type,
    kumn_type,
)
from .verbitsky import SymError, euler_char_line_bundle, integrate
from .verification import DEFAULT_SEED, SUITES, run_suite


class InputError(ValueError):
    pass


def _make_space(args):
    family = getattr(args, "family", "K3n")
    n = getattr(args, "n", 2)
    if family == "K3n":
        return ExtMukaiSpace(k3n_type(n))
    if family == "Kumn":
        return ExtMukaiSpace(kumn_type(n))
    raise InputError("unknown family %r" % (family,))


def _named_vectors(space):
    names = {"alpha": space.alpha, "beta": space.beta}
    for i in range(space.b2):
        names["e%d" % (i + 1)] = space.basis_vector(1 + i)
    if space.dtype.family == "K3n":
        names["delta"] = space.basis_vector(space.dim - 2)
    return names


def parse_vector(space, text, h2_only=False):
    """Parse a vector expression into ambient or H^2 coordinates."""
    text = text.strip()
    if not text:
        raise InputError("empty vector")
    if "," in text:
        coords = tuple(parse_rat(t) for t in text.split(","))
        want = space.b2 if h2_only else space.dim
        if len(coords) != want:
            raise InputError("expected %d coordinates, got %d" % (want, len(coords)))
        return coords
    if text == "0":
        return tuple(Q(0) for _ in range(space.b2 if h2_only else space.dim))
    names = _named_vectors(space)
    total = [Q(0)] * space.dim
    term = ""
    terms = []
    sign = 1
    # split into signed terms
    for ch in text.replace(" ", ""):
        if ch in "+-" and term:
            terms.append((sign, term))
            sign = 1 if ch == "+" else -1
            term = ""
        elif ch in "+-" and not term:
            sign = sign if ch == "+" else -sign
        else:
            term += ch
    if term:
        terms.append((sign, term))
    for sgn, t in terms:
        coeff = Q(1)
        name = t
        if "*" in t:
            left, right = t.split("*", 1)
            try:
                coeff = parse_rat(left)
                name = right
            except FormatError:
                coeff = parse_rat(right)
                name = left
        if "/" in name:
            base, den = name.split("/", 1)
            if base in names:
                name = base
                coeff = coeff / parse_rat(den)
        if name not in names:
            raise InputError("unknown vector name %r" % (name,))
        vec = names[name]
        total = [a + sgn * coeff * b for a, b in zip(total, vec)]
    if h2_only:
        if total[0] != 0 or total[-1] != 0:
            raise InputError("expected a class with no alpha or beta part")
        return tuple(total[1:-1])
    return tuple(total)


def parse_isometry(space, spec):
    if spec == "shift":
        return minus_identity(space)
    if ":" not in spec:
        raise InputError("bad isometry spec %r" % (spec,))
    kind, rest = spec.split(":", 1)
    if kind == "bfield":
        return b_field(space, parse_vector(space, rest, h2_only=True))
    if kind == "reflection":
        return reflection(space, parse_vector(space, rest))
    if kind == "transvection":
        if "|" not in rest:
            raise InputError("transvection needs e|a")
        e_s, a_s = rest.split("|", 1)
        return eichler_transvection(
            space, parse_vector(space, e_s), parse_vector(space, a_s)
        )
    if kind == "catalog":
        return action(space, rest).iso
    if kind == "file":
        from .serialize import isometry_from_json

        with open(rest) as fh:
            return isometry_from_json(json.load(fh), space=space)
    raise InputError("unknown isometry kind %r" % (kind,))


def _tracked_lattice(space, name):
    lats = k3n_lattices(space)
    table = {
        "lambda": lats.lam,
        "lambda-g": lats.lam_g,
        "lambda-s": lats.lam_s,
        "lambda-lb": lats.lam_lb,
        "integral": space.integral_lattice(),
    }
    if name == "gamma-k":
        from .lattice import QuadLattice

        k = 3
        rows = [
            tuple(k * c for c in lats.lam_s.basis_in_ambient.row(i))
            for i in range(lats.lam_s.rank)
        ] + [lats.delta_tilde]
        return QuadLattice.from_basis(rows, space.gram, name="3 Lambda_S + Z delta~")
    if name not in table:
        raise InputError("unknown lattice %r" % (name,))
    return table[name]


def emit(args, payload, checks=()):
    report = {
        "command": " ".join(sys.argv[1:]),
        "checks": list(checks),
        "result": payload,
    }
    ok = all(c.get("pass") for c in checks) if checks else True
    if args.format == "text":
        for c in checks:
            status = "PASS" if c["pass"] else "FAIL"
            line = "[%s] %s" % (status, c["name"])
            if c.get("detail") and not c["pass"]:
                line += " -- %s" % c["detail"]
            print(line)
        if payload:
            print(json.dumps(payload, sort_keys=True, indent=2, default=str))
    else:
        sys.stdout.write(canonical_json(report))
    return 0 if ok else 1


def cmd_vector(args):
    space = _make_space(args)
    if args.point:
        v = ext_vector_point(space)
    else:
        lam = parse_vector(space, args.lam, h2_only=True)
        v = ext_vector_line_bundle(space, lam)
    payload = {
        "coords": vector_to_json(v.coords),
        "square": rat_str(v.square()),
        "orbit": v.orbit_tag,
    }
    return emit(args, payload)


def cmd_act(args):
    space = _make_space(args)
    g = None
    if args.surface_iso:
        from .catalog import k3_extended_space

        g = parse_isometry(k3_extended_space(), args.surface_iso)
    named = action(
        space,
        args.key,
        lam=parse_vector(space, args.lam, h2_only=True) if args.lam else None,
        g=g,
        genus=args.genus,
    )
    payload = {
        "key": named.key,
        "epsilon": named.epsilon,
        "provenance": named.provenance,
        "matrix": matrix_to_json(named.iso.matrix),
    }
    if args.vector:
        v = parse_vector(named.space, args.vector)
        payload["image"] = vector_to_json(named.iso(v))
    return emit(args, payload)


def cmd_lattice_check(args):
    space = _make_space(args)
    g = parse_isometry(space, args.iso)
    lat = _tracked_lattice(space, args.lattice)
    ok = preserves_lattice(g, lat)
    checks = [{"name": "preserves %s" % args.lattice, "pass": ok, "detail": ""}]
    payload = {"preserves": ok}
    if not ok:
        w = lattice_witness(g, lat)
        payload["witness"] = vector_to_json(w) if w else None
        checks[0]["detail"] = "witness %s" % (payload["witness"],)
    return emit(args, payload, checks)


def cmd_isometry_info(args):
    space = _make_space(args)
    g = parse_isometry(space, args.iso)
    lats = k3n_lattices(space)
    payload = {
        "det": rat_str(g.det),
        "spinor_norm": spinor_norm(g),
        "preserves_lambda": preserves_lattice(g, lats.lam),
        "preserves_lambda_g": preserves_lattice(g, lats.lam_g),
    }
    if payload["preserves_lambda"]:
        label, witness = disc_action(g, lats.lam)
        payload["disc_action"] = label
        if witness is not None:
            payload["disc_witness"] = vector_to_json(witness)
    return emit(args, payload)


def cmd_transport(args):
    space = _make_space(args)
    lats = k3n_lattices(space)
    lat = lats.lam
    v = lat.coords_of_ambient(parse_vector(space, args.v))
    w = lat.coords_of_ambient(parse_vector(space, args.w))
    if v is None or w is None:
        raise InputError("vectors must lie in the lattice")
    res = eichler_transport(lat, v, w)
    if isinstance(res, NotFound):
        payload = {"found": False, "reason": res.reason}
        checks = [{"name": "transport", "pass": False, "detail": res.reason}]
    else:
        payload = {
            "found": True,
            "word_length": len(res),
            "word": [
                {"e": vector_to_json(e), "a": vector_to_json(a)} for e, a in res.pairs
            ],
        }
        checks = [{"name": "transport verified", "pass": res.apply(v) == w, "detail": ""}]
    return emit(args, payload, checks)


def cmd_group(args):
    space = _make_space(args)
    gens = [parse_isometry(space, s) for s in args.gens.split(";") if s]
    got = generate_bounded(gens, args.depth, cap=args.cap)
    lats = k3n_lattices(space)
    n_preserving = sum(1 for h in got if preserves_lattice(h, lats.lam))
    payload = {
        "size": len(got),
        "all_preserve_lambda": n_preserving == len(got),
    }
    return emit(args, payload)


def cmd_todd(args):
    """Linearisation profile of the (sqrt-)Todd class: the integral and,
    for each i, the pairing with omega^{2n-2i} divided by b(w,w)^{n-i}
    (a single rational, independent of omega)."""
    from .verbitsky import pair_with_sh, sqrt_todd_argument, todd_argument

    space = _make_space(args)
    n = space.dtype.n
    # evaluate on a rank-one class of square 2 and divide out the powers
    from .spaces import custom_type

    sp = ExtMukaiSpace(custom_type(n, space.dtype.c_x, space.dtype.r_x, Mat([[2]])))
    sp.dtype.family = space.dtype.family
    arg = sqrt_todd_argument(sp) if args.sqrt else todd_argument(sp)
    unit = (Q(1),)
    profile = []
    for i in range(n + 1):
        val = pair_with_sh(sp, [unit] * (2 * n - 2 * i), arg)
        profile.append(rat_str(val / Q(2) ** (n - i)))
    payload = {
        "class": "sqrt-todd" if args.sqrt else "todd",
        "integral": profile[-1],
        "pairing_profile": profile,
        "note": "entry i is the pairing with omega^(2n-2i) per b(omega,omega)^(n-i)",
    }
    return emit(args, payload)


def cmd_chi(args):
    space = _make_space(args)
    if args.square is not None:
        lam_gram = Mat([[parse_rat(args.square)]])
        from .spaces import custom_type

        sp = ExtMukaiSpace(custom_type(space.dtype.n, space.dtype.c_x, space.dtype.r_x, lam_gram))
        sp.dtype.family = space.dtype.family
        val = euler_char_line_bundle(sp, (Q(1),))
    else:
        lam = parse_vector(space, args.lam, h2_only=True)
        val = euler_char_line_bundle(space, lam)
    return emit(args, {"chi": rat_str(val)})


def cmd_integrate(args):
    space = _make_space(args)
    omegas = [parse_vector(space, s, h2_only=True) for s in args.omegas.split(";") if s]
    val = integrate(space, omegas)
    return emit(args, {"integral": rat_str(val)})


def cmd_moduli(args):
    if args.input == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.input) as fh:
            data = json.load(fh)
    ns = lattice_from_json(data["ns"])
    lat = AlgebraicMukaiLattice(ns.gram)
    v = lat.vector(data["v"][0], data["v"][1:-1], data["v"][-1])
    fine, order = fineness(lat, v)
    ns_m = ns_of_moduli(lat, v)
    payload = {
        "square": rat_str(lat.square(v)),
        "dimension": int(lat.square(v)) + 2,
        "fine": fine,
        "obstruction_order": int(order),
        "ns_moduli_gram": matrix_to_json(ns_m.gram),
        "invariants": {
            k: (rat_str(val) if isinstance(val, Fraction) else
                [str(x) for x in val] if isinstance(val, tuple) else val)
            for k, val in partner_invariants(lat, v).items()
        },
    }
    checks = []
    if lat.square(v) > 0:
        rep = disc_lemma_check(lat, v)
        payload["disc_lemma"] = {
            k: (rat_str(val) if isinstance(val, Fraction) else val)
            for k, val in rep.items()
        }
        checks.append({"name": "discriminant identity", "pass": rep["all"], "detail": ""})
    return emit(args, payload, checks)


def cmd_catalog(args):
    if args.action == "list":
        return emit(args, {"keys": list(CATALOG_KEYS)})
    space = _make_space(args)
    named = action(
        space,
        args.key,
        lam=parse_vector(space, args.lam, h2_only=True) if args.lam else None,
        genus=args.genus,
    )
    payload = isometry_to_json(named.iso, space_name=str(named.space))
    payload["key"] = named.key
    payload["epsilon"] = named.epsilon
    payload["provenance"] = named.provenance
    return emit(args, payload)


def cmd_verify(args):
    checks = run_suite(args.suite, seed=args.seed, n=args.n, h2_rank=args.h2_rank)
    return emit(args, {"suite": args.suite, "n_checks": len(checks)}, checks)


def build_parser():
    p = argparse.ArgumentParser(
        prog="extmukai",
        description="Exact lattice calculus for extended Mukai lattices of "
        "hyper-Kaehler manifolds.",
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", choices=("K3n", "Kumn"), default="K3n")
            sp.add_argument("--n", type=int, default=2)

    sp = sub.add_parser("vector", help="extended Mukai vector of a line bundle or point")
    common(sp)
    sp.add_argument("--lam", "--lambda", dest="lam", default="0")
    sp.add_argument("--point", action="store_true")
    sp.set_defaults(func=cmd_vector)

    sp = sub.add_parser("act", help="apply a catalog action")
    common(sp)
    sp.add_argument("--key", required=True, choices=CATALOG_KEYS)
    sp.add_argument("--lam", "--lambda", dest="lam", default="")
    sp.add_argument("--genus", type=int, default=None)
    sp.add_argument("--surface-iso", default="",
                    help="isometry spec on the rank-24 K3 space (dn_transfer)")
    sp.add_argument("--vector", default="")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("lattice-check", help="does an isometry preserve a lattice?")
    common(sp)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--iso", required=True)
    sp.set_defaults(func=cmd_lattice_check)

    sp = sub.add_parser("isometry-info", help="determinant, spinor norm, disc action")
    common(sp)
    sp.add_argument("--iso", required=True)
    sp.set_defaults(func=cmd_isometry_info)

    sp = sub.add_parser("transport", help="Eichler transport between lattice vectors")
    common(sp)
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", required=True)
    sp.set_defaults(func=cmd_transport)

    sp = sub.add_parser("group", help="bounded subgroup generation")
    common(sp)
    sp.add_argument("--gens", required=True, help="';'-separated isometry specs")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--cap", type=int, default=20000)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("todd", help="Todd or sqrt-Todd linearisation")
    common(sp)
    sp.add_argument("--sqrt", action="store_true")
    sp.set_defaults(func=cmd_todd)

    sp = sub.add_parser("chi", help="Euler characteristic of a line bundle class")
    common(sp)
    sp.add_argument("--lam", "--lambda", dest="lam", default="0")
    sp.add_argument("--square", default=None, help="use a class of this square instead")
    sp.set_defaults(func=cmd_chi)

    sp = sub.add_parser("integrate", help="integral of a product of 2n classes")
    common(sp)
    sp.add_argument("--omegas", required=True, help="';'-separated H^2 exprs")
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("moduli", help="moduli-space lattice report from JSON input")
    sp.add_argument("--input", default="-", help="path or - for stdin")
    sp.set_defaults(func=cmd_moduli)

    sp = sub.add_parser("catalog", help="list or get catalog actions")
    sp.add_argument("action", choices=("list", "get"))
    sp.add_argument("key", nargs="?", default="")
    common(sp)
    sp.add_argument("--lam", "--lambda", dest="lam", default="")
    sp.add_argument("--genus", type=int, default=None)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--n", type=int, default=None,
                    help="narrow the linearisation suite to one n")
    sp.add_argument("--h2-rank", type=int, default=None,
                    help="narrow the linearisation suite to the rank-3 custom H^2")
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        InputError,
        FormatError,
        LatticeError,
        IsometryError,
        SpaceError,
        SymError,
        CatalogError,
        ModuliError,
        KeyError,
        ValueError,
        OSError,
    ) as exc:
        sys.stdout.write(
            canonical_json({"error": {"type": type(exc).__name__, "message": str(exc)}})
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
