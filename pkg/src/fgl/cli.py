"""``fgl`` command-line front end.

Exit codes: 0 success, 1 mathematical negative (axiom failure, Landweber
failure, no isomorphism), 2 unsupported ring class, 3 parse or validation
error.  JSON output always uses sorted keys so runs are byte-for-byte
reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import chromatic as chrom
from . import elliptic as ell
from . import laws
from .errors import DescriptorError, FGLError
from .landweber import DEFAULT_N_MAX, FailsAtP, landweber_check
from .rings import (
    FiniteField,
    Integers,
    IntegersMod,
    PrimeField,
    Rationals,
    build_ring,
    descriptor_from_json,
    parse_element,
    ring_label,
)
from .series import DEFAULT_BOUND, series_to_json

EXIT_OK = 0
EXIT_NEGATIVE = 1


class UsageError(DescriptorError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input resolution


def _load_json_arg(text):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise DescriptorError(f"{text}: invalid JSON ({exc})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise DescriptorError(f"{text!r} is neither a file nor a JSON literal") from None


def parse_ring_arg(text):
    """integers | rationals | mod:M | fp:P | gf:P:D | JSON literal | JSON file."""
    t = text.strip()
    if t in ("integers", "ZZ"):
        return build_ring(Integers())
    if t in ("rationals", "QQ"):
        return build_ring(Rationals())
    head, _, rest = t.partition(":")
    try:
        if head == "mod":
            return build_ring(IntegersMod(int(rest)))
        if head == "fp":
            return build_ring(PrimeField(int(rest)))
        if head == "gf":
            from .numtheory import first_irreducible

            p, d = (int(v) for v in rest.split(":"))
            return build_ring(FiniteField(p, d, first_irreducible(p, d)))
    except ValueError as exc:
        raise DescriptorError(f"bad ring shorthand {text!r}: {exc}") from None
    return build_ring(descriptor_from_json(_load_json_arg(t)))


def resolve_law(text, args, bound=None):
    """A FormalGroupLaw from ``builtin:name[:p[:n]]`` or a law file."""
    N = bound if bound is not None else args.bound
    if text.startswith("builtin:"):
        parts = text.split(":")[1:]
        name = parts[0] if parts else ""
        nums = []
        for piece in parts[1:]:
            try:
                nums.append(int(piece))
            except ValueError:
                raise DescriptorError(f"bad number {piece!r} in {text!r}") from None
        if name == "additive":
            spec = laws.Additive()
        elif name == "multiplicative":
            spec = laws.Multiplicative()
        elif name == "honda":
            if len(nums) != 2:
                raise DescriptorError("builtin:honda needs p and n, e.g. builtin:honda:3:2")
            spec = laws.Honda(nums[0], nums[1])
        elif name == "ptypical":
            if len(nums) < 1:
                raise DescriptorError("builtin:ptypical needs p, e.g. builtin:ptypical:3 --v u1,1")
            if not args.v:
                raise DescriptorError("builtin:ptypical reads its v-values from --v")
            spec = laws.PTypicalAraki(nums[0], tuple(v.strip() for v in args.v.split(",")))
        else:
            raise DescriptorError(f"unknown builtin law {name!r}")
        if args.ring:
            ring = parse_ring_arg(args.ring)
        elif isinstance(spec, laws.Honda):
            ring = build_ring(PrimeField(spec.p))
        else:
            ring = build_ring(Integers())
        if N is None:
            N = spec.p**spec.n + spec.p - 1 if isinstance(spec, laws.Honda) else DEFAULT_BOUND
        return laws.build_law(spec, ring, N)
    data = _load_json_arg(text)
    if not isinstance(data, dict) or "spec" not in data:
        raise DescriptorError("law file needs 'ring', 'bound' and 'spec'")
    if args.ring:
        ring = parse_ring_arg(args.ring)
    elif "ring" in data:
        ring = build_ring(descriptor_from_json(data["ring"]))
    else:
        raise DescriptorError("law file needs a 'ring'")
    if N is None:
        N = int(data.get("bound", DEFAULT_BOUND))
    spec = laws.spec_from_json(data["spec"], ring, N)
    return laws.build_law(spec, ring, N)


def resolve_curve(text, args):
    data = _load_json_arg(text)
    if not isinstance(data, dict):
        raise DescriptorError("curve file must hold a JSON object")
    ring = parse_ring_arg(args.ring) if args.ring else None
    return ell.curve_from_json(data, ring)


def _law_or_curve(args, bound=None):
    if args.law and args.curve:
        raise UsageError("give either --law or --curve, not both")
    N = bound if bound is not None else args.bound
    if args.curve:
        C = resolve_curve(args.curve, args)
        return ell.formal_group(C, N if N is not None else DEFAULT_BOUND)
    if not args.law:
        raise UsageError("--law (or --curve) is required")
    return resolve_law(args.law[0], args, bound)


def _primes(args):
    text = args.primes or (str(args.prime) if args.prime is not None else None)
    if not text:
        raise UsageError("--prime or --primes is required")
    try:
        primes = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None
    from .numtheory import is_prime

    for p in primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    return primes


# ---------------------------------------------------------------------------
# commands; each returns (payload dict, text lines, exit code)


def cmd_law(args):
    action = args.action
    if action == "check":
        try:
            law = _law_or_curve(args)
        except laws.AxiomViolation as exc:
            payload = {
                "ok": False,
                "axiom": exc.axiom,
                "exponent": list(exc.exponent) if exc.exponent is not None else None,
                "coefficient": exc.coefficient,
                "message": str(exc),
            }
            return payload, [f"not a formal group law: {exc}"], EXIT_NEGATIVE
        payload = {"ok": True, "ring": ring_label(law.ring), "bound": law.bound, "series": series_to_json(law.F)}
        return payload, [f"valid formal group law over {ring_label(law.ring)} to degree {law.bound}", f"F = {law.F}"], EXIT_OK
    law = _law_or_curve(args)
    if action == "nseries":
        if args.n is None:
            raise UsageError("law nseries needs --n")
        s = laws.n_series(law, args.n)
        label = f"[{args.n}](x)"
    elif action == "pseries":
        p = _primes(args)[0]
        s = laws.p_series(law, p)
        label = f"[{p}](x)"
    else:
        s = laws.formal_inverse(law)
        label = "iota(x)"
    payload = {"ring": ring_label(law.ring), "bound": s.bound, "series": series_to_json(s)}
    return payload, [f"{label} = {s}"], EXIT_OK


def cmd_height(args):
    law = _law_or_curve(args)
    p = _primes(args)[0]
    rep = chrom.height(law, p)
    lines = [f"p = {p}, bound {rep.bound}: {rep.describe()}"]
    lines += [f"  u_{e.n} = {e.value}  (twist {e.value.twist})" for e in rep.u_seq]
    return rep.to_json(), lines, EXIT_OK


def cmd_useq(args):
    law = _law_or_curve(args)
    p = _primes(args)[0]
    rep = chrom.u_sequence(law, p, args.n_max if args.n_max is not None else DEFAULT_N_MAX)
    lines = [f"p = {p}, bound {rep.bound}: {rep.describe()}"]
    lines += [f"  u_{e.n} = {e.value}  in {e.ring}  (twist {e.value.twist})" for e in rep.u_seq]
    return rep.to_json(), lines, EXIT_OK


def cmd_landweber(args):
    law = _law_or_curve(args)
    primes = _primes(args)
    rep = landweber_check(law, primes, args.n_max if args.n_max is not None else DEFAULT_N_MAX)
    lines = [f"Landweber check over {ring_label(law.ring)} (bound {law.bound})"]
    for r in rep.per_prime:
        lines.append(f"p = {r.prime}: {r.outcome.kind}")
        for s in r.steps:
            status = "unit" if s.unit else ("regular" if s.regular else ("zero divisor" if s.regular is False else "undecided"))
            lines.append(f"  u_{s.n} = {s.u}  in {s.ring}: {status}")
        if isinstance(r.outcome, FailsAtP):
            lines.append(f"  witness: u_{r.outcome.n} * ({r.outcome.witness}) = 0")
    code = EXIT_NEGATIVE if rep.failed else EXIT_OK
    return rep.to_json(), lines, code


def cmd_iso(args):
    if not args.law or len(args.law) != 2:
        raise UsageError("iso needs exactly two --law arguments")
    F1 = resolve_law(args.law[0], args)
    F2 = resolve_law(args.law[1], args)
    if F1.ring != F2.ring:
        raise DescriptorError(f"laws live over {ring_label(F1.ring)} and {ring_label(F2.ring)}")
    res = chrom.find_isomorphism(F1, F2, args.max_ext_degree)
    if isinstance(res, chrom.SeriesHomomorphism):
        payload = {
            "result": "isomorphism",
            "field": ring_label(res.ring),
            "bound": res.bound,
            "differential": str(res.differential()),
            "phi": series_to_json(res.phi),
        }
        return payload, [f"isomorphism over {ring_label(res.ring)}: phi = {res.phi}"], EXIT_OK
    if isinstance(res, chrom.NeedsExtension):
        payload = {"result": "needs_extension", "max_ext_degree": res.max_degree}
        return payload, [f"no isomorphism over extensions of degree <= {res.max_degree}"], EXIT_NEGATIVE
    payload = {"result": "none_to_bound", "bound": res.bound, "reason": res.reason}
    return payload, [f"no isomorphism to degree {res.bound}: {res.reason}"], EXIT_NEGATIVE


def cmd_elliptic(args):
    if not args.curve:
        raise UsageError("--curve is required")
    C = resolve_curve(args.curve, args)
    action = args.action
    if action == "invariants":
        inv = ell.invariants(C)
        payload = inv.to_json()
        payload["ring"] = ring_label(C.ring)
        try:
            payload["smooth"] = ell.is_smooth(C)
            payload["generalized_elliptic"] = ell.is_generalized_elliptic(C)
        except FGLError as exc:
            payload["smooth"] = None
            payload["generalized_elliptic"] = None
            payload["note"] = str(exc)
        lines = [str(C)] + [f"  {k} = {payload[k]}" for k in ("b2", "b4", "b6", "b8", "c4", "c6", "delta")]
        lines.append(f"  j = [{payload['j'][0]} : {payload['j'][1]}]")
        lines.append(f"  smooth: {payload['smooth']}, generalized elliptic: {payload['generalized_elliptic']}")
        return payload, lines, EXIT_OK
    if action == "formal-group":
        law = ell.formal_group(C, args.bound if args.bound is not None else DEFAULT_BOUND)
        payload = {"ring": ring_label(C.ring), "bound": law.bound, "series": series_to_json(law.F)}
        return payload, [f"F = {law.F}"], EXIT_OK
    if action == "supersingular":
        results = []
        lines = []
        for p in _primes(args):
            verdict = ell.supersingular(C, p)
            results.append({"prime": p, "verdict": verdict})
            lines.append(f"p = {p}: {verdict}")
        return {"curve": ell.curve_to_json(C), "results": results}, lines, EXIT_OK
    # transform
    R = C.ring
    u, r, s, t = (parse_element(R, v) for v in (args.u, args.r, args.s, args.t))
    C2 = ell.transform(C, u, r, s, t)
    payload = ell.curve_to_json(C2)
    payload["invariants"] = ell.invariants(C2).to_json()
    return payload, [str(C2)], EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--law", action="append", help="builtin:NAME[:P[:N]] or a law JSON file")
    common.add_argument("--curve", help="curve JSON file or literal")
    common.add_argument("--ring", help="integers | rationals | mod:M | fp:P | gf:P:D | JSON")
    common.add_argument("--prime", type=int)
    common.add_argument("--primes", help="comma-separated primes")
    common.add_argument("--bound", type=int, help="truncation bound N")
    common.add_argument("--n-max", type=int, dest="n_max")
    common.add_argument("--max-ext-degree", type=int, default=2, dest="max_ext_degree")
    common.add_argument("--v", help="comma-separated v-values for builtin:ptypical")
    common.add_argument("--n", type=int, help="multiplier for law nseries")
    common.add_argument("--u", default="1")
    common.add_argument("--r", default="0")
    common.add_argument("--s", default="0")
    common.add_argument("--t", default="0")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of standard output")

    parser = _Parser(prog="fgl", description="Exact computations with one-dimensional formal group laws.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p_law = sub.add_parser("law", parents=[common], help="build and query a law")
    p_law.add_argument("action", choices=("check", "nseries", "pseries", "inverse"))
    sub.add_parser("height", parents=[common], help="height over an F_p-algebra")
    sub.add_parser("useq", parents=[common], help="the u_n sequence")
    sub.add_parser("landweber", parents=[common], help="local Landweber exactness check")
    sub.add_parser("iso", parents=[common], help="search an isomorphism between two laws")
    p_ell = sub.add_parser("elliptic", parents=[common], help="Weierstrass curve operations")
    p_ell.add_argument("action", choices=("invariants", "formal-group", "supersingular", "transform"))
    return parser


COMMANDS = {
    "law": cmd_law,
    "height": cmd_height,
    "useq": cmd_useq,
    "landweber": cmd_landweber,
    "iso": cmd_iso,
    "elliptic": cmd_elliptic,
}


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    json_mode = "--format=json" in argv or any(
        a == "--format" and i + 1 < len(argv) and argv[i + 1] == "json" for i, a in enumerate(argv)
    )
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.bound is not None and args.bound < 1:
            raise UsageError("--bound must be positive")
        payload, lines, code = COMMANDS[args.command](args)
    except FGLError as exc:
        code = exc.exit_code
        if json_mode:
            err = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
            sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        else:
            sys.stderr.write(f"error: {exc}\n")
        return code
    if args.format == "json":
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
