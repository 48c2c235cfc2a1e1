"""Command-line entry point: ``grdh count|classify|mac|sweep``.

Exit codes: 0 success, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

from . import authcode, congruence, universality
from .errors import DomainError, EnumerationCapExceeded
from .families import FamilyParams, Flavor
from .ntheory import divisors, euler_phi
from .report import Report

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3


class VerificationFailed(Exception):
    def __init__(self, report: Report, detail: str):
        super().__init__(detail)
        self.report = report


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def key_pair(text: str) -> authcode.AuthKey:
    if text.count(":") != 1:
        raise argparse.ArgumentTypeError(f"key must look like x1,x2:y1,y2, got {text!r}")
    x, y = text.split(":")
    return authcode.AuthKey(int_list(x), int_list(y))


# count -------------------------------------------------------------------

def cmd_count(args) -> Report:
    n, a, b = args.n, args.a, args.b
    params = {"n": n, "a": list(a), "b": b, "unrestricted": args.unrestricted}
    rep = Report("count", params)
    if args.unrestricted:
        count = congruence.count_unrestricted(n, a, b)
        rec = {"count": count, "formula": "unrestricted"}
        if args.oracle:
            rec["oracle_count"] = len(congruence.enumerate_unrestricted(n, a, b, args.cap))
    else:
        t = args.t or (1,) * len(a)
        params["t"] = list(t)
        inst = congruence.CongruenceInstance(n, a, b, t)
        count = congruence.count_restricted(inst)
        rec = {"count": count, "formula": "restricted", "search_space": inst.search_space()}
        if not inst.is_homogeneous_zero():
            case = congruence.unsolvable_case(inst)
            rec["unsolvable_case"] = case.case_id.value
            rec["witness_prime"] = case.witness_prime
        if args.oracle:
            rec["oracle_count"] = len(congruence.enumerate_solutions(inst, args.cap))
    rep.results.append(rec)
    if args.oracle:
        rep.oracle_checked = True
        if rec["oracle_count"] != count:
            raise VerificationFailed(rep, f"formula {count} != enumeration {rec['oracle_count']}")
    return rep


# classify ----------------------------------------------------------------

def _family(args) -> FamilyParams:
    flavor = Flavor(args.flavor)
    t = args.t or (1,) * args.k
    if len(t) != args.k:
        raise DomainError(f"-t has {len(t)} entries but -k is {args.k}")
    return FamilyParams(args.n, args.k, t, flavor)


def cmd_classify(args) -> Report:
    fam = _family(args)
    rep = Report("classify", {"n": fam.n, "k": fam.k, "t": list(fam.t), "flavor": fam.flavor.value})
    c = universality.classify(fam, verify=args.exhaustive, cap=args.cap)
    rec = {
        "au_status": c.au_status.value,
        "au_epsilon": c.au_epsilon,
        "au_witness": c.au_witness,
        "au_witness_prob": c.au_witness_prob,
        "adu_status": c.adu_status.value,
        "adu_epsilon": c.adu_epsilon,
        "adu_witness": {"a": c.adu_witness[0], "b": c.adu_witness[1]},
        "adu_witness_prob": c.adu_witness_prob,
    }
    if args.exhaustive:
        worst = universality.max_delta_prob(fam, mode="exhaustive", cap=args.cap)
        rec["exhaustive_max_delta"] = {"prob": worst.prob, "a": worst.a, "b": worst.b}
        rep.oracle_checked = True
    rep.results.append(rec)
    return rep


# mac ---------------------------------------------------------------------

def _scheme(args) -> authcode.SchemeParams:
    return authcode.SchemeParams(args.n, args.k)


def _load_key(args) -> authcode.AuthKey:
    if args.key is not None:
        return args.key
    if args.key_file is not None:
        data = json.loads(Path(args.key_file).read_text())
        return authcode.AuthKey(tuple(data["x"]), tuple(data["y"]))
    raise DomainError("a key is required (--key or --key-file)")


def cmd_mac(args) -> Report:
    sp = _scheme(args)
    rep = Report(f"mac {args.action}", {"n": sp.n, "k": sp.k})
    if args.action == "keygen":
        key = authcode.sample_key(sp, random.Random(args.seed))
        rep.params["seed"] = args.seed
        rec = {"x": key.x, "y": key.y, "key": ",".join(map(str, key.x)) + ":" + ",".join(map(str, key.y))}
        if args.output:
            Path(args.output).write_text(json.dumps({"n": sp.n, "k": sp.k, "x": key.x, "y": key.y}) + "\n")
            rec["written_to"] = args.output
        rep.results.append(rec)
    elif args.action == "encrypt":
        key = _load_key(args)
        ct = authcode.encrypt(sp, key, args.m)
        rep.params["m"] = list(args.m)
        rep.results.append({"c": ct.c, "tag": ct.tag})
    elif args.action == "decrypt":
        key = _load_key(args)
        ct = authcode.Ciphertext(args.c, args.tag)
        rep.params.update(c=list(ct.c), tag=ct.tag)
        out = authcode.decrypt(sp, key, ct)
        if out is authcode.REJECT:
            rep.results.append({"status": "REJECT"})
        else:
            rep.results.append({"status": "OK", "m": out})
    else:
        rep.results.append(analyze_scheme(sp, args.cap))
        rep.oracle_checked = True
    return rep


def analyze_scheme(sp: authcode.SchemeParams, cap=None) -> dict:
    """Exhaustive secrecy, key-hiding and substitution figures for one scheme."""
    cts = [ct for ct in authcode.all_ciphertexts(sp) if authcode.is_reachable(sp, ct, cap)]
    msgs = authcode.all_messages(sp)
    secrecy = max(
        authcode.secrecy_posterior(sp, m, ct, cap) for m in msgs if any(m) for ct in cts
    )
    at_zero = max(authcode.secrecy_posterior(sp, msgs[0], ct, cap) for ct in cts)
    macs = sorted({k.y for k in authcode.all_keys(sp, cap)})
    hiding = {authcode.key_hiding_posterior(sp, y, ct, cap) for y in macs for ct in cts}
    sub = authcode.best_substitution_success(sp, cap)
    return {
        "reachable_ciphertexts": len(cts),
        "unreachable_ciphertexts": len(authcode.all_ciphertexts(sp)) - len(cts),
        "secrecy_max_nonzero": secrecy,
        "secrecy_bound": sp.secrecy_bound(),
        "secrecy_max_at_zero_message": at_zero,
        "key_hiding_values": sorted(hiding),
        "key_hiding_expected": Fraction(1, euler_phi(sp.n) ** sp.k),
        "substitution_max": sub.prob,
        "substitution_bound": sp.substitution_bound(),
    }


# sweep -------------------------------------------------------------------

def sweep_records(n_min, n_max, k_max, samples, seed, space_limit, cap=None):
    """Formula-vs-enumeration records over every (n, k, t) in range."""
    rng = random.Random(seed)
    for n in range(n_min, n_max + 1):
        divs = divisors(n)
        for k in range(1, k_max + 1):
            for t in product(divs, repeat=k):
                if math.prod(euler_phi(n // ti) for ti in t) > space_limit:
                    continue
                for _ in range(samples):
                    a = tuple(rng.randrange(n) for _ in range(k))
                    b = rng.randrange(n)
                    inst = congruence.CongruenceInstance(n, a, b, t)
                    formula = congruence.count_restricted(inst)
                    oracle = len(congruence.enumerate_solutions(inst, cap))
                    ok = formula == oracle
                    case = None
                    if any(a):
                        case = congruence.unsolvable_case(inst).case_id.value
                        ok = ok and ((case == "NONE") == (formula > 0))
                    yield {"n": n, "k": k, "a": a, "b": b, "t": t, "formula": formula,
                           "oracle": oracle, "case": case, "match": ok}


def cmd_sweep(args) -> Report:
    if args.n_max < 2 or args.n_min < 2 or args.n_min > args.n_max or args.k_max < 1 or args.samples < 1:
        raise DomainError("malformed range: need 2 <= n-min <= n-max, k-max >= 1, samples >= 1")
    rep = Report("sweep", {"n_min": args.n_min, "n_max": args.n_max, "k_max": args.k_max,
                           "samples": args.samples, "seed": args.seed, "space_limit": args.space_limit})
    rep.results = list(sweep_records(args.n_min, args.n_max, args.k_max, args.samples, args.seed,
                                     args.space_limit, args.cap))
    rep.oracle_checked = True
    bad = [r for r in rep.results if not r["match"]]
    if args.output:
        text = rep.to_csv() if args.format == "csv" else rep.to_json(args.approx)
        Path(args.output).write_text(text)
    if bad:
        raise VerificationFailed(rep, f"{len(bad)} mismatches, first: {bad[0]}")
    return rep


# wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--approx", action="store_true", help="add approximate decimals next to exact rationals")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap (default $GRDH_ENUM_CAP or 10^7)")

    p = argparse.ArgumentParser(prog="grdh", description="Restricted-congruence hashing toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="count solutions of a restricted linear congruence")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-a", type=int_list, required=True)
    c.add_argument("-b", type=int, required=True)
    c.add_argument("-t", type=int_list, default=None, help="gcd constraints (default all 1)")
    c.add_argument("--unrestricted", action="store_true", help="count over all of Z_n^k")
    c.add_argument("--oracle", action="store_true", help="also enumerate and compare")
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("classify", parents=[common], help="classify a hash family")
    k.add_argument("-n", type=int, required=True)
    k.add_argument("-k", type=int, required=True)
    k.add_argument("-t", type=int_list, default=None)
    k.add_argument("--flavor", choices=[f.value for f in Flavor], default="GRDH")
    k.add_argument("--exhaustive", action="store_true", help="re-verify by brute force")
    k.set_defaults(func=cmd_classify)

    m = sub.add_parser("mac", parents=[common], help="authentication code with secrecy")
    m.add_argument("action", choices=["keygen", "encrypt", "decrypt", "analyze"])
    m.add_argument("-n", type=int, required=True)
    m.add_argument("-k", type=int, required=True)
    m.add_argument("--key", type=key_pair, default=None, help="x1,..,xk:y1,..,yk")
    m.add_argument("--key-file", default=None)
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("-o", "--output", default=None)
    m.add_argument("-m", type=int_list, default=None)
    m.add_argument("-c", type=int_list, default=None)
    m.add_argument("--tag", type=int, default=None)
    m.set_defaults(func=cmd_mac)

    s = sub.add_parser("sweep", parents=[common], help="formula vs enumeration sweep")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--k-max", type=int, default=2)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--space-limit", type=int, default=10**5)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_sweep)
    return p


def _check_mac_args(parser, args) -> None:
    need = {"encrypt": ["m"], "decrypt": ["c", "tag"]}.get(args.action, [])
    for name in need:
        if getattr(args, name) is None:
            parser.error(f"mac {args.action} needs -{name if len(name) == 1 else '-' + name}")


def _fmt(val) -> str:
    if isinstance(val, dict):
        if set(val) >= {"num", "den"}:
            text = val["num"] if val["den"] == "1" else f"{val['num']}/{val['den']}"
            return text + (f" (~{val['approx']:.6g})" if "approx" in val else "")
        return "{" + ", ".join(f"{k}={_fmt(v)}" for k, v in val.items()) + "}"
    if isinstance(val, list):
        return "(" + ", ".join(_fmt(v) for v in val) + ")"
    return str(val)


def _summary(rep: Report, approx: bool = False) -> str:
    lines = [f"{rep.command}: " + " ".join(f"{k}={v}" for k, v in rep.params.items())]
    if rep.command == "sweep":
        bad = sum(1 for r in rep.results if not r["match"])
        lines.append(f"instances={len(rep.results)} mismatches={bad}")
    else:
        for rec in rep.to_dict(approx)["results"]:
            for key, val in rec.items():
                lines.append(f"  {key}: {_fmt(val)}")
    lines.append(f"oracle_checked: {str(rep.oracle_checked).lower()}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mac":
        _check_mac_args(parser, args)
    try:
        rep = args.func(args)
    except VerificationFailed as exc:
        print(exc.report.to_json(args.approx) if args.json else _summary(exc.report, args.approx))
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, EnumerationCapExceeded) as exc:
        print(f"grdh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(rep.to_json(args.approx) if args.json else _summary(rep, args.approx))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
