"""obcalc command line.

Exit status: 0 on success, 1 on a domain error (bad word, invalid data,
contradiction, ...), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from obcalc import dthree, foliations, infer, links3, mcg, openbook
from obcalc.domains import PeriodicData
from obcalc.rational import fmt, pretty


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text):
    if ":" not in text:
        raise argparse.ArgumentTypeError(f"expected LABEL:LABEL, got {text!r}")
    a, b = text.split(":", 1)
    return a, b


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None


# --------------------------------------------------------------------------
# subcommands; each returns (text, json_obj)


def cmd_classify(args):
    w = mcg.mcg_word(args.word)
    nf = mcg.classify(w)
    doc = {"word": str(w), "kind": nf.kind}
    if isinstance(nf, mcg.Periodic):
        doc["fdtc"] = fmt(nf.fdtc)
        text = f"periodic, FDTC {pretty(nf.fdtc)}"
    elif isinstance(nf, mcg.PseudoAnosov):
        doc.update(n=list(nf.n), d=nf.d, normal_form=str(mcg.normal_form_word(nf.n, nf.d)))
        text = f"pseudo-Anosov, n = ({', '.join(map(str, nf.n))}), d = {nf.d}"
    else:
        text = "reducible"
    return text, doc


def cmd_d3(args):
    pd, perm = PeriodicData.from_unsorted(args.genus, args.m, args.k)
    rep = dthree.d3(pd, args.channel, args.offset)
    other = "first_principles" if rep.convention == "printed" else "printed"
    alt = dthree.d3(pd, other, args.offset)
    margin = pd.r + 1 + 4 * rep.d3()
    doc = rep.as_dict()
    doc.update(
        d3=fmt(rep.d3()),
        permutation=list(perm),
        tightness=dthree.tightness(pd),
        bound_margin=fmt(margin),
        bound=("satisfied" if margin >= 0 else "violated"),
        other_convention={"convention": other, "d3_telescoped": fmt(alt.d3())},
    )
    s_text = ", ".join(f"s{i} = {pretty(v)}" for i, v in zip(range(rep.I - 1, pd.r), rep.s)) or "-"
    lines = [
        f"d3 = {pretty(rep.d3())}",
        f"k sorted = ({', '.join(map(str, pd.k))}), m = {pd.m}, I = {rep.I}, f(k_r/m) = {pretty(rep.f_value)}",
        f"s: {s_text}",
        f"closed formula {pretty(rep.d3_printed + rep.offset)}, telescoped {pretty(rep.d3())} "
        f"({rep.convention}); {other}: {pretty(alt.d3())}",
        f"offset {pretty(rep.offset)}; bound r + 1 + 4 d3 = {pretty(margin)} "
        f"({'satisfied' if margin >= 0 else 'violated'})",
    ]
    if rep.caps:
        lines.append("cap  k           form      chi_hat  H^2      <c1,H>  c1^2 printed  c1^2 fp  shift")
        for i, c in enumerate(rep.caps):
            ks = ",".join(map(str, pd.k[i:]))
            lines.append(
                f"{i + 1:<4} {ks:<11} {c.form:<9} {_p(c.euler_measure):<8} {_p(c.self_intersection):<8} "
                f"{_p(c.c1_pairing):<7} {_p(c.c1_squared_printed):<13} {_p(c.c1_squared_fp):<8} {_p(c.shift)}"
            )
    else:
        lines.append("no caps (one boundary component)")
    return "\n".join(lines), doc


def _p(q):
    return "-" if q is None else pretty(q)


def cmd_cap(args):
    ob = openbook.OpenBookDesc.from_json(_load_json(args.book))
    for label in args.label:
        ob = openbook.cap_off(ob, label)
    return str(ob), ob.to_json()


def cmd_glue(args):
    left = openbook.OpenBookDesc.from_json(_load_json(args.left))
    if args.right is None:
        if len(args.pair) != 1:
            raise UsageError("self-gluing takes exactly one --pair")
        out = openbook.self_glue(left, args.pair[0], args.allow_closed)
    else:
        right = openbook.OpenBookDesc.from_json(_load_json(args.right))
        out = openbook.glue(left, right, args.pair, args.allow_closed)
    return str(out), out.to_json()


def cmd_det(args):
    if args.braid is None and args.n is None:
        raise UsageError("det needs --braid or --n")
    if args.braid is not None:
        rep = links3.det_report(links3.parse_braid(args.braid), args.method)
        return str(rep.determinant), rep.as_dict()
    n = tuple(args.n)
    ds = links3.detsum(n)
    hf = links3.hf_model(n)
    hf_minus = links3.hf_model(links3.minus(n))
    doc = {
        "n": list(n),
        "det": ds.det_n,
        "det_minus": ds.det_minus,
        "det_resolution": ds.det_resolution,
        "detsum_holds": ds.holds,
        "hf": hf.as_dict(),
        "hf_minus": hf_minus.as_dict(),
    }
    text = "\n".join([
        f"det(B_n,0) = {ds.det_n}",
        f"det(B_n-,0) = {ds.det_minus} = {ds.det_n} + {ds.det_resolution} (resolution)"
        + ("" if ds.holds else "  FAILS"),
        f"HF^+ towers {hf.tower_count}, extra generator in grading {hf.extra_generator_grading}, hat rank {hf.hat_rank}",
    ])
    return text, doc


def cmd_sg(args):
    res = links3.support_genus(tuple(args.n), args.d)
    lines = [f"support genus: {res.value}", res.reason]
    for s in res.chain:
        lines.append(f"  {s.op:<6} n = ({', '.join(map(str, s.n))}), d = {s.d}" + (f"  {s.note}" if s.note else ""))
    return "\n".join(lines), res.as_dict()


def cmd_infer(args):
    script = _load_json(args.script)
    cl = infer.run(script)
    doc = cl.as_dict()
    shown = cl.derived() if not args.all else list(cl)
    blocks = [cl.render(f) for f in shown]
    text = "\n".join(blocks) if blocks else "no facts derived"
    return text, doc


def cmd_validate_pa(args):
    fd = foliations.FoliationData.from_json(_load_json(args.file))
    for label in args.cap:
        fd = foliations.cap_foliation(fd, label)
    val = foliations.validate(fd)
    rep = foliations.u_image_report(fd)
    doc = {
        "data": fd.to_json(),
        "ok": val.ok,
        "violations": [v.as_dict() for v in val.violations],
        "u_image": rep.as_dict(),
    }
    lines = ["ok" if val.ok else "invalid"]
    lines += [f"  {v.constraint}: {v.detail} (off by {v.amount})" for v in val.violations]
    lines.append(f"U-image: {rep.verdict} ({rep.reason})")
    if not val.ok:
        raise _Invalid("\n".join(lines), doc)
    return "\n".join(lines), doc


class _Invalid(Exception):
    def __init__(self, text, doc):
        super().__init__(text)
        self.text, self.doc = text, doc


# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print one JSON document instead of text")
    p = argparse.ArgumentParser(prog="obcalc", description="Open book and contact invariant calculator.")
    p.add_argument("--json", action="store_true", default=False, help="print one JSON document instead of text")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("classify", parents=[common], help="classify a word in t_a, t_b")
    s.add_argument("--word", required=True, help='e.g. "a b" or "a^2 B"')
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("d3", parents=[common], help="d3 of a tight genus-one periodic open book")
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("-m", type=int, required=True, help="common denominator of the twisting coefficients")
    s.add_argument("-k", type=_int_list, required=True, help="numerators k_i, comma-separated")
    s.add_argument("--channel", choices=("printed", "first_principles"), default=None,
                   help="c1^2 channel (default: $OBCALC_C1SQ_CHANNEL or printed)")
    s.add_argument("--offset", type=Fraction, default=None, help="added to d3 (default: $OBCALC_D3_OFFSET or 0)")
    s.set_defaults(func=cmd_d3)

    s = sub.add_parser("cap", parents=[common], help="cap off boundary components of an open book")
    s.add_argument("--book", required=True, help="JSON descriptor file ('-' for stdin)")
    s.add_argument("--label", action="append", required=True, help="boundary label; repeat to cap several")
    s.set_defaults(func=cmd_cap)

    s = sub.add_parser("glue", parents=[common], help="glue two open books, or one to itself")
    s.add_argument("--left", required=True)
    s.add_argument("--right", help="omit to self-glue --left")
    s.add_argument("--pair", type=_pair, action="append", required=True, help="LEFT:RIGHT boundary labels")
    s.add_argument("--allow-closed", action="store_true", help="permit a closed (r = 0) result")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("det", parents=[common], help="determinant of a closed 3-braid")
    s.add_argument("--braid", help='e.g. "s2 s1^-1"')
    s.add_argument("--n", type=_int_list, help="report det(B_n,0), the resolution identity and the HF model")
    s.add_argument("--method", choices=links3.METHODS, default="burau")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("sg", parents=[common], help="support genus of xi_{n,d}")
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_sg)

    s = sub.add_parser("infer", parents=[common], help="close a fact script under the rules")
    s.add_argument("--script", required=True)
    s.add_argument("--all", action="store_true", help="print asserted facts too")
    s.set_defaults(func=cmd_infer)

    s = sub.add_parser("validate-pa", parents=[common], help="check pseudo-Anosov singularity data")
    s.add_argument("--file", required=True)
    s.add_argument("--cap", action="append", default=[], help="cap this boundary first; repeatable")
    s.set_defaults(func=cmd_validate_pa)
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = args.json

    def emit(text, doc):
        if as_json:
            stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            stdout.write(text + "\n")

    try:
        text, doc = args.func(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"obcalc: error: {exc}\n")
        return 2
    except _Invalid as exc:
        emit(exc.text, exc.doc)
        return 1
    except infer.ConflictError as exc:
        if as_json:
            emit("", {"error": "contradiction", "facts": [f.id for f in exc.facts],
                      "derivations": [exc.closure.tree(f) for f in exc.facts]})
        else:
            stderr.write(f"obcalc: {exc}\n")
        return 1
    except (ValueError, KeyError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if isinstance(exc, KeyError):
            msg = f"missing field {msg!r}"
        if as_json:
            emit("", {"error": type(exc).__name__, "message": str(msg)})
        else:
            stderr.write(f"obcalc: {type(exc).__name__}: {msg}\n")
        return 1
    emit(text, doc)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
