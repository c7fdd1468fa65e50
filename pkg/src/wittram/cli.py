"""Command-line surface.

Every command takes --p, --m, --residue {fp,fp-u}, --precision N and
--format {text,structured}.  Structured mode prints one JSON record per
command with the keys {config, inputs, trace, verdict, evidence}.

Exit codes: 0 success, 2 violated or unverifiable hypotheses and other
domain errors, 3 parse errors, 4 precision exhausted.
"""

import argparse
import json
import sys
from fractions import Fraction

from .brauer import (
    BrauerSymbol,
    RewriteTrace,
    lemma54_rewrite,
    normalize_symbol,
)
from .coeff import FieldKind, FieldSpec, ResidueElem
from .errors import (
    DegenerateExtension,
    DivisionByZero,
    HypothesisNotVerified,
    HypothesisViolation,
    LimitExceeded,
    NoRootError,
    ParseError,
    PrecisionExhausted,
    ResidueTooSmall,
    RuleViolation,
    ShapeMismatch,
    SpecMismatch,
    UnsupportedCase,
    UnsupportedInput,
)
from .extension import (
    Classification,
    RamReport,
    classify_deg_p,
    classify_len2,
)
from .grammar import (
    parse_element,
    parse_laurent,
    parse_symbol,
    parse_witt,
    render_laurent,
    render_residue,
    render_symbol,
    render_witt,
)
from .newton import newton_classify_deg_p
from .theorems import (
    SubfieldWitness,
    build_disjoint_division_pair,
    conjecture_roundtrip,
    cyclic_to_insep,
    insep_to_cyclic_p,
    insep_to_cyclic_p2,
    insep_to_cyclic_perfect,
)
from .valued import DEFAULT_PRECISION, LaurentElem
from .witt import WittVector, _check_caps, ghost_polys, sum_polys, witt_neg
from . import sampling

_DOMAIN_ERRORS = (
    HypothesisViolation,
    HypothesisNotVerified,
    UnsupportedCase,
    UnsupportedInput,
    ShapeMismatch,
    SpecMismatch,
    RuleViolation,
    NoRootError,
    DegenerateExtension,
    LimitExceeded,
    ResidueTooSmall,
    DivisionByZero,
)

_VERDICT_NAMES = {
    "split": "Split",
    "unramified": "Unramified",
    "totally_ramified": "TotallyRamified",
    "unclassified": "Unclassified",
}


def _config_dict(args, m):
    return {
        "p": args.p,
        "m": m,
        "residue": args.residue,
        "precision": args.precision,
        "format": args.format,
    }


def _base_spec(args):
    if args.residue not in ("fp", "fp-u"):
        raise UnsupportedInput(f"unknown residue field {args.residue!r}")
    if args.format not in ("text", "structured"):
        raise UnsupportedInput(f"unknown format {args.format!r}")
    _check_caps(args.p, 1)
    kind = FieldKind.PRIME if args.residue == "fp" else FieldKind.RATIONAL
    return FieldSpec(args.p, kind)


def _resolve_m(args, inferred):
    if args.m is not None and args.m != inferred:
        raise ShapeMismatch(
            f"--m {args.m} does not match an input of length {inferred}"
        )
    _check_caps(args.p, inferred)
    return inferred


def _plain(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Classification):
        return value.value
    if isinstance(value, LaurentElem):
        return render_laurent(value)
    if isinstance(value, WittVector):
        return render_witt(value)
    if isinstance(value, BrauerSymbol):
        return render_symbol(value)
    if isinstance(value, ResidueElem):
        return render_residue(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _trace_records(trace):
    if trace is None:
        return []
    if isinstance(trace, RewriteTrace):
        return [
            {
                "rule": step.rule,
                "before": [_plain(x) for x in step.before],
                "after": _plain(step.after),
                "params": _plain(step.params),
            }
            for step in trace.steps
        ]
    return [_plain(step) for step in trace]


def _trace_names(trace):
    if trace is None:
        return []
    if isinstance(trace, RewriteTrace):
        return [step.rule for step in trace.steps]
    return [str(step) for step in trace]


def _trace_line(trace):
    names = _trace_names(trace)
    if not names:
        return None
    return f"trace ({len(names)} steps): " + ", ".join(names)


def _evidence_line(evidence):
    if not evidence:
        return None
    bits = []
    for k, v in evidence.items():
        pv = _plain(v)
        if isinstance(pv, (dict, list)):
            pv = json.dumps(pv)
        bits.append(f"{k} = {pv}")
    return "evidence: " + "; ".join(bits)


class _Report:
    """One command's output: structured record plus text lines."""

    def __init__(self, m, inputs, verdict, evidence=None, trace=None,
                 text_lines=None):
        self.m = m
        self.inputs = inputs
        self.verdict = verdict
        self.evidence = evidence or {}
        self.trace = trace
        self.text_lines = text_lines or [str(verdict)]


def _classification_lines(report, extra_first=None):
    name = _VERDICT_NAMES[report.classification.value]
    lines = []
    if extra_first:
        lines.extend(extra_first)
    lines.append(f"verdict: {name}")
    ev = _evidence_line(report.evidence)
    if ev:
        lines.append(ev)
    tl = _trace_line(report.trace)
    if tl:
        lines.append(tl)
    return lines


def _cmd_witt_add(args):
    spec = _base_spec(args)
    a = parse_witt(args.a, spec, args.precision)
    b = parse_witt(args.b, spec, args.precision)
    if a.m != b.m:
        raise ShapeMismatch(f"lengths differ: {a.m} vs {b.m}")
    m = _resolve_m(args, a.m)
    out = a + b
    rendered = render_witt(out, args.precision)
    return _Report(
        m,
        {"a": render_witt(a, args.precision), "b": render_witt(b, args.precision)},
        rendered,
        text_lines=[rendered],
    )


def _cmd_witt_neg(args):
    spec = _base_spec(args)
    a = parse_witt(args.a, spec, args.precision)
    m = _resolve_m(args, a.m)
    out = witt_neg(a)
    rendered = render_witt(out, args.precision)
    return _Report(
        m,
        {"a": render_witt(a, args.precision)},
        rendered,
        text_lines=[rendered],
    )


def _cmd_ram_analyze(args):
    spec = _base_spec(args)
    el = parse_element(args.element, spec, args.precision)
    if isinstance(el, BrauerSymbol):
        raise ShapeMismatch("analyze takes a series or a vector, not a symbol")
    if isinstance(el, WittVector):
        m = _resolve_m(args, el.m)
        if m == 1:
            report = classify_deg_p(el.components[0])
        elif m == 2:
            report = classify_len2(el)
        else:
            raise UnsupportedCase("classification is implemented for m <= 2")
        shown = render_witt(el, args.precision)
    else:
        m = _resolve_m(args, 1)
        report = classify_deg_p(el)
        shown = render_laurent(el, args.precision)
    evidence = dict(report.evidence)
    evidence["source"] = report.source
    return _Report(
        m,
        {"element": shown},
        report.classification.value,
        evidence=evidence,
        trace=report.trace,
        text_lines=_classification_lines(report),
    )


def _cmd_symbol_normalize(args):
    spec = _base_spec(args)
    sym = parse_symbol(args.symbol, spec, args.precision)
    m = _resolve_m(args, sym.m)
    out = normalize_symbol(sym)
    rendered = render_symbol(out.symbol, args.precision)
    lines = [f"result: {rendered}"]
    tl = _trace_line(out.trace)
    if tl:
        lines.append(tl)
    return _Report(
        m,
        {"symbol": render_symbol(sym, args.precision)},
        rendered,
        evidence={"v_b": out.symbol.b.val()},
        trace=out.trace,
        text_lines=lines,
    )


def _cmd_symbol_rewrite(args):
    spec = _base_spec(args)
    sym = parse_symbol(args.symbol, spec, args.precision)
    m = _resolve_m(args, sym.m)
    if m != 2:
        raise UnsupportedCase("the rewrite is stated for length-2 vectors")
    out = lemma54_rewrite(sym)
    out.trace.validate()
    rendered = render_symbol(out.symbol, args.precision)
    lines = [f"result: {rendered}"]
    tl = _trace_line(out.trace)
    if tl:
        lines.append(tl)
    return _Report(
        m,
        {"symbol": render_symbol(sym, args.precision)},
        rendered,
        evidence={"steps": len(out.trace)},
        trace=out.trace,
        text_lines=lines,
    )


def _cmd_thm_cyclic_to_insep(args):
    spec = _base_spec(args)
    omega = parse_witt(args.omega, spec, args.precision)
    b = parse_laurent(args.b, spec, args.precision)
    m = _resolve_m(args, omega.m)
    witness = cyclic_to_insep(omega, b)
    witness.verify()
    c_text = render_laurent(witness.c, args.precision)
    evidence = {
        "c": witness.c,
        "v_c": witness.c.val(),
        "norm_factor": witness.norm_factor,
        "note": witness.note,
    }
    lines = [
        f"c: {c_text}",
        f"v(c): {witness.c.val()}",
        f"note: {witness.note}",
    ]
    return _Report(
        m,
        {"omega": render_witt(omega, args.precision),
         "b": render_laurent(b, args.precision)},
        c_text,
        evidence=evidence,
        trace=witness.report.trace,
        text_lines=lines,
    )


def _construction_report(args, sym, construction):
    rendered = render_symbol(construction.result_symbol, args.precision)
    evidence = dict(construction.report.evidence)
    evidence["result"] = rendered
    evidence["evidence_level"] = construction.evidence_level
    lines = [f"result: {rendered}"]
    lines.extend(_classification_lines(construction.report))
    lines.append(f"note: {construction.note}")
    tl = _trace_line(construction.trace)
    if tl:
        lines.append(tl)
    return _Report(
        construction.m,
        {"symbol": render_symbol(sym, args.precision)},
        construction.report.classification.value,
        evidence=evidence,
        trace=construction.trace,
        text_lines=lines,
    )


def _cmd_thm_insep_to_cyclic(args):
    spec = _base_spec(args)
    sym = parse_symbol(args.symbol, spec, args.precision)
    m = _resolve_m(args, sym.m)
    if m == 1:
        construction = insep_to_cyclic_p(sym)
    elif m == 2:
        construction = insep_to_cyclic_p2(sym)
    else:
        raise UnsupportedCase("the construction is implemented for m <= 2")
    construction.trace.validate()
    return _construction_report(args, sym, construction)


def _cmd_thm_perfect(args):
    spec = _base_spec(args)
    sym = parse_symbol(args.symbol, spec, args.precision)
    _resolve_m(args, sym.m)
    construction = insep_to_cyclic_perfect(sym)
    construction.trace.validate()
    return _construction_report(args, sym, construction)


def _cmd_thm_disjoint_pair(args):
    spec = _base_spec(args)
    m = args.m if args.m is not None else 1
    _check_caps(args.p, m)
    b = None
    b_text = "t"
    if args.b is not None:
        b = parse_laurent(args.b, spec, args.precision)
        b_text = render_laurent(b, args.precision)
    pair = build_disjoint_division_pair(spec, b, m)
    classes = [render_residue(a) for a in pair.classes]
    evidence = {
        "classes": classes,
        "sweep": pair.sweep,
        "degree_each": pair.first.p ** pair.first.m,
        "v_b": pair.first.v_b,
        "note": pair.note,
    }
    lines = [
        f"classes: {classes[0]}, {classes[1]}",
        f"sweep: {pair.sweep['combinations_checked']} combinations, "
        "no nontrivial combination is a coboundary",
        "verdict: division_pair",
        f"note: {pair.note}",
    ]
    return _Report(
        m,
        {"b": b_text},
        "division_pair",
        evidence=evidence,
        trace=None,
        text_lines=lines,
    )


def _stage_summary(payload):
    if isinstance(payload, str):
        return payload
    if isinstance(payload, RamReport):
        return _VERDICT_NAMES[payload.classification.value]
    if isinstance(payload, SubfieldWitness):
        return f"c = {render_laurent(payload.c)}, v(c) = {payload.c.val()}"
    return _VERDICT_NAMES[payload.report.classification.value]


def _cmd_thm_roundtrip(args):
    spec = _base_spec(args)
    omega = parse_witt(args.omega, spec, args.precision)
    b = parse_laurent(args.b, spec, args.precision)
    m = _resolve_m(args, omega.m)
    report = conjecture_roundtrip(omega, b)
    lines = []
    for label, payload in report.stages:
        lines.append(f"stage {label}: {_stage_summary(payload)}")
    verdict = "ok" if report.ok else "failed"
    lines.append(f"verdict: {verdict}")
    evidence = {
        "v_c": report.witness.c.val(),
        "output_classification": report.construction.report.classification,
        "evidence_level": report.construction.evidence_level,
        "stages": [label for label, _ in report.stages],
    }
    return _Report(
        m,
        {"omega": render_witt(omega, args.precision),
         "b": render_laurent(b, args.precision)},
        verdict,
        evidence=evidence,
        trace=report.construction.trace,
        text_lines=lines,
    )


def _cmd_oracle_ghost_check(args):
    _base_spec(args)
    m = args.m if args.m is not None else 2
    _check_caps(args.p, m)
    ghosts = ghost_polys(args.p, m)
    sums = sum_polys(args.p, m)
    checked = 0
    for n in range(m):
        w = ghosts[n]
        lhs = w.evaluate(sums)
        rhs = w.map_vars({i: i for i in range(m)}, 2 * m) + w.map_vars(
            {i: m + i for i in range(m)}, 2 * m
        )
        if lhs != rhs:
            return _Report(
                m,
                {},
                "mismatch",
                evidence={"level": n},
                text_lines=[f"verdict: mismatch at level {n}"],
            )
        checked += 1
    return _Report(
        m,
        {},
        "ok",
        evidence={"levels_checked": checked},
        text_lines=[f"verdict: ok ({checked} ghost identities)"],
    )


def _cmd_oracle_newton_check(args):
    spec = _base_spec(args)
    m = _resolve_m(args, 1)
    rng = sampling.make_rng(args.seed)
    agree = 0
    mismatches = []
    for _ in range(args.count):
        omega1 = sampling.random_classify_input(rng, spec, args.precision)
        got = classify_deg_p(omega1).classification.value
        want = newton_classify_deg_p(omega1)
        if got == want or "unclassified" in (got, want):
            agree += 1
        else:
            mismatches.append(
                {"input": render_laurent(omega1), "got": got, "want": want}
            )
    verdict = f"agreement {agree}/{args.count}"
    lines = [f"verdict: {verdict}"]
    for item in mismatches[:5]:
        lines.append(
            f"mismatch: {item['input']} gave {item['got']}, "
            f"oracle says {item['want']}"
        )
    report = _Report(
        m,
        {"count": args.count, "seed": args.seed},
        verdict,
        evidence={"agreements": agree, "mismatches": mismatches[:5]},
        text_lines=lines,
    )
    report.failed = bool(mismatches)
    return report


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wittram",
        description="Witt vectors, ramification analysis, and symbol "
        "rewrites over Laurent series fields.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True,
                        help="residue characteristic (a prime, at most 5)")
    common.add_argument("--m", type=int, default=None,
                        help="vector length (inferred from input if omitted)")
    common.add_argument("--residue", choices=("fp", "fp-u"), default="fp",
                        help="residue field: the prime field or F_p(u)")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="default series precision")
    common.add_argument("--format", choices=("text", "structured"),
                        default="text", help="output mode")

    top = parser.add_subparsers(dest="group", required=True)

    witt = top.add_parser("witt", help="vector arithmetic")
    wsub = witt.add_subparsers(dest="command", required=True)
    w_add = wsub.add_parser("add", parents=[common])
    w_add.add_argument("a")
    w_add.add_argument("b")
    w_add.set_defaults(handler=_cmd_witt_add)
    w_neg = wsub.add_parser("neg", parents=[common])
    w_neg.add_argument("a")
    w_neg.set_defaults(handler=_cmd_witt_neg)

    ram = top.add_parser("ram", help="ramification analysis")
    rsub = ram.add_subparsers(dest="command", required=True)
    r_an = rsub.add_parser("analyze", parents=[common])
    r_an.add_argument("element")
    r_an.set_defaults(handler=_cmd_ram_analyze)

    symbol = top.add_parser("symbol", help="symbol rewrites")
    ssub = symbol.add_subparsers(dest="command", required=True)
    s_norm = ssub.add_parser("normalize", parents=[common])
    s_norm.add_argument("symbol")
    s_norm.set_defaults(handler=_cmd_symbol_normalize)
    s_rw = ssub.add_parser("rewrite", parents=[common])
    s_rw.add_argument("symbol")
    s_rw.set_defaults(handler=_cmd_symbol_rewrite)

    thm = top.add_parser("thm", help="construction pipelines")
    tsub = thm.add_subparsers(dest="command", required=True)
    t_c2i = tsub.add_parser("cyclic-to-insep", parents=[common])
    t_c2i.add_argument("--omega", required=True)
    t_c2i.add_argument("--b", required=True)
    t_c2i.set_defaults(handler=_cmd_thm_cyclic_to_insep)
    t_i2c = tsub.add_parser("insep-to-cyclic", parents=[common])
    t_i2c.add_argument("symbol")
    t_i2c.set_defaults(handler=_cmd_thm_insep_to_cyclic)
    t_perf = tsub.add_parser("perfect", parents=[common])
    t_perf.add_argument("symbol")
    t_perf.set_defaults(handler=_cmd_thm_perfect)
    t_dp = tsub.add_parser("disjoint-pair", parents=[common])
    t_dp.add_argument("--b", default=None)
    t_dp.set_defaults(handler=_cmd_thm_disjoint_pair)
    t_rt = tsub.add_parser("roundtrip", parents=[common])
    t_rt.add_argument("--omega", required=True)
    t_rt.add_argument("--b", required=True)
    t_rt.set_defaults(handler=_cmd_thm_roundtrip)

    oracle = top.add_parser("oracle", help="independent checks")
    osub = oracle.add_subparsers(dest="command", required=True)
    o_gc = osub.add_parser("ghost-check", parents=[common])
    o_gc.set_defaults(handler=_cmd_oracle_ghost_check)
    o_nc = osub.add_parser("newton-check", parents=[common])
    o_nc.add_argument("--count", type=int, default=100)
    o_nc.add_argument("--seed", type=int, default=0)
    o_nc.set_defaults(handler=_cmd_oracle_newton_check)

    return parser


def _error_text(args, code_name, message):
    if args is not None and getattr(args, "format", "text") == "structured":
        record = {
            "config": _config_dict(args, args.m),
            "inputs": {},
            "trace": [],
            "verdict": "error",
            "evidence": {"error": code_name, "message": message},
        }
        return json.dumps(record)
    return f"error: {code_name}: {message}"


def run_command(argv):
    """Run one command; returns (exit_code, output_text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 0
        return code, ""
    try:
        report = args.handler(args)
    except ParseError as exc:
        return 3, _error_text(args, "ParseError", str(exc))
    except PrecisionExhausted as exc:
        return 4, _error_text(args, "PrecisionExhausted", str(exc))
    except _DOMAIN_ERRORS as exc:
        return 2, _error_text(args, type(exc).__name__, str(exc))
    if args.format == "structured":
        record = {
            "config": _config_dict(args, report.m),
            "inputs": _plain(report.inputs),
            "trace": _trace_records(report.trace),
            "verdict": _plain(report.verdict),
            "evidence": _plain(report.evidence),
        }
        text = json.dumps(record)
    else:
        text = "\n".join(report.text_lines)
    code = 1 if getattr(report, "failed", False) else 0
    return code, text


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    code, text = run_command(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
