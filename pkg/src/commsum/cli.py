"""Command-line front end.

Each invocation parses one request, runs the matching operation, wraps
the outcome in a certificate, and prints a report with stable field
order.  Reports are deterministic given the request and seed; elapsed
time goes to stderr so saved reports stay byte-identical.  Exit status
is 0 for a verified pass, 1 for a verified failure, and 2 for input
errors.

The request payload comes from --input as `key: value` lines (inline
text or @file).  Inline text without a colon is treated as the
command's default field, e.g.

    commsum decompose --ring "matrix(integers, 2)" --input "[[0,1],[0,0]]"
"""

import argparse
import sys
import time

from . import certificates, grammar, matrices, obstruction, shift, weyl
from .certificates import CertificateFormatError
from .grammar import ParseError
from .rings import RingError
from .shift import FiniteOperator

COMMANDS = ("decompose", "trace-sum", "trace-witness", "bounded", "corner",
            "weyl-eval", "weyl-witness", "weyl-integrate", "modp-check",
            "lemma-check", "counterexample", "shift-verify", "replay")

_DEFAULT_FIELD = {
    "decompose": "matrix",
    "trace-sum": None,
    "trace-witness": "terms",
    "bounded": "matrix",
    "corner": "matrix",
    "weyl-eval": "element",
    "weyl-witness": "element",
    "weyl-integrate": "element",
    "modp-check": "r",
    "shift-verify": "operator",
}


class InputError(ValueError):
    pass


def _read_input(arg):
    if arg is None:
        return ""
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input file: {exc}") from None
    return arg


def _parse_payload(text, command):
    fields = {}
    stripped = text.strip()
    if stripped and ":" not in stripped:
        default = _DEFAULT_FIELD.get(command)
        if default is None:
            if command == "trace-sum":
                parts = grammar.split_top(stripped, ";")
                if len(parts) != 2:
                    raise InputError(
                        "trace-sum inline input must be 'A ; B'")
                return {"a": parts[0], "b": parts[1]}
            raise InputError(f"{command} needs 'key: value' input fields")
        return {default: stripped}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise InputError(f"malformed input line {line!r}")
        fields[key.strip().lower()] = value.strip()
    return fields


def _require(fields, key, command):
    try:
        return fields[key]
    except KeyError:
        raise InputError(f"{command} needs the input field {key!r}") from None


def _ring_from(args, fields, default=None):
    text = args.ring or fields.get("ring") or default
    if text is None:
        raise InputError("this command needs --ring (or a 'ring:' field)")
    return grammar.parse_ring(text)


def _matrix_ring_from(args, fields, command):
    ring = _ring_from(args, fields)
    if ring.kind != "matrix":
        raise InputError(f"{command} needs a matrix ring, got {ring.descriptor()}")
    return ring


def _weyl_ring_from(args, fields, command, default=None):
    ring = _ring_from(args, fields, default)
    if ring.kind != "weyl":
        raise InputError(f"{command} needs a weyl ring, got {ring.descriptor()}")
    return ring


def _p_from(args, fields, default=None):
    raw = args.p if args.p is not None else fields.get("p", default)
    if raw is None:
        raise InputError("this command needs --p")
    return int(raw)


# --- command handlers: each returns (certificate, echo fields) ---


def _cmd_decompose(args, fields):
    ring = _matrix_ring_from(args, fields, "decompose")
    text = _require(fields, "matrix", "decompose")
    A = grammar.parse_element(text, ring)
    cert = matrices.decomposition_certificate(A)
    return cert, {"matrix": str(A)}


def _cmd_trace_sum(args, fields):
    ring = _matrix_ring_from(args, fields, "trace-sum")
    A = grammar.parse_element(_require(fields, "a", "trace-sum"), ring)
    B = grammar.parse_element(_require(fields, "b", "trace-sum"), ring)
    cert = matrices.trace_transfer_certificate(A, B)
    return cert, {"a": str(A), "b": str(B)}


def _cmd_trace_witness(args, fields):
    ring = _ring_from(args, fields)
    s = grammar.parse_commutator_sum(_require(fields, "terms", "trace-witness"),
                                     ring)
    n = int(fields["n"]) if "n" in fields else None
    cert = matrices.trace_witness_certificate(s, n)
    echo = {"terms": grammar.commutator_sum_text(s)}
    if n is not None:
        echo["n"] = str(n)
    return cert, echo


def _cmd_bounded(args, fields):
    ring = _matrix_ring_from(args, fields, "bounded")
    A = grammar.parse_element(_require(fields, "matrix", "bounded"), ring)
    s = grammar.parse_commutator_sum(fields.get("terms", ""), ring.base)
    cert = matrices.bounded_certificate(A, s)
    return cert, {"matrix": str(A), "terms": grammar.commutator_sum_text(s)}


def _cmd_corner(args, fields):
    ring = _matrix_ring_from(args, fields, "corner")
    r = grammar.parse_element(_require(fields, "matrix", "corner"), ring)
    blocks_text = fields.get("blocks", ", ".join("1" for _ in range(ring.n)))
    sizes = [int(b.strip()) for b in blocks_text.split(",") if b.strip()]
    sums = [grammar.parse_commutator_sum(
                fields.get(f"corner-terms-{i + 1}", ""), ring)
            for i in range(len(sizes))]
    cert = matrices.corner_certificate(r, sizes, sums)
    return cert, {"matrix": str(r),
                  "blocks": ", ".join(str(s) for s in sizes)}


def _cmd_weyl_eval(args, fields):
    ring = _weyl_ring_from(args, fields, "weyl-eval")
    text = _require(fields, "element", "weyl-eval")
    cert = weyl.normal_form_certificate(ring, text)
    return cert, {"element": text}


def _cmd_weyl_witness(args, fields):
    ring = _weyl_ring_from(args, fields, "weyl-witness")
    s = grammar.parse_element(_require(fields, "element", "weyl-witness"), ring)
    cert = weyl.fresh_witness_certificate(s)
    return cert, {"element": str(s)}


def _cmd_weyl_integrate(args, fields):
    ring = _weyl_ring_from(args, fields, "weyl-integrate")
    f = grammar.parse_element(_require(fields, "element", "weyl-integrate"),
                              ring)
    mode = fields.get("mode", "exact")
    if mode not in ("exact", "scaled"):
        raise InputError(f"weyl-integrate mode must be exact or scaled, "
                         f"got {mode!r}")
    cert = weyl.antiderivative_certificate(f, mode)
    return cert, {"element": str(f), "mode": mode}


def _cmd_modp_check(args, fields):
    p = _p_from(args, fields)
    base_text = args.ring or fields.get("ring")
    base = grammar.parse_ring(base_text) if base_text else None
    r_text = fields.get("r")
    if r_text is not None:
        from .rings import prime_field
        base = base if base is not None else prime_field(p)
        r = grammar.parse_element(r_text, base)
        cert = weyl.char_p_obstruction_certificate(base, r, p)
        return cert, {"p": str(p), "r": str(r)}
    cert = weyl.char_p_homomorphism_certificate(p, base, fields.get("element"))
    echo = {"p": str(p)}
    if "element" in fields:
        echo["element"] = fields["element"]
    return cert, echo


def _cmd_lemma_check(args, fields):
    p = _p_from(args, fields)
    mode = fields.get("mode", "exhaustive")
    if mode == "sample":
        samples = int(fields.get("samples", "200"))
        cert = obstruction.span_lemma_certificate(p, "sample", samples,
                                                  args.seed)
        return cert, {"p": str(p), "mode": mode, "samples": str(samples),
                      "seed": str(args.seed)}
    cert = obstruction.span_lemma_certificate(p, mode)
    return cert, {"p": str(p), "mode": mode}


def _cmd_counterexample(args, fields):
    p = _p_from(args, fields, default="2")
    custom = [k for k in ("x", "y", "z") if k in fields]
    if custom:
        if len(custom) != 3:
            raise InputError("custom counterexamples need all of x, y, z")
        R = (grammar.parse_ring(args.ring or fields["ring"])
             if (args.ring or "ring" in fields)
             else obstruction.standard_counterexample_ring(p))
        x = grammar.parse_element(fields["x"], R)
        y = grammar.parse_element(fields["y"], R)
        z = grammar.parse_element(fields["z"], R)
        cert = obstruction.custom_counterexample_certificate(R, x, y, z)
        return cert, {"p": str(p), "x": str(x), "y": str(y), "z": str(z)}
    cross = fields.get("cross-check", "no") == "yes"
    cert = obstruction.not_commutator_certificate(p, cross)
    return cert, {"p": str(p), "cross-check": "yes" if cross else "no"}


def _cmd_shift_verify(args, fields):
    ring = _ring_from(args, fields, default="integers")
    text = _require(fields, "operator", "shift-verify")
    f = (FiniteOperator(ring, {}) if text == "(none)"
         else FiniteOperator(ring, grammar.parse_triples(text, ring)))
    cert = shift.preimage_window_certificate(f, args.window)
    return cert, {"operator": f.triples_text(), "window": str(args.window)}


_HANDLERS = {
    "decompose": _cmd_decompose,
    "trace-sum": _cmd_trace_sum,
    "trace-witness": _cmd_trace_witness,
    "bounded": _cmd_bounded,
    "corner": _cmd_corner,
    "weyl-eval": _cmd_weyl_eval,
    "weyl-witness": _cmd_weyl_witness,
    "weyl-integrate": _cmd_weyl_integrate,
    "modp-check": _cmd_modp_check,
    "lemma-check": _cmd_lemma_check,
    "counterexample": _cmd_counterexample,
    "shift-verify": _cmd_shift_verify,
}


def _indent(text, prefix="  "):
    return "\n".join(prefix + line if line else line
                     for line in text.rstrip("\n").splitlines())


def _report(command, ring_text, echo, cert):
    lines = [f"command: {command}"]
    if ring_text is not None:
        lines.append(f"ring: {ring_text}")
    if echo:
        lines.append("input:")
        lines += [f"  {k}: {v}" for k, v in echo.items()]
    lines.append("certificate:")
    lines.append(_indent(cert.render()))
    lines.append(f"verification: {cert.verdict}")
    return "\n".join(lines) + "\n"


def _run_replay(args):
    if not args.replay:
        raise InputError("replay needs --replay FILE")
    try:
        with open(args.replay, encoding="utf-8") as fh:
            stored = certificates.parse_certificate(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read certificate: {exc}") from None
    fresh, match = certificates.replay(stored)
    lines = [
        "command: replay",
        f"claim: {stored.claim}",
        "certificate:",
        _indent(fresh.render()),
        f"replay: {'match' if match else 'mismatch'}",
        f"verification: {'pass' if match and fresh.passed else 'fail'}",
    ]
    report = "\n".join(lines) + "\n"
    ok = match and fresh.passed
    return report, 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="commsum",
        description="Exact commutator-sum decompositions and certificates.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--ring", help="ring descriptor, e.g. 'matrix(mod 6, 3)'")
    parser.add_argument("--input", help="inline 'key: value' lines or @file")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled suites (default 0)")
    parser.add_argument("--window", type=int, default=64,
                        help="verification window for shift-verify")
    parser.add_argument("--p", type=int, help="prime for the mod-p commands")
    parser.add_argument("--replay", metavar="FILE",
                        help="stored certificate or report to re-verify")
    parser.add_argument("--out", metavar="FILE",
                        help="also write the report to FILE")
    return parser


def run(argv, stdout=None, stderr=None):
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    started = time.perf_counter()
    try:
        if args.command == "replay":
            report, code = _run_replay(args)
        else:
            handler = _HANDLERS[args.command]
            fields = _parse_payload(_read_input(args.input), args.command)
            cert, echo = handler(args, fields)
            ring_text = cert.parameters.get("ring", cert.parameters.get("base"))
            report = _report(args.command, ring_text, echo, cert)
            code = 0 if cert.passed else 1
    except (InputError, ParseError, RingError, CertificateFormatError,
            ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    stdout.write(report)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(report)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=stderr)
            return 2
    elapsed = time.perf_counter() - started
    print(f"elapsed: {elapsed:.3f}s", file=stderr)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
