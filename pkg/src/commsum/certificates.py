"""Replayable verdict records.

A certificate is a claim tag, the parameters needed to recompute it, the
evidence the computation produced, and a pass/fail verdict.  Rendering is
canonical (stable field order, plain text), and replaying a certificate
re-runs the claim's builder on the stored parameters and compares the
two renderings byte for byte.
"""

PASS = "pass"
FAIL = "fail"


class Certificate:
    """A machine-checkable verdict with replayable evidence."""

    __slots__ = ("claim", "parameters", "evidence", "verdict")

    def __init__(self, claim, parameters, evidence, verdict):
        self.claim = claim
        self.parameters = dict(parameters)
        self.evidence = dict(evidence)
        self.verdict = verdict

    @property
    def passed(self):
        return self.verdict == PASS

    def render(self):
        lines = [f"claim: {self.claim}", "parameters:"]
        lines += [f"  {k}: {v}" for k, v in self.parameters.items()]
        lines.append("evidence:")
        lines += [f"  {k}: {v}" for k, v in self.evidence.items()]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<certificate {self.claim}: {self.verdict}>"


class CertificateFormatError(ValueError):
    pass


def parse_certificate(text):
    """Parse a rendered certificate (tolerates a surrounding report).

    Accepts either a bare certificate or a report containing an indented
    `certificate:` block, so a saved report file can be replayed directly.
    """
    lines = text.splitlines()
    # locate the claim line, dedenting a report's certificate block if needed
    start = indent = None
    for i, line in enumerate(lines):
        stripped = line.lstrip()
        if stripped.startswith("claim: "):
            start, indent = i, len(line) - len(stripped)
            break
    if start is None:
        raise CertificateFormatError("no 'claim:' line found")
    body = []
    for line in lines[start:]:
        if line.strip() == "":
            break
        if line[:indent].strip():
            break
        body.append(line[indent:])

    claim = body[0][len("claim: "):].strip()
    parameters, evidence, verdict = {}, {}, None
    section = None
    for line in body[1:]:
        if line == "parameters:":
            section = parameters
        elif line == "evidence:":
            section = evidence
        elif line.startswith("verdict: "):
            verdict = line[len("verdict: "):].strip()
        elif line.startswith("  ") and section is not None:
            key, sep, value = line[2:].partition(": ")
            if not sep:
                raise CertificateFormatError(f"malformed field line {line!r}")
            section[key] = value
        else:
            raise CertificateFormatError(f"unexpected line {line!r}")
    if verdict not in (PASS, FAIL):
        raise CertificateFormatError(f"missing or bad verdict {verdict!r}")
    return Certificate(claim, parameters, evidence, verdict)


_REPLAYERS = {}


def register_replayer(claim):
    def deco(fn):
        _REPLAYERS[claim] = fn
        return fn
    return deco


def replay(cert):
    """Recompute a certificate from its parameters.

    Returns (fresh_certificate, matches) where matches means the fresh
    rendering is byte-identical to the stored one.
    """
    try:
        builder = _REPLAYERS[cert.claim]
    except KeyError:
        raise CertificateFormatError(
            f"no replayer registered for claim {cert.claim!r}") from None
    fresh = builder(cert.parameters)
    return fresh, fresh.render() == cert.render()
