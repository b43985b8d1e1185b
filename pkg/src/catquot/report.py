"""Structured, machine-parsable check reports.

A report is an ordered list of key=value lines plus an overall verdict.
Line order is deterministic (insertion order), values are rendered with
repr-free plain formatting so goldens stay diffable.
"""


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


class Report:
    def __init__(self, name):
        self.name = name
        self.entries = []
        self.failures = []

    def add(self, key, value):
        self.entries.append((key, _fmt(value)))

    def fail(self, clause, witness=""):
        self.failures.append((clause, _fmt(witness)))

    @property
    def ok(self):
        return not self.failures

    def render(self):
        lines = [f"check={self.name}"]
        for key, value in self.entries:
            lines.append(f"{key}={value}")
        for clause, witness in self.failures:
            line = f"fail={clause}"
            if witness:
                line += f" witness={witness}"
            lines.append(line)
        lines.append(f"verdict={'pass' if self.ok else 'fail'}")
        return lines

    def __str__(self):
        return "\n".join(self.render())


class Verdict:
    """Outcome of a universal-property check.

    `probe_verified` is set when the ambient category is intensional and
    the check quantified only over the declared probe objects; such a
    verdict records the probe set it used and makes no claim beyond it.
    """

    def __init__(self, holds, witness=None, probe_verified=False, probes=()):
        self.holds = holds
        self.witness = witness
        self.probe_verified = probe_verified
        self.probes = tuple(str(p) for p in probes)

    def __bool__(self):
        return self.holds

    def __repr__(self):
        tag = " probe-verified" if self.probe_verified else ""
        return f"Verdict({self.holds}{tag}, witness={self.witness!r})"
