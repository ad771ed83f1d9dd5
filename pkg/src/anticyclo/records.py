"""Ingestion and checking of externally computed class-group records.

One record per line, UTF-8 JSON: keys p (odd prime), n (layer index),
inv (descending list of p-powers giving the group structure), flags (the
five hypothesis booleans), label (free-form tower identifier).  Unknown
keys are ignored with a warning; structural mistakes are parse errors.

Checking is hypothesis-gated: a record is only held against the
non-cyclicity conclusion when n >= 1 and all five flags are asserted.
Per label, layer exponents are fitted for growth invariants and the
parity of the fitted lambda is reported when p does not split.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .iwasawa import fit_invariants
from .padic import is_odd_prime

FLAG_NAMES = (
    "p_nonsplit",
    "cm_field",
    "A_k_nontrivial",
    "A_kplus_trivial",
    "no_p_roots_of_unity",
)


class RecordParseError(ValueError):
    pass


@dataclass
class ClassGroupRecord:
    p: int
    n: int
    invariants: tuple[int, ...]
    flags: dict
    label: str
    line_number: int = 0
    warnings: list = field(default_factory=list)

    def hypotheses_asserted(self) -> bool:
        return all(self.flags.get(name) is True for name in FLAG_NAMES)

    def is_cyclic(self) -> bool:
        # One invariant factor, or none at all (the trivial group is cyclic).
        return len(self.invariants) <= 1

    def size_exponent(self) -> int:
        e = 0
        for q in self.invariants:
            while q % self.p == 0:
                q //= self.p
                e += 1
        return e


def parse_record(line: str, line_number: int = 0) -> ClassGroupRecord:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordParseError(f"line {line_number}: invalid JSON ({exc.msg})") from exc
    if not isinstance(raw, dict):
        raise RecordParseError(f"line {line_number}: record must be a JSON object")
    warnings = []
    known = {"p", "n", "inv", "flags", "label"}
    for key in sorted(set(raw) - known):
        warnings.append(f"line {line_number}: unknown key {key!r} ignored")
    try:
        p = int(raw["p"])
        n = int(raw["n"])
        inv = [int(q) for q in raw["inv"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordParseError(f"line {line_number}: missing or malformed p/n/inv") from exc
    if not is_odd_prime(p):
        raise RecordParseError(f"line {line_number}: p must be an odd prime, got {p}")
    if n < 0:
        raise RecordParseError(f"line {line_number}: layer index must be non-negative")
    for q in inv:
        qq = q
        while qq % p == 0:
            qq //= p
        if qq != 1 or q < p:
            raise RecordParseError(f"line {line_number}: invariant {q} is not a power of {p}")
    if any(inv[i] < inv[i + 1] for i in range(len(inv) - 1)):
        raise RecordParseError(f"line {line_number}: invariants must be descending")
    flags_raw = raw.get("flags", {})
    if not isinstance(flags_raw, dict):
        raise RecordParseError(f"line {line_number}: flags must be an object")
    flags = {}
    for key, value in flags_raw.items():
        if key not in FLAG_NAMES:
            warnings.append(f"line {line_number}: unknown flag {key!r} ignored")
            continue
        if not isinstance(value, bool):
            raise RecordParseError(f"line {line_number}: flag {key!r} must be a boolean")
        flags[key] = value
    label = str(raw.get("label", "unlabeled"))
    return ClassGroupRecord(p, n, tuple(inv), flags, label, line_number, warnings)


def parse_records_file(path) -> list[ClassGroupRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            if line.strip():
                records.append(parse_record(line, i))
    return records


def check_records(records) -> tuple[list[dict], bool]:
    """Per-record and per-label verdicts; second value is True when any
    verdict is a contradiction."""
    checks = []
    contradiction = False
    for rec in sorted(records, key=lambda r: (r.label, r.n, r.line_number)):
        base = {
            "kind": "record",
            "label": rec.label,
            "p": rec.p,
            "n": rec.n,
            "inv": list(rec.invariants),
        }
        if rec.n == 0:
            checks.append(base | {"verdict": "ok", "reason": "layer 0 carries no non-cyclicity claim"})
        elif not rec.hypotheses_asserted():
            checks.append(base | {"verdict": "skipped", "reason": "hypotheses not asserted"})
        elif rec.is_cyclic():
            contradiction = True
            checks.append(
                base
                | {
                    "verdict": "contradiction",
                    "reason": f"cyclic structure {list(rec.invariants)} at layer {rec.n} "
                    "with all hypotheses asserted",
                }
            )
        else:
            checks.append(base | {"verdict": "ok", "reason": "not cyclic, as predicted"})

    by_label: dict[str, list[ClassGroupRecord]] = {}
    for rec in records:
        by_label.setdefault(rec.label, []).append(rec)
    for label in sorted(by_label):
        group = by_label[label]
        base = {"kind": "growth", "label": label}
        layers = {}
        clash = False
        for rec in group:
            if rec.n in layers and layers[rec.n] != rec.size_exponent():
                clash = True
            layers[rec.n] = rec.size_exponent()
        if clash:
            contradiction = True
            checks.append(base | {"verdict": "contradiction", "reason": "conflicting sizes for one layer"})
            continue
        max_n = max(layers)
        if set(layers) != set(range(max_n + 1)) or max_n < 3:
            checks.append(
                base | {"verdict": "skipped", "reason": "need layers 0..n with n >= 3 to fit growth"}
            )
            continue
        exponents = [layers[n] for n in range(max_n + 1)]
        try:
            fit = fit_invariants(exponents, group[0].p)
        except ValueError as exc:
            checks.append(base | {"verdict": "skipped", "reason": f"growth fit failed: {exc}"})
            continue
        info = base | {
            "lambda": fit.lam,
            "mu": fit.mu,
            "nu": fit.nu,
            "stable_from": fit.stable_from,
        }
        nonsplit = all(rec.flags.get("p_nonsplit") is True for rec in group)
        if nonsplit and fit.lam % 2 == 1:
            contradiction = True
            checks.append(
                info
                | {
                    "verdict": "contradiction",
                    "reason": f"fitted lambda = {fit.lam} is odd although p is non-split "
                    "(lambda must be even)",
                }
            )
        elif nonsplit:
            checks.append(info | {"verdict": "ok", "reason": f"lambda = {fit.lam} is even, parity holds"})
        else:
            checks.append(info | {"verdict": "ok", "reason": "growth fitted; parity not applicable"})
    return checks, contradiction
