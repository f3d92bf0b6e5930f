"""Batch ingestion of twist observations, command dispatch, and report emission.

Input records are JSON, one object per line:

    {"label": "768b", "p": 2, "val_n": 8, "sign_f": 1, "odd_part": 3,
     "twists": [{"tag": -1, "sign_twist": 1, "val_twist": 8},
                {"tag": 2, "sign_twist": -1, "val_twist": 8},
                {"tag": -2, "sign_twist": -1, "val_twist": 8}],
     "discrete_series_hint": true}

For an odd prime p there is exactly one twist entry with tag "pstar"; for
p = 2 exactly the three tags -1, 2, -2.  `odd_part` is the prime-to-p part
N' of the level; callers that cannot express N' as a rational integer (the
Hilbert case) supply a precomputed sign `chi_of_odd_part` instead (odd p
only, where a single twisting character is in play).

Reports mirror the input line plus `type`, `evidence` and `status` fields.
Exit codes: 0 all records classified (or all oracle checks pass), 1 at least
one consistency/verification failure, 2 parse or usage error.

Residue symbol tables are JSON lines as well: a header object
{"field": ..., "units": [...]} followed by {"prime": q, "signs": [...]}
rows.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .arith import is_prime, kronecker, odd_primes_up_to
from .characters import global_quad_char, primitive_chars, two_char
from . import epsilon
from .classify import (
    ConsistencyError,
    OddTwistObservation,
    TwoTwistObservation,
    TWIST_TAGS,
    _classify_odd_ex,
    _classify_two_ex,
    allowed_types_odd,
    allowed_types_two,
    normalized_ratio,
)
from .hilbert import (
    RealQuadField,
    ResidueSymbolTable,
    chi_on_unit,
    find_auxiliary_prime,
    match_signature,
    needs_auxiliary,
)
from .kernels import BACKEND


class RecordError(ValueError):
    """A positioned parse/validation error for record streams."""

    def __init__(self, line: int, field_name: str, message: str):
        super().__init__(f"line {line}, field '{field_name}': {message}")
        self.line = line
        self.field_name = field_name


PSTAR_TAG = "pstar"


@dataclass(frozen=True)
class TwistEntry:
    tag: int | str
    sign_twist: int
    val_twist: int


@dataclass(frozen=True)
class ObservationRecord:
    label: str
    p: int
    val_n: int
    sign_f: int
    twists: tuple[TwistEntry, ...]
    odd_part: int | None = None
    chi_of_odd_part: int | None = None
    discrete_series_hint: bool | None = None

    def to_json_dict(self) -> dict:
        out: dict = {
            "label": self.label,
            "p": self.p,
            "val_n": self.val_n,
            "sign_f": self.sign_f,
        }
        if self.odd_part is not None:
            out["odd_part"] = self.odd_part
        if self.chi_of_odd_part is not None:
            out["chi_of_odd_part"] = self.chi_of_odd_part
        out["twists"] = [
            {"tag": t.tag, "sign_twist": t.sign_twist, "val_twist": t.val_twist}
            for t in self.twists
        ]
        if self.discrete_series_hint is not None:
            out["discrete_series_hint"] = self.discrete_series_hint
        return out


def _require(data: dict, name: str, line: int):
    if name not in data:
        raise RecordError(line, name, "missing required field")
    return data[name]


def _expect_sign(value, name: str, line: int) -> int:
    if value not in (-1, 1):
        raise RecordError(line, name, f"expected +1 or -1, got {value!r}")
    return value


def _expect_nonneg(value, name: str, line: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise RecordError(line, name, f"expected a nonnegative integer, got {value!r}")
    return value


def _parse_record(data: dict, line: int) -> ObservationRecord:
    if not isinstance(data, dict):
        raise RecordError(line, "-", "each line must be a JSON object")
    label = _require(data, "label", line)
    if not isinstance(label, str) or not label:
        raise RecordError(line, "label", "must be a nonempty string")
    p = _require(data, "p", line)
    if not isinstance(p, int) or not is_prime(p):
        raise RecordError(line, "p", f"must be prime, got {p!r}")
    val_n = _expect_nonneg(_require(data, "val_n", line), "val_n", line)
    sign_f = _expect_sign(_require(data, "sign_f", line), "sign_f", line)

    odd_part = data.get("odd_part")
    chi_sign = data.get("chi_of_odd_part")
    if (odd_part is None) == (chi_sign is None):
        raise RecordError(
            line, "odd_part", "exactly one of odd_part / chi_of_odd_part is required"
        )
    if odd_part is not None:
        if not isinstance(odd_part, int) or odd_part < 1:
            raise RecordError(line, "odd_part", "must be a positive integer")
        if odd_part % p == 0:
            raise RecordError(line, "odd_part", f"must be coprime to p = {p}")
    if chi_sign is not None:
        _expect_sign(chi_sign, "chi_of_odd_part", line)
        if p == 2:
            raise RecordError(
                line,
                "chi_of_odd_part",
                "p = 2 has three twisting characters; supply odd_part instead",
            )

    raw_twists = _require(data, "twists", line)
    if not isinstance(raw_twists, list):
        raise RecordError(line, "twists", "must be a list")
    twists = []
    for entry in raw_twists:
        if not isinstance(entry, dict):
            raise RecordError(line, "twists", "entries must be objects")
        tag = _require(entry, "tag", line)
        sign_twist = _expect_sign(_require(entry, "sign_twist", line), "sign_twist", line)
        val_twist = _expect_nonneg(_require(entry, "val_twist", line), "val_twist", line)
        twists.append(TwistEntry(tag, sign_twist, val_twist))

    if p == 2:
        tags = [t.tag for t in twists]
        if sorted(tags, key=str) != sorted(TWIST_TAGS, key=str):
            raise RecordError(
                line, "twists", f"p = 2 requires exactly the three tags {TWIST_TAGS}, got {tags}"
            )
    else:
        if len(twists) != 1 or twists[0].tag != PSTAR_TAG:
            raise RecordError(
                line, "twists", f"odd p requires exactly one twist entry with tag '{PSTAR_TAG}'"
            )

    hint = data.get("discrete_series_hint")
    if hint is not None and not isinstance(hint, bool):
        raise RecordError(line, "discrete_series_hint", "must be a boolean")

    known = {
        "label", "p", "val_n", "sign_f", "odd_part", "chi_of_odd_part",
        "twists", "discrete_series_hint",
    }
    for key in data:
        if key not in known:
            raise RecordError(line, key, "unknown field")

    return ObservationRecord(
        label=label,
        p=p,
        val_n=val_n,
        sign_f=sign_f,
        twists=tuple(twists),
        odd_part=odd_part,
        chi_of_odd_part=chi_sign,
        discrete_series_hint=hint,
    )


def parse_records(text: str) -> list[ObservationRecord]:
    """Parse a line-delimited JSON stream of observation records."""
    records = []
    labels = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordError(line_no, "-", f"invalid JSON: {exc}") from exc
        record = _parse_record(data, line_no)
        if record.label in labels:
            raise RecordError(line_no, "label", f"duplicate label '{record.label}'")
        labels.add(record.label)
        records.append(record)
    return records


def serialize_records(records: list[ObservationRecord]) -> str:
    return "\n".join(json.dumps(r.to_json_dict()) for r in records) + ("\n" if records else "")


# ---------------------------------------------------------------------------
# Classification dispatch


@dataclass
class ClassificationReport:
    record: ObservationRecord
    types: list[str] = field(default_factory=list)
    evidence: list[str] = field(default_factory=list)
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json_dict(self) -> dict:
        out = self.record.to_json_dict()
        out["type"] = self.types[0] if len(self.types) == 1 else self.types
        out["evidence"] = self.evidence
        out["status"] = self.status
        return out


def _chi_signs(record: ObservationRecord) -> dict[int | str, int]:
    """chi(N') per twist tag, from odd_part or the precomputed sign."""
    if record.p != 2:
        if record.chi_of_odd_part is not None:
            return {PSTAR_TAG: record.chi_of_odd_part}
        return {PSTAR_TAG: global_quad_char(record.p).value(record.odd_part)}
    assert record.odd_part is not None
    signs = {}
    for tag in TWIST_TAGS:
        value = two_char(tag)(record.odd_part)
        signs[tag] = value.as_sign()
    return signs


def classify_record(record: ObservationRecord) -> ClassificationReport:
    report = ClassificationReport(record)
    chi = _chi_signs(record)
    try:
        if record.p != 2:
            entry = record.twists[0]
            obs = OddTwistObservation(
                p=record.p,
                val_n=record.val_n,
                val_twist=entry.val_twist,
                ratio=normalized_ratio(record.sign_f, entry.sign_twist, chi[PSTAR_TAG]),
            )
            local_type, evidence = _classify_odd_ex(obs)
            report.types = [local_type.value]
        else:
            by_tag = {t.tag: t for t in record.twists}
            obs = TwoTwistObservation(
                val_n=record.val_n,
                ratios=tuple(
                    normalized_ratio(record.sign_f, by_tag[tag].sign_twist, chi[tag])
                    for tag in TWIST_TAGS
                ),
                val_twists=tuple(by_tag[tag].val_twist for tag in TWIST_TAGS),
                discrete_series_hint=record.discrete_series_hint,
            )
            types, evidence = _classify_two_ex(obs)
            report.types = sorted(t.value for t in types)
        report.evidence = evidence
    except ConsistencyError as exc:
        report.status = f"inconsistent: {exc}"
    return report


def run_classify(records: list[ObservationRecord]) -> list[ClassificationReport]:
    """One report per record, in input order; consistency errors are per-record."""
    return [classify_record(r) for r in records]


def reports_to_json(reports: list[ClassificationReport]) -> str:
    return "\n".join(json.dumps(r.to_json_dict()) for r in reports) + ("\n" if reports else "")


def reports_to_csv(reports: list[ClassificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["label", "p", "val_n", "type", "status", "evidence"])
    for r in reports:
        writer.writerow(
            [
                r.record.label,
                r.record.p,
                r.record.val_n,
                "+".join(r.types),
                r.status,
                "; ".join(r.evidence),
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Oracle dispatch


@dataclass
class OracleRecord:
    case: str
    p: int
    label: str
    computed: str
    reference: str
    ok: bool

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{self.case} p={self.p} {self.label}: computed {self.computed}, expected {self.reference} [{status}]"


ORACLE_CASES = ("gauss", "ps", "sc-unram", "sc-ram")


def run_oracle(
    case: str,
    p_max: int,
    weight: int = 2,
    modulus_max: int = 350,
    c: int = 1,
    chars_per_prime: int = 3,
) -> list[OracleRecord]:
    """Verification records for one oracle case over all odd primes <= p_max."""
    if case not in ORACLE_CASES:
        raise ValueError(f"case must be one of {ORACLE_CASES}")
    if p_max > 50 or modulus_max > 2000:
        raise ValueError("sweep bounds beyond desk scale")
    records = []
    for p in odd_primes_up_to(p_max):
        if case == "gauss":
            records.extend(_oracle_gauss(p, modulus_max, c))
        elif case == "ps":
            records.extend(_oracle_ps(p, weight, c, chars_per_prime))
        elif case == "sc-unram":
            records.extend(_oracle_sc_unram(p))
        else:
            records.extend(_oracle_sc_ram(p))
    return records


def _oracle_gauss(p: int, modulus_max: int, c: int) -> list[OracleRecord]:
    out = []
    a = 1
    while p**a <= modulus_max:
        m = p**a
        for chi in primitive_chars(p, a):
            g = epsilon.gauss_sum(chi, c)
            g_conj = epsilon.gauss_sum(chi.inverse(), c)
            chi_m1 = complex(chi(m - 1))
            mod_ok = abs(abs(g) ** 2 - m) <= 1e-6 * m
            prod_ok = abs(g * g_conj - chi_m1 * m) <= 1e-6 * m
            t = chi.images[0].numerator
            out.append(
                OracleRecord(
                    "gauss",
                    p,
                    f"a={a} chi[{t}/{chi.images[0].order}]",
                    f"|G|^2={abs(g)**2:.6f}, G*Gbar={g * g_conj:.6f}",
                    f"{m}, {chi_m1.real:+.0f}*{m}",
                    mod_ok and prod_ok,
                )
            )
        a += 1
    return out


def _ps_test_characters(p: int, count: int):
    chars = []
    for a in (1, 2):
        if p**a > 2000:
            break
        for chi in primitive_chars(p, a):
            if chi.order() == 2:
                continue  # the quadratic character itself twists to the trivial one
            chars.append(chi)
            if len(chars) >= count:
                return chars
    return chars


def _oracle_ps(p: int, weight: int, c: int, count: int) -> list[OracleRecord]:
    out = []
    expected = kronecker(-1, p)
    for chi in _ps_test_characters(p, count):
        ratio = epsilon.ps_twist_ratio(chi, p, weight, c)
        t = chi.images[0]
        out.append(
            OracleRecord(
                "ps",
                p,
                f"mod {chi.modulus} chi[{t.numerator}/{t.order}] k={weight}",
                f"{ratio:+d}",
                f"(-1|{p}) = {expected:+d}",
                ratio == expected,
            )
        )
    return out


def _oracle_sc_unram(p: int) -> list[OracleRecord]:
    out = []
    expected = -kronecker(-1, p)
    for j in epsilon.admissible_indices(p):
        ratio = epsilon.sc_unram_twist_ratio(p, j)
        out.append(
            OracleRecord(
                "sc-unram",
                p,
                f"kappa index {j}",
                f"{ratio:+d}",
                f"-(-1|{p}) = {expected:+d}",
                ratio == expected,
            )
        )
    return out


def _oracle_sc_ram(p: int) -> list[OracleRecord]:
    out = []
    squares = {x * x % p for x in range(1, p)}
    for delta in range(1, p):
        image = epsilon.ramified_norm_image(p, delta)
        # Euler criterion as an independent route to the symbol
        euler = 1 if pow(-delta % p, (p - 1) // 2, p) == 1 else -1
        r1 = epsilon.sc_ram_twist_ratio(p, delta, 1)
        r2 = epsilon.sc_ram_twist_ratio(p, delta, 2)
        ok = image == squares and r1 == 1 and r2 == euler
        out.append(
            OracleRecord(
                "sc-ram",
                p,
                f"delta={delta}",
                f"norm image squares: {image == squares}, ratios ({r1:+d}, {r2:+d})",
                f"(True, (+1, {euler:+d}))",
                ok,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Auxiliary-prime dispatch


def read_symbol_table(text: str) -> ResidueSymbolTable:
    """Parse a residue symbol table: a JSON header line then one row per prime."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise RecordError(1, "-", "empty table file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise RecordError(1, "-", f"invalid JSON: {exc}") from exc
    if not isinstance(header, dict) or "units" not in header or "field" not in header:
        raise RecordError(1, "field/units", "header must carry 'field' and 'units'")
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordError(line_no, "-", f"invalid JSON: {exc}") from exc
        if "prime" not in data or "signs" not in data:
            raise RecordError(line_no, "prime/signs", "row must carry 'prime' and 'signs'")
        rows.append((data["prime"], tuple(data["signs"])))
    try:
        return ResidueSymbolTable(header["field"], tuple(header["units"]), tuple(rows))
    except ValueError as exc:
        raise RecordError(1, "signs", str(exc)) from exc


def run_aux_prime(
    d: int | None = None,
    table: ResidueSymbolTable | None = None,
    target_prime: int | None = None,
    bound: int = 100,
    root: int | None = None,
) -> str:
    """Resolve the auxiliary-prime question for a field or a symbol table."""
    if target_prime is None or not is_prime(target_prime):
        raise ValueError("a prime --target-prime is required")
    if (d is None) == (table is None):
        raise ValueError("exactly one of d / table must be given")
    if d is not None:
        fld = RealQuadField(d)
        basis = fld.unit_basis()
        sig = tuple(chi_on_unit(fld, target_prime, u, root) for u in basis)
        if not needs_auxiliary(sig):
            return f"not needed: signature {sig} already trivial on totally positive units"
        q = find_auxiliary_prime(fld, sig, avoid={target_prime}, bound=bound)
    else:
        sig = table.signature(target_prime)
        if not needs_auxiliary(sig):
            return f"not needed: signature {sig} already trivial on totally positive units"
        q = match_signature(table, sig, avoid={target_prime}, bound=bound)
    if q is None:
        return f"none within bound {bound}"
    return f"auxiliary prime: {q} (signature {sig})"


# ---------------------------------------------------------------------------
# Command line


def _cmd_classify(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    try:
        records = parse_records(text)
    except RecordError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    reports = run_classify(records)
    if args.format == "csv":
        sys.stdout.write(reports_to_csv(reports))
    else:
        sys.stdout.write(reports_to_json(reports))
    return 0 if all(r.ok for r in reports) else 1


def _cmd_oracle(args) -> int:
    records = run_oracle(
        args.case, args.p_max, weight=args.weight, modulus_max=args.modulus_max, c=args.c
    )
    for record in records:
        print(record.line())
    failures = sum(not r.ok for r in records)
    print(f"{args.case}: {len(records)} checks, {len(records) - failures} pass, {failures} fail")
    return 1 if failures else 0


def _cmd_aux_prime(args) -> int:
    table = None
    if args.table is not None:
        with open(args.table, encoding="utf-8") as fh:
            try:
                table = read_symbol_table(fh.read())
            except RecordError as exc:
                print(f"parse error: {exc}", file=sys.stderr)
                return 2
    try:
        message = run_aux_prime(
            d=args.d, table=table, target_prime=args.target_prime, bound=args.bound, root=args.root
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(message)
    return 0


def _cmd_tables(args) -> int:
    if args.p == 2:
        types = allowed_types_two(args.val)
    else:
        if not is_prime(args.p):
            print(f"error: {args.p} is not prime", file=sys.stderr)
            return 2
        types = allowed_types_odd(args.p, args.val)
    print(f"p={args.p} val={args.val}: " + ", ".join(sorted(t.value for t in types)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localtype",
        description="Classify local types from quadratic-twist observations "
        f"(sum kernel backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cp = sub.add_parser("classify", help="classify a stream of observation records")
    cp.add_argument("--input", required=True, help="record file, or - for stdin")
    cp.add_argument("--format", choices=("json", "csv"), default="json")
    cp.set_defaults(func=_cmd_classify)

    op = sub.add_parser("oracle", help="run one family of sum verifications")
    op.add_argument("--case", required=True, choices=ORACLE_CASES)
    op.add_argument("--p-max", type=int, required=True)
    op.add_argument("--weight", type=int, default=2)
    op.add_argument("--modulus-max", type=int, default=350)
    op.add_argument("--c", type=int, default=1, help="unit scaling of the additive character")
    op.set_defaults(func=_cmd_oracle)

    ap = sub.add_parser("aux-prime", help="auxiliary-prime search for a quadratic character")
    group = ap.add_mutually_exclusive_group(required=True)
    group.add_argument("--d", type=int, help="squarefree d of the real quadratic field")
    group.add_argument("--table", help="residue symbol table file")
    ap.add_argument("--target-prime", type=int, required=True)
    ap.add_argument("--bound", type=int, default=100)
    ap.add_argument("--root", type=int, default=None,
                    help="root of x^2 = d pinning the prime ideal (quadratic path only)")
    ap.set_defaults(func=_cmd_aux_prime)

    tp = sub.add_parser("tables", help="print the allowed types for a level valuation")
    tp.add_argument("--p", type=int, required=True)
    tp.add_argument("--val", type=int, required=True)
    tp.set_defaults(func=_cmd_tables)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize other codes
        return int(exc.code) if exc.code else 0
    return args.func(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
