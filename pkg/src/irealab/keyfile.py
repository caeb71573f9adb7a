"""Key files and survey CSV reports.

A key file is ``key=value`` lines, each ending in a single LF, in a fixed
order. Public files carry ``scheme``, ``exp`` and ``a``; private files carry
``scheme``, ``d`` and ``a``. ``exp`` is e for textbook keys and p = 2e+1
for IREA keys, so the file says which scheme it belongs to.
"""

from __future__ import annotations

import csv
import io
import re
from pathlib import Path
from typing import Union

from .errors import KeyFileError
from .falsifier import SurveyReport, SurveyRow
from .schemes import PrivateKeyRecord, PublicKeyRecord, SchemeId

KeyRecord = Union[PublicKeyRecord, PrivateKeyRecord]

PUBLIC_FIELDS = ("scheme", "exp", "a")
PRIVATE_FIELDS = ("scheme", "d", "a")
CSV_HEADER = ("b", "v", "e", "scheme", "j", "failure_count")

_DECIMAL = re.compile(r"0|[1-9][0-9]*")
_KEY = re.compile(r"[a-z]+")


def format_key(rec: KeyRecord) -> str:
    if isinstance(rec, PublicKeyRecord):
        items = [("scheme", rec.scheme.value), ("exp", rec.exponent_field), ("a", rec.a)]
    else:
        items = [("scheme", rec.scheme.value), ("d", rec.d), ("a", rec.a)]
    return "".join(f"{k}={v}\n" for k, v in items)


def _decimal(key: str, text: str) -> int:
    if not _DECIMAL.fullmatch(text):
        raise KeyFileError(f"{key}: expected a base-10 integer, got {text!r}")
    return int(text)


def parse_key(text: str) -> KeyRecord:
    """Parse a key file, rejecting anything that is not exactly well formed."""
    if not text.endswith("\n"):
        raise KeyFileError("key file must end with a linefeed")
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text[:-1].split("\n"), 1):
        key, sep, value = line.partition("=")
        if not sep or not _KEY.fullmatch(key):
            raise KeyFileError(f"line {lineno}: expected key=value, got {line!r}")
        if key in fields:
            raise KeyFileError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value

    expected = PUBLIC_FIELDS if "exp" in fields else PRIVATE_FIELDS
    unknown = sorted(set(fields) - set(expected))
    if unknown:
        raise KeyFileError(f"unknown key(s): {', '.join(unknown)}")
    missing = [k for k in expected if k not in fields]
    if missing:
        raise KeyFileError(f"missing key(s): {', '.join(missing)}")

    try:
        scheme = SchemeId.parse(fields["scheme"])
    except ValueError as exc:
        raise KeyFileError(str(exc)) from None
    a = _decimal("a", fields["a"])
    if a < 1:
        raise KeyFileError(f"a must be >= 1, got {a}")

    if expected is PUBLIC_FIELDS:
        exp = _decimal("exp", fields["exp"])
        if scheme.is_irea and (exp < 3 or exp % 2 == 0):
            raise KeyFileError(f"IREA public value must be odd and >= 3, got {exp}")
        return PublicKeyRecord(scheme, exp, a)
    d = _decimal("d", fields["d"])
    if not 1 <= d < a + 1:
        raise KeyFileError(f"d={d} outside [1, {a + 1})")
    return PrivateKeyRecord(scheme, d, a)


def write_key(path: str | Path, rec: KeyRecord) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_key(rec))


def read_key(path: str | Path) -> KeyRecord:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise KeyFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise KeyFileError(f"{path}: not an ASCII key file") from None
    return parse_key(text)


def format_survey_csv(report: SurveyReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in report.rows:
        writer.writerow((r.b, r.v, r.e, r.scheme.value, r.j, r.failure_count))
    return buf.getvalue()


def parse_survey_csv(text: str) -> list[SurveyRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        b, v, e, scheme, j, failures = rec
        rows.append(SurveyRow(int(b), int(v), int(e), SchemeId.parse(scheme), int(j), int(failures)))
    return rows
