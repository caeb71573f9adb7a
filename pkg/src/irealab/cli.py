"""Command-line front end.

Exit codes: 0 success, 1 operational error (bad input, bad key file,
infeasible range), 2 a round trip was shown to fail.
"""

from __future__ import annotations

import argparse
import io
import sys
from typing import Sequence

from . import falsifier, keyfile
from .errors import IreaLabError
from .schemes import (
    PrivateKeyRecord,
    PublicKeyRecord,
    SchemeId,
    decrypt,
    encrypt,
    keygen,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSIFIED = 2

MAX_WITNESSES = 10

# (title, scheme, e, paper values for p, d, E, D) with b=5, v=11, M=4.
PAPER_TABLES = (
    ("Table 1: IREA example as published (e=13)", SchemeId.IREA_PUBLISHED, 13, (27, 17, 9, 4)),
    ("Table 2: published IREA with e=7", SchemeId.IREA_PUBLISHED, 7, (15, 8, 49, 26)),
    ("Table 3: corrected IREA with e=7", SchemeId.IREA_CORRECTED, 7, (15, 23, 49, 4)),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit 2, which is reserved for falsification.
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _natural(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a nonnegative base-10 integer, got {text!r}")
    return int(text)


def _scheme(text: str) -> SchemeId:
    try:
        return SchemeId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _summary(kp) -> str:
    return (
        f"scheme={kp.scheme.value} b={kp.b} v={kp.v} j={kp.j} phi={kp.phi} "
        f"a={kp.a} e={kp.e} p={kp.p} d={kp.d}\n"
    )


def cmd_keygen(args, out) -> int:
    kp = keygen(args.scheme, args.b, args.v, args.e)
    keyfile.write_key(args.pub, kp.public())
    keyfile.write_key(args.priv, kp.private())
    out.write(_summary(kp))
    return EXIT_OK


def _load(path, kind):
    rec = keyfile.read_key(path)
    if not isinstance(rec, kind):
        want = "public" if kind is PublicKeyRecord else "private"
        raise IreaLabError(f"{path}: expected a {want} key file")
    return rec


def cmd_encrypt(args, out) -> int:
    out.write(f"{encrypt(_load(args.key, PublicKeyRecord), args.value)}\n")
    return EXIT_OK


def cmd_decrypt(args, out) -> int:
    out.write(f"{decrypt(_load(args.key, PrivateKeyRecord), args.value)}\n")
    return EXIT_OK


def cmd_roundtrip(args, out) -> int:
    kp = keygen(args.scheme, args.b, args.v, args.e)
    if args.message is not None:
        rec = falsifier.round_trip(kp, args.message)
        out.write(f"{rec.M} {rec.E} {rec.D} {'OK' if rec.ok else 'FAIL'}\n")
        return EXIT_OK if rec.ok else EXIT_FALSIFIED
    verdict = falsifier.exhaustive_verdict(kp, bound=args.bound)
    out.write(f"{len(verdict.failures)} failures / {verdict.total_messages}\n")
    for rec in verdict.failures[:MAX_WITNESSES]:
        out.write(f"{rec.M} {rec.E} {rec.D} FAIL\n")
    return EXIT_OK if verdict.universally_correct else EXIT_FALSIFIED


def cmd_survey(args, out) -> int:
    if args.min > args.max:
        raise IreaLabError(f"--min {args.min} is greater than --max {args.max}")
    report = falsifier.survey(args.min, args.max, args.scheme, bound=args.bound)
    if not report.rows:
        raise IreaLabError(
            f"no prime pair in [{args.min}, {args.max}] admits an exponent under {args.scheme.value}"
        )
    text = keyfile.format_survey_csv(report)
    if args.csv:
        with open(args.csv, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.figure:
        from .plotting import plot_survey

        plot_survey(report, args.figure)
    return EXIT_OK


def render_tables() -> str:
    """Recompute the three worked examples and print them with their paper values."""
    b, v, M = 5, 11, 4
    lines = []
    for title, scheme, e, expected in PAPER_TABLES:
        kp = keygen(scheme, b, v, e)
        rec = falsifier.round_trip(kp, M)
        got = (kp.p, kp.d, rec.E, rec.D)
        verdict = "MATCH" if rec.ok else "MISMATCH(D≠M)"
        lines += [
            title,
            f"  scheme={scheme.value} b={b} v={v} j={kp.j} phi={kp.phi} a={kp.a} e={e} M={M}",
            f"  public={{p,a}}={{{kp.p},{kp.a}}} private={{d,a}}={{{kp.d},{kp.a}}}",
            f"  p={kp.p} d={kp.d} E={rec.E} D={rec.D} {verdict}",
            f"  paper values {'reproduced' if got == expected else 'NOT reproduced'}",
            "",
        ]
    return "\n".join(lines)


def cmd_tables(args, out) -> int:
    out.write(render_tables())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="irealab", description="RSA / IREA correctness laboratory")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def key_params(p):
        p.add_argument("--scheme", type=_scheme, required=True,
                       help="textbook, irea-published or irea-corrected")
        p.add_argument("--b", type=_natural, required=True, help="first prime")
        p.add_argument("--v", type=_natural, required=True, help="second prime")
        p.add_argument("--e", type=_natural, required=True, help="base exponent")

    p = sub.add_parser("keygen", help="generate a key pair and write both key files")
    key_params(p)
    p.add_argument("--pub", default="key.pub", help="public key output (default: key.pub)")
    p.add_argument("--priv", default="key.priv", help="private key output (default: key.priv)")
    p.set_defaults(func=cmd_keygen)

    for name, func, what in (("encrypt", cmd_encrypt, "public"), ("decrypt", cmd_decrypt, "private")):
        p = sub.add_parser(name, help=f"{name} one integer with a {what} key file")
        p.add_argument("--key", required=True, help=f"{what} key file")
        p.add_argument("value", type=_natural)
        p.set_defaults(func=func)

    p = sub.add_parser("roundtrip", help="encrypt then decrypt; exit 2 if any message is lost")
    key_params(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--message", type=_natural, help="check a single message")
    group.add_argument("--all", action="store_true", help="check every message in [0, j)")
    p.add_argument("--bound", type=_natural, default=falsifier.DEFAULT_EXHAUSTION_BOUND,
                   help="largest modulus --all will exhaust")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("survey", help="failure counts over prime pairs and exponents, as CSV")
    p.add_argument("--min", type=_natural, required=True, help="smallest prime considered")
    p.add_argument("--max", type=_natural, required=True, help="largest prime considered")
    p.add_argument("--scheme", type=_scheme, required=True)
    p.add_argument("--csv", help="write the CSV here instead of standard output")
    p.add_argument("--figure", help="also render a heatmap PNG to this path")
    p.add_argument("--bound", type=_natural, default=falsifier.DEFAULT_EXHAUSTION_BOUND,
                   help="largest modulus to exhaust")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("tables", help="reproduce the three worked examples")
    p.set_defaults(func=cmd_tables)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Run one command; output is buffered and written once at the end."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    out = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args, out)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_ERROR
    except (IreaLabError, OSError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    _write(stdout, out.getvalue())
    return status


def _write(stream, text: str) -> None:
    buffer = getattr(stream, "buffer", None)
    if buffer is not None:
        # Always UTF-8, whatever the locale says.
        stream.flush()
        buffer.write(text.encode("utf-8"))
        buffer.flush()
    else:
        stream.write(text)


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
