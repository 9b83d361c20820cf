"""Command-line front end: parse arrangements, run computations, render reports.

Exit codes: 0 success, 1 malformed input, 2 domain error (duplicate
hyperplane, freeness-required, not-a-flat, ...), 64 usage error. JSON
output is canonical: sorted keys, two-space indent, deterministic factor
order, so byte-identical reruns are byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .arrangement import Arrangement, family, make_arrangement
from .bernstein import bernstein_generator, slopes
from .errors import DomainError
from .lattice import char_poly, intersection_lattice
from .structure import (
    ExponentMultiset,
    InductiveChain,
    Outcome,
    RankAtMostTwo,
    exponents,
    freeness,
    irreducible_components,
)

DEFAULT_DEPTH = 10_000

_LATEX_S = "s_{{{}}}"


# ---------------------------------------------------------------------------
# arrangement documents


def parse_document(doc) -> Arrangement:
    """Validate and load an ArrangementDocument (already JSON-decoded).

    Rationals must be strings like "3/2" or integers; floats are rejected
    to keep the arithmetic exact.
    """
    if not isinstance(doc, dict):
        raise ValueError("document must be a JSON object")
    dim = doc.get("ambient_dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError("ambient_dim must be a positive integer")
    raw_forms = doc.get("forms")
    if not isinstance(raw_forms, list):
        raise ValueError("forms must be a list of coefficient lists")
    forms = []
    for row in raw_forms:
        if not isinstance(row, list):
            raise ValueError("each form must be a list of rational strings")
        coeffs = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise ValueError(
                    f"coefficient {x!r} must be a string like '3/2' or an integer")
            coeffs.append(Fraction(x))
        forms.append(coeffs)
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list)
                or not all(isinstance(s, str) for s in labels)):
            raise ValueError("labels must be a list of strings")
    return make_arrangement(dim, forms, labels)


def serialize_document(A: Arrangement) -> dict:
    doc = {
        "ambient_dim": A.ambient_dim,
        "forms": [[str(c) for c in f.coeffs] for f in A.forms],
    }
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    return doc


def _canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _digest(A: Arrangement) -> str:
    blob = _canonical_json(serialize_document(A)).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class ReportDocument:
    command: tuple[str, ...]
    input_digest: str
    result: dict
    version: str

    def to_json(self) -> str:
        return _canonical_json({
            "command": list(self.command),
            "input_digest": self.input_digest,
            "result": self.result,
            "version": self.version,
        })


# ---------------------------------------------------------------------------
# argument parsing


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


SUBCOMMANDS = ("lattice", "charpoly", "decompose", "exponents", "freeness",
               "bideal", "slopes", "family")


def _build_parser() -> _Parser:
    parser = _Parser(prog="bideal", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE",
                         help="JSON ArrangementDocument to load")
        src.add_argument("--family", metavar="NAME:PARAM",
                         help="named family, e.g. braid:3")
        p.add_argument("--format", choices=("text", "json", "latex"),
                       default="text")
        p.add_argument("--assume-free", action="store_true",
                       help="skip the freeness gate for bideal/slopes")
        p.add_argument("--depth", type=int, default=None,
                       help="inductive-search node budget")
    return parser


def _load_arrangement(args) -> Arrangement:
    if args.family is not None:
        name, sep, param = args.family.partition(":")
        if not sep:
            raise ValueError("--family expects NAME:PARAM, e.g. braid:3")
        return family(name, int(param))
    with open(args.input, encoding="utf-8") as fh:
        return parse_document(json.load(fh))


def _depth(args) -> int:
    if args.depth is not None:
        return args.depth
    env = os.environ.get("BIDEAL_DEPTH")
    if env is not None:
        return int(env)
    return DEFAULT_DEPTH


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload, text, latex)


def _fmt_set(J) -> str:
    return "{" + ",".join(str(i) for i in J) + "}"


def _run_lattice(A, args):
    lat = intersection_lattice(A)
    payload = {
        "ambient_dim": lat.ambient_dim,
        "flats": [{"J": list(f.J), "codim": f.codim, "mobius": f.mobius}
                  for f in lat],
    }
    lines = [f"codim {f.codim}  mobius {f.mobius}  J {_fmt_set(f.J)}"
             for f in lat]
    rows = "\\\\\n".join(
        f"{f.codim} & {f.mobius} & $\\{{{','.join(map(str, f.J))}\\}}$"
        for f in lat)
    latex = ("\\begin{tabular}{rrl}\n"
             "codim & $\\mu$ & $J$\\\\\n" + rows + "\n\\end{tabular}")
    return payload, "\n".join(lines), latex


def _run_charpoly(A, args):
    poly = char_poly(A)
    payload = {"coefficients": list(poly.coeffs), "text": str(poly)}
    return payload, str(poly), poly.render("t", "^{{{}}}")


def _run_decompose(A, args):
    dec = irreducible_components(A)
    payload = {"e0": dec.e0, "blocks": [list(b) for b in dec.blocks]}
    text = (f"e0: {dec.e0}\n"
            f"blocks: {' '.join(_fmt_set(b) for b in dec.blocks)}")
    return payload, text, text.replace("\n", " \\\\ ")


def _run_exponents(A, args):
    exps = exponents(A)
    if isinstance(exps, ExponentMultiset):
        payload = {"exponents": list(exps.exponents)}
        text = "exponents: " + ", ".join(str(e) for e in exps.exponents)
        latex = "(" + ", ".join(str(e) for e in exps.exponents) + ")"
        return payload, text, latex
    payload = {"non_integral": {
        "integer_roots": list(exps.integer_roots),
        "remainder": str(exps.remainder),
    }}
    text = (f"non-integral roots: extracted {list(exps.integer_roots)}, "
            f"remainder {exps.remainder}")
    return payload, text, text


def _describe_verdict(verdict):
    if verdict.outcome is Outcome.FREE:
        cert = verdict.certificate
        if isinstance(cert, RankAtMostTwo):
            return ({"outcome": "free",
                     "certificate": {"kind": "rank-at-most-two",
                                     "rank": cert.rank}},
                    "free (rank <= 2)")
        if isinstance(cert, InductiveChain):
            return ({"outcome": "free",
                     "certificate": {"kind": "inductive-chain",
                                     "steps": cert.length,
                                     "exponents": list(cert.exponents)}},
                    f"free (inductive chain, {cert.length} steps)")
        return ({"outcome": "free", "certificate": {"kind": "saito-witness"}},
                "free (derivation basis witness)")
    if verdict.outcome is Outcome.NOT_FREE:
        ev = verdict.evidence
        return ({"outcome": "not_free",
                 "evidence": {"integer_roots": list(ev.integer_roots),
                              "remainder": str(ev.remainder)}},
                "not free: characteristic polynomial has non-integral roots "
                f"(remainder {ev.remainder})")
    return ({"outcome": "unknown"},
            "unknown (no certificate found within the depth limit)")


def _run_freeness(A, args):
    payload, text = _describe_verdict(freeness(A, _depth(args)))
    return payload, text, text


def _verdict_for(A, args):
    if args.assume_free:
        return None, True
    return freeness(A, _depth(args)), False


def _run_bideal(A, args):
    verdict, override = _verdict_for(A, args)
    gen = bernstein_generator(A, verdict, assume_free=override)
    payload = {
        "factors": [{"support": list(f.support), "constant": f.constant}
                    for f in gen.factors],
        "variable_count": gen.variable_count,
        "text": str(gen),
    }
    return payload, str(gen), gen.render(_LATEX_S)


def _run_slopes(A, args):
    verdict, override = _verdict_for(A, args)
    ss = slopes(A, verdict, assume_free=override)
    payload = {"slopes": [list(J) for J in ss]}
    text = "\n".join("+".join(f"s{i}" for i in J) + " = 0" for J in ss)
    latex = ", ".join(
        "+".join(_LATEX_S.format(i) for i in J) + " = 0" for J in ss)
    return payload, text or "(none)", latex or "(none)"


_HANDLERS = {
    "lattice": _run_lattice,
    "charpoly": _run_charpoly,
    "decompose": _run_decompose,
    "exponents": _run_exponents,
    "freeness": _run_freeness,
    "bideal": _run_bideal,
    "slopes": _run_slopes,
}


def _run(args, argv) -> tuple[ReportDocument, str]:
    if args.subcommand == "family":
        if args.family is None:
            raise _UsageError("the family subcommand requires --family")
        A = _load_arrangement(args)
        doc = _canonical_json(serialize_document(A))
        report = ReportDocument(tuple(argv), _digest(A),
                                serialize_document(A), __version__)
        return report, doc
    A = _load_arrangement(args)
    payload, text, latex = _HANDLERS[args.subcommand](A, args)
    report = ReportDocument(tuple(argv), _digest(A), payload, __version__)
    if args.format == "json":
        rendered = report.to_json()
    elif args.format == "latex":
        rendered = latex
    else:
        rendered = text
    return report, rendered


def execute(argv, out=None, err=None) -> int:
    """Run one CLI invocation; the report goes to ``out``, diagnostics to
    ``err``, and the exit status is returned."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = _build_parser().parse_args(argv)
        report, rendered = _run(args, tuple(argv))
    except _UsageError as exc:
        err.write(f"usage: {exc}\n")
        return 64
    except DomainError as exc:
        err.write(f"{exc.slug}: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        err.write(f"malformed input: {exc}\n")
        return 1
    out.write(rendered + "\n")
    return 0


def main() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
