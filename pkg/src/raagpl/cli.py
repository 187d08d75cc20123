"""Command-line front end.

Exit statuses: 0 ok, 1 usage or parse error, 2 domain error (e.g. the
identity element has no witness), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .certificate import (
    certificate_to_json,
    check_document,
    decomposition_to_json,
    dumps,
    separation_to_json,
)
from .decomp import left_greedy_form
from .errors import DomainError, InputError, VerificationError
from .plmap import format_rational
from .sweep import run_sweep
from .textio import format_word, graph_to_json, parse_input, parse_word_text, word_from_json, word_to_json
from .witness import build_witness, separate_set, verify_witness
from .words import reduce

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class JobSpec:
    command: str
    graph_file: Optional[str] = None
    inline: Optional[str] = None
    words: list = field(default_factory=list)
    certificate: Optional[str] = None
    seed: int = 0
    cases: int = 200
    max_vertices: int = 5
    max_length: int = 8
    output: Optional[str] = None
    format: str = "json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", dest="graph_file", metavar="FILE", help="input file (vertices/graph/word lines)")
    src.add_argument("--inline", metavar="TEXT", help="input text, e.g. 'graph: a-b; word: a b'")
    common.add_argument("--word", dest="words", action="append", default=[], metavar="TEXT")
    common.add_argument("--out", dest="output", metavar="PATH")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = _Parser(prog="raagpl", description="Left-greedy forms and PL witnesses for right-angled Artin groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("reduce", "print the normal form of each word"),
        ("decompose", "print the left-greedy clique word decomposition"),
        ("witness", "build and certify the PL witness for one word"),
        ("separate", "certify a witness for every word"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    v = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    v.add_argument("certificate", metavar="CERT", help="certificate JSON path, or - for stdin")
    s = sub.add_parser("sweep", parents=[common], help="seeded random invariant sweep")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--max-vertices", type=int, default=5)
    s.add_argument("--max-length", type=int, default=8)
    return p


def _load(job: JobSpec):
    if job.graph_file:
        try:
            text = Path(job.graph_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {job.graph_file}: {exc}") from None
    elif job.inline is not None:
        # ';' separates declarations on the command line
        text = job.inline.replace(";", "\n")
    else:
        raise InputError("no graph given (use --graph FILE or --inline TEXT)")
    g, words = parse_input(text)
    words += [parse_word_text(t, set(g.vertices)) for t in job.words]
    return g, words


def _emit(job: JobSpec, payload: str) -> None:
    if job.output:
        Path(job.output).write_text(payload)
    else:
        sys.stdout.write(payload)


def _cert_text(obj: dict) -> str:
    lo, hi = obj["target_interval"]
    lines = [
        f"word: {format_word(word_from_json(obj['word']))}",
        f"k = {obj['k']}",
        "spine: " + ", ".join(f"{p['v']}^{p['sign'] * p['n']}" for p in obj["spine"]),
    ]
    for e in obj["stage_trace"]:
        lines.append(f"  stage {e['stage']}: {e['in']} -> {e['out']}")
    lines.append(f"image of {obj['test_point']} is {obj['image']} in [{lo}, {hi}]")
    return "\n".join(lines) + "\n"


def _run(job: JobSpec) -> int:
    out = sys.stdout
    if job.command == "verify":
        try:
            raw = sys.stdin.read() if job.certificate == "-" else Path(job.certificate).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {job.certificate}: {exc}") from None
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise VerificationError(f"certificate is not valid JSON: {exc}") from None
        images = check_document(obj)
        out.write("OK " + " ".join(format_rational(x) for x in images) + "\n")
        return EXIT_OK

    if job.command == "sweep":
        rep = run_sweep(job.seed, job.cases, job.max_vertices, job.max_length)
        if job.format == "json":
            _emit(job, dumps(rep.to_json()))
        else:
            _emit(job, f"seed {rep.seed}: {rep.passed} passed, {rep.failed} failed, {rep.discarded} discarded\n")
        return EXIT_OK if rep.failed == 0 else EXIT_VERIFY

    g, words = _load(job)
    if job.command == "reduce":
        results = []
        for w in words:
            r = reduce(g, w)
            results.append({"input": word_to_json(w), "reduced": word_to_json(r), "text": format_word(r), "trivial": not r})
        if job.format == "json":
            _emit(job, dumps({"graph": graph_to_json(g), "results": results}))
        else:
            _emit(job, "".join(f"{r['text'] or '1'}\n" for r in results))
        return EXIT_OK

    if job.command == "decompose":
        results = []
        for w in words:
            d = left_greedy_form(g, w)
            results.append({"word": word_to_json(d.word()), **decomposition_to_json(d)})
        if job.format == "json":
            _emit(job, dumps({"graph": graph_to_json(g), "decompositions": results}))
        else:
            lines = []
            for r in results:
                blocks = " | ".join(" ".join(f"{v}^{e}" for v, e in b.items()) for b in r["blocks"])
                lines.append(f"k={len(r['blocks'])}: {blocks or '(empty)'}\n")
            _emit(job, "".join(lines))
        return EXIT_OK

    if job.command == "witness":
        if len(words) != 1:
            raise InputError(f"witness needs exactly one word, got {len(words)}")
        cert = verify_witness(build_witness(g, words[0]))
        obj = certificate_to_json(cert)
        check_document(obj)
        summary = f"image {obj['image']} in [{obj['target_interval'][0]}, {obj['target_interval'][1]}]\n"
        if job.format == "text":
            _emit(job, _cert_text(obj))
        else:
            _emit(job, dumps(obj))
        (out if job.output else sys.stderr).write(summary)
        return EXIT_OK

    if job.command == "separate":
        if not words:
            raise InputError("separate needs at least one word")
        certs = [verify_witness(w) for w in separate_set(g, words)]
        obj = separation_to_json(certs)
        check_document(obj)
        if job.format == "text":
            _emit(job, "".join(_cert_text(c) + "\n" for c in obj["certificates"]))
        else:
            _emit(job, dumps(obj))
        return EXIT_OK

    raise InputError(f"unknown command {job.command!r}")


def run(job: JobSpec) -> int:
    try:
        return _run(job)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(**{k: v for k, v in vars(args).items() if k in JobSpec.__dataclass_fields__})
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
