"""Command-line front end: protect, assess, corpus, serve, or interactive.

Exit codes: 0 clean or successful protect, 1 tampering detected,
2 unprotected input, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .assess import Verdict, assess_file
from .errors import PdfSealError
from .protect import protect_file
from .tamperlab import emit_corpus

EXIT_OK = 0
EXIT_TAMPERED = 1
EXIT_UNPROTECTED = 2
EXIT_ERROR = 3

_VERDICT_EXIT = {
    Verdict.CLEAN: EXIT_OK,
    Verdict.TAMPERED: EXIT_TAMPERED,
    Verdict.UNPROTECTED: EXIT_UNPROTECTED,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdfseal",
        description=(
            "Protect PDF documents with embedded page and document hashes, "
            "and assess protected documents for tampering."
        ),
    )
    sub = parser.add_subparsers(dest="command")

    p_protect = sub.add_parser("protect", help="embed hashes into a copy of a PDF")
    p_protect.add_argument("input", help="path to the PDF to protect")
    p_protect.add_argument("--out", help="output path (default: <stem>_hash.pdf)")

    p_assess = sub.add_parser("assess", help="check a protected PDF for tampering")
    p_assess.add_argument("input", help="path to the PDF to assess")
    p_assess.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_assess.add_argument(
        "--verbose", action="store_true", help="dump stored and computed hashes"
    )

    p_corpus = sub.add_parser("corpus", help="write the synthetic test corpus")
    p_corpus.add_argument("directory", help="directory to fill with corpus PDFs")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def run_protect(path: str, out: str | None) -> int:
    print(f"Protecting: {path}")
    try:
        outcome = protect_file(path, out)
    except (PdfSealError, OSError) as exc:
        print(f"There was an error protecting the PDF: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"PDF Protected successfully, and saved to {outcome.output_path}")
    print("Process Completed")
    return EXIT_OK


def run_assess(path: str, as_json: bool = False, verbose: bool = False) -> int:
    if not as_json:
        print(f"Assessing: {path}")
    try:
        report = assess_file(path)
    except (PdfSealError, OSError) as exc:
        print(f"There was an error assessing the PDF: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if as_json:
        print(json.dumps(report.as_dict()))
    else:
        for line in report.messages:
            print(line)
        if verbose and report.stored_root_hashes is not None:
            print("Hashes used to make comparison:")
            print(f"Stored Root Hashes: {report.stored_root_hashes.as_dict()}")
            print(f"Computed Root Hashes: {report.computed_root_hashes.as_dict()}")
            stored = [p.as_dict() for p in report.stored_page_hashes or []]
            computed = [p.as_dict() for p in report.computed_page_hashes or []]
            print(f"Stored Page Hashes: {stored}")
            print(f"Computed Page Hashes: {computed}")
        if report.verdict is Verdict.UNPROTECTED:
            print("Process Completed")
    return _VERDICT_EXIT[report.verdict]


def run_corpus(directory: str) -> int:
    try:
        written = emit_corpus(directory)
    except (PdfSealError, OSError) as exc:
        print(f"There was an error writing the corpus: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for path in written:
        print(f"Wrote {path}")
    return EXIT_OK


def run_serve(host: str, port: int) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)
    return EXIT_OK


def run_interactive() -> int:
    try:
        answer = input("Would you like to protect a PDF? (y/n): ")
        if answer.strip().lower().startswith("y"):
            path = input("Enter the path to the PDF you would like to protect: ").strip()
            return run_protect(path, None)
        answer = input("Would you like to assess a PDF for tampering? (y/n): ")
        if answer.strip().lower().startswith("y"):
            path = input("Enter the path to the PDF you would like to assess: ").strip()
            return run_assess(path)
        return EXIT_OK
    except EOFError:
        return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "protect":
        return run_protect(args.input, args.out)
    if args.command == "assess":
        return run_assess(args.input, as_json=args.json, verbose=args.verbose)
    if args.command == "corpus":
        return run_corpus(args.directory)
    if args.command == "serve":
        return run_serve(args.host, args.port)
    return run_interactive()


if __name__ == "__main__":
    sys.exit(main())
