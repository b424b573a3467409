"""``pongalg`` console entry point.

Exit status is 0 when every requested check passed, 1 when any check
failed and 2 on a usage error.

Usage::

    pongalg dga-axioms --m 4 --k 2 --weight-cap 2
    pongalg homology --algebra pong --m 4 --k 2 --x 1,3 --y 1,3 --w 1,1,1,1 --format pretty
    pongalg mu --m 4 --k 2 --inputs "v1, L2, L3, v4, R3, R2"
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from .shell import build_parser, request_from_args, run, settings_from_args
from .store import ResultCache
from .tikz import render_tikz
from .strands import parse_pong

logger = logging.getLogger(__name__)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")

    try:
        settings = settings_from_args(args)
        request = request_from_args(args)
        cache = ResultCache(settings.cache_path) if request.use_cache else None
        report = run(request, settings, cache)
        if args.tikz_path is not None and request.command == "diagram":
            render_tikz(parse_pong(request.generator), path=args.tikz_path)
    except ValueError as exc:
        print(f"pongalg: error: {exc}", file=sys.stderr)
        return 2

    payload = report.render(request.format)
    if args.out_path is not None:
        _write_text(Path(args.out_path), payload + "\n")
    else:
        print(payload)
    if not report.passed:
        logger.warning("failing checks: %s", ", ".join(report.failing_checks()) or "violations reported")
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
