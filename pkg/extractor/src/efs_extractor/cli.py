"""Command-line entry point: efs-extract."""

from __future__ import annotations

import argparse
import json
import sys

from .backends import BUILTIN_EMBED, BUILTIN_ITM
from .errors import ExtractorError
from .extract import ExtractionJob, extract_signals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="efs-extract",
        description="Sample a video at a fixed rate and write a .efss signal file",
    )
    parser.add_argument("--video", required=True, help="input video path")
    parser.add_argument("--query", required=True, help="text query to score frames against")
    parser.add_argument("--fps", type=float, default=1.0, help="candidate sampling rate")
    parser.add_argument("--out", required=True, help="output .efss path")
    parser.add_argument("--embed-model", default=BUILTIN_EMBED,
                        help=f"embedding backend id (default: {BUILTIN_EMBED})")
    parser.add_argument("--itm-model", default=BUILTIN_ITM,
                        help=f"relevance backend id (default: {BUILTIN_ITM})")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--batch-size", type=int, default=32)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = ExtractionJob(
        video=args.video,
        query=args.query,
        out=args.out,
        fps=args.fps,
        device=args.device,
        embed_model=args.embed_model,
        itm_model=args.itm_model,
        batch_size=args.batch_size,
    )
    try:
        summary = extract_signals(job)
    except (ExtractorError, ValueError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)},
                       sort_keys=True, separators=(",", ":")),
            file=sys.stderr,
        )
        return 1
    print(f"wrote {summary['out']}: {summary['frame_count']} frames, dim {summary['dim']}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
