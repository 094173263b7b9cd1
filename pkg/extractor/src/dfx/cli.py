"""dfx: offline feature extraction producing dfbench-compatible files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .augment import augment_rescale
from .extract import ExtractionJob, WeightsUnavailable, extract
from .networks import extractor_networks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="extract deep features from an image tree")
    ex.add_argument("--net", required=True, help="network name from the registry")
    ex.add_argument("--images", required=True, help="directory with class subdirectories")
    ex.add_argument("--out", required=True, help="output feature file")
    ex.add_argument("--manifest", default=None, help="manifest path (default: OUT.manifest)")
    ex.add_argument(
        "--augment",
        default=None,
        metavar="CLASS:COUNT",
        help="rescale-augment COUNT images of CLASS before extraction",
    )
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--batch", type=int, default=16)
    ex.add_argument(
        "--untrained",
        action="store_true",
        help="use seeded random weights instead of pretrained (recorded in manifest)",
    )

    sub.add_parser("nets", help="list supported networks")
    return parser


def run_extract(args) -> int:
    augmented_stems: dict[str, set] = {}
    if args.augment:
        try:
            class_name, count_text = args.augment.rsplit(":", 1)
            count = int(count_text)
        except ValueError:
            print(f"bad --augment value {args.augment!r}, expected CLASS:COUNT", file=sys.stderr)
            return 1
        class_dir = Path(args.images) / class_name
        if not class_dir.is_dir():
            print(f"class directory not found: {class_dir}", file=sys.stderr)
            return 2
        created = augment_rescale(class_dir, count, args.seed)
        augmented_stems[class_name] = {c.output.stem for c in created}
        print(f"augmented {len(created)} images in {class_dir}")

    job = ExtractionJob(
        image_dir=args.images,
        network_name=args.net,
        output_path=args.out,
        manifest_path=args.manifest,
        untrained=args.untrained,
        batch_size=args.batch,
        augmented_stems=augmented_stems,
    )
    out_path, manifest_path = extract(job)
    print(f"wrote {out_path} and {manifest_path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "nets":
            for net in extractor_networks():
                note = f"  [{net.substitution_note}]" if net.substitution_note else ""
                print(
                    f"{net.name:22} {net.input_height}x{net.input_width}  "
                    f"{net.fc_layer_name:18} -> {net.torchvision_arch}{note}"
                )
            return 0
        return run_extract(args)
    except WeightsUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except LookupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
