"""CLI: convert a serialized scikit-learn model into model-IR JSON."""

from __future__ import annotations

import argparse
import sys

from .convert import DEFAULT_WEIGHT_SCALE, AdapterError, convert


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="treelogic-convert",
        description="Convert scikit-learn tree models into treelogic model-IR JSON")
    parser.add_argument("--in", dest="dump_path", required=True,
                        help="joblib/pickle file with the fitted model")
    parser.add_argument("--type", dest="dump_type", required=True,
                        choices=("tree", "forest", "boosted"))
    parser.add_argument("--out", required=True, help="output IR JSON path")
    parser.add_argument("--weight-scale", type=int, default=DEFAULT_WEIGHT_SCALE,
                        help="fixed-point units per 1.0 of boosted leaf weight")
    args = parser.parse_args(argv)
    try:
        doc = convert(args.dump_path, args.dump_type, args.out, args.weight_scale)
    except AdapterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: kind={doc['kind']} trees={len(doc['trees'])} "
          f"n_features={doc['n_features']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
