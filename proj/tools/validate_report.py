#!/usr/bin/env python3
"""Validate kuga JSON reports against the shipped schema.

Also checks that object keys are sorted and that floats carry at most 12
significant digits.
"""
import argparse
import json
import sys

import jsonschema


def check_keys_sorted(node, path="$"):
    if isinstance(node, dict):
        keys = list(node.keys())
        if keys != sorted(keys):
            raise ValueError(f"{path}: keys not sorted: {keys}")
        for k, v in node.items():
            check_keys_sorted(v, f"{path}.{k}")
    elif isinstance(node, list):
        for i, v in enumerate(node):
            check_keys_sorted(v, f"{path}[{i}]")


def check_float_digits(node, path="$"):
    if isinstance(node, float):
        if float(f"{node:.12g}") != node:
            raise ValueError(f"{path}: {node!r} has more than 12 significant digits")
    elif isinstance(node, dict):
        for k, v in node.items():
            check_float_digits(v, f"{path}.{k}")
    elif isinstance(node, list):
        for i, v in enumerate(node):
            check_float_digits(v, f"{path}[{i}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("schema")
    ap.add_argument("reports", nargs="+")
    args = ap.parse_args()
    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failed = False
    for path in args.reports:
        with open(path) as f:
            pairs_report = json.load(f, object_pairs_hook=dict)
        errors = sorted(validator.iter_errors(pairs_report), key=lambda e: list(e.path))
        try:
            check_keys_sorted(pairs_report)
            check_float_digits(pairs_report)
        except ValueError as e:
            errors.append(e)
        for e in errors:
            print(f"{path}: {getattr(e, 'message', e)}", file=sys.stderr)
        failed = failed or bool(errors)
        if not errors:
            print(f"{path}: valid")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
