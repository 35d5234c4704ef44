"""Command line interface.

Subcommands: diagram, pairs, ratio, family, certify.  Results go to stdout
or --output; diagnostics go to stderr.  Exit 0 on success, 1 on domain
errors (bad group, bad residue size, failed certification), 2 on unreadable
or schema-invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .construction import (
    FamilyCertificate,
    Place,
    build_family,
    certify_family,
    make_collection,
    relative_covolume,
)
from .diagram import GroupSpec, build_local_index
from .errors import CertificateError, DomainError, SchemaError
from .parahoric import find_equal_volume_pairs, pairs_to_json
from .reductive import prime_power_base
from .errors import InvalidResidueError


@dataclass(frozen=True)
class JobSpec:
    """One validated CLI invocation."""

    command: str
    input: str | None = None
    output: str | None = None
    flags: tuple = ()

    def __post_init__(self):
        if self.input is not None and not os.path.exists(self.input):
            raise SchemaError(f"no such file: {self.input}")


def _write(job, text):
    if job.output:
        with open(job.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(job, obj):
    _write(job, json.dumps(obj, indent=2) + "\n")


# -- schema helpers ---------------------------------------------------------

def _load_json(path):
    with open(path) as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _get(obj, key, ctx, kind=None):
    if not isinstance(obj, dict):
        raise SchemaError(f"{ctx}: expected an object")
    if key not in obj:
        raise SchemaError(f"{ctx}: missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{ctx}: key {key!r} has wrong type")
    return value


def _int_list(value, ctx):
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise SchemaError(f"{ctx}: expected a list of integers")
    return value


def _places_from_json(items, group_label, ctx="places"):
    if not isinstance(items, list) or not items:
        raise SchemaError(f"{ctx}: expected a non-empty list")
    index = build_local_index(group_label)
    places = []
    for k, entry in enumerate(items):
        pid = _get(entry, "id", f"{ctx}[{k}]", str)
        q = _get(entry, "q", f"{ctx}[{k}]", int)
        p = _get(entry, "p", f"{ctx}[{k}]", int)
        if "index" in entry and entry["index"] != group_label:
            raise SchemaError(f"{ctx}[{k}]: place index {entry['index']!r} "
                              f"does not match group {group_label!r}")
        places.append(Place(pid, q, p, index))
    return places


def _assignment_from_json(value, ctx):
    if not isinstance(value, dict):
        raise SchemaError(f"{ctx}: expected an object mapping place ids to types")
    return {pid: tuple(_int_list(t, f"{ctx}[{pid}]")) for pid, t in value.items()}


# -- subcommands ------------------------------------------------------------

def cmd_diagram(job, args):
    d = build_local_index(GroupSpec.parse(args.group))
    if args.dot:
        _write(job, d.to_dot() + "\n")
    else:
        _dump(job, d.to_json())
    return 0


def cmd_pairs(job, args):
    d = build_local_index(GroupSpec.parse(args.group))
    if args.q is not None and prime_power_base(args.q) is None:
        raise InvalidResidueError(f"invalid residue size: {args.q} is not a prime power")
    pairs = find_equal_volume_pairs(d)
    if not pairs:
        note = ""
        if d.group.form == "split" and d.group.family == "A":
            note = ("; the cycle rotations identify every candidate, "
                    "use the family command with --fallback-swap")
        print(f"warning: no single-place equal-volume pair of non-conjugate "
              f"types for {d.group.label}{note}", file=sys.stderr)
    _dump(job, pairs_to_json(d, pairs, args.q))
    return 0


def _collection_from_json(entry, group, places, ctx):
    overrides = _assignment_from_json(_get(entry, "assignment", ctx), f"{ctx}.assignment")
    refinements = entry.get("refinements", [])
    if not isinstance(refinements, list) or not all(isinstance(x, str) for x in refinements):
        raise SchemaError(f"{ctx}.refinements: expected a list of place ids")
    return make_collection(group, places, overrides, tuple(refinements))


def cmd_ratio(job, args):
    data = _load_json(job.input)
    group = GroupSpec.parse(_get(data, "group", "input", str))
    places = _places_from_json(_get(data, "places", "input"), group.label)
    colls = _get(data, "collections", "input", list)
    if len(colls) != 2:
        raise SchemaError("input: collections must list exactly two entries")
    a = _collection_from_json(colls[0], group, places, "collections[0]")
    b = _collection_from_json(colls[1], group, places, "collections[1]")
    _dump(job, relative_covolume(a, b).to_json())
    return 0


def cmd_family(job, args):
    data = _load_json(job.input)
    group = GroupSpec.parse(_get(data, "group", "input", str))
    places = _places_from_json(_get(data, "places", "input"), group.label)
    family_ids = _get(data, "family_places", "input", list)
    if not all(isinstance(x, str) for x in family_ids):
        raise SchemaError("input: family_places must be a list of place ids")
    pairs = None
    if "pairs" in data:
        raw = _get(data, "pairs", "input", dict)
        pairs = {}
        for pid, duo in raw.items():
            if not isinstance(duo, list) or len(duo) != 2:
                raise SchemaError(f"input: pairs[{pid}] must list two types")
            pairs[pid] = (tuple(_int_list(duo[0], f"pairs[{pid}][0]")),
                          tuple(_int_list(duo[1], f"pairs[{pid}][1]")))
    fallback = bool(data.get("fallback_swap", False)) or args.fallback_swap
    refine = data.get("refine")
    if args.refine:
        refine = args.refine.split(",")
    if refine is not None:
        if not isinstance(refine, list) or len(refine) != 2 or not all(
            isinstance(x, str) for x in refine
        ):
            raise SchemaError("input: refine must list exactly two place ids")
        refine = tuple(refine)
    members = build_family(group, places, list(family_ids), pairs, fallback, refine)
    certificate = certify_family(members)
    _dump(job, certificate.to_json())
    return 0


def cmd_certify(job, args):
    data = _load_json(job.input)
    group = GroupSpec.parse(_get(data, "group", "certificate", str))
    places = _places_from_json(_get(data, "places", "certificate"), group.label)
    member_entries = _get(data, "members", "certificate", list)
    if len(member_entries) < 2:
        raise SchemaError("certificate: members must list at least two entries")
    members = [
        _collection_from_json(entry, group, places, f"members[{k}]")
        for k, entry in enumerate(member_entries)
    ]
    for key in ("ratios", "witnesses", "citations"):
        _get(data, key, "certificate", list)
    recomputed = certify_family(members).to_json()
    for key in ("ratios", "witnesses", "members", "places", "group", "citations"):
        if recomputed[key] != data[key]:
            raise CertificateError(f"certificate mismatch: {key} does not match recomputation")
    result = {
        "valid": True,
        "members": len(members),
        "witnesses": len(recomputed["witnesses"]),
    }
    _dump(job, result)
    return 0


# -- entry points ------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="paravol",
        description="parahoric types, exact volume factor ratios, certified "
                    "equal-covolume families")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="print a local Dynkin diagram")
    p.add_argument("group", help="group label, e.g. split:B3 or twisted:C-BC1")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--output")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("pairs", help="find symbolic equal-volume non-conjugate type pairs")
    p.add_argument("group")
    p.add_argument("--q", type=int, help="also evaluate orders at this residue size")
    p.add_argument("--output")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("ratio", help="exact covolume ratio of two collections")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("family", help="build and certify an equal-covolume family")
    p.add_argument("--input", required=True)
    p.add_argument("--fallback-swap", action="store_true",
                   help="vary places in equal-q twos by swapping a fixed type pair")
    p.add_argument("--refine", metavar="P1,P2",
                   help="torsion-free refinement at two places of distinct characteristic")
    p.add_argument("--output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("certify", help="re-validate an existing family certificate")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv):
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(
            command=args.command,
            input=getattr(args, "input", None),
            output=getattr(args, "output", None),
            flags=tuple(
                name for name in ("dot", "fallback_swap")
                if getattr(args, name, False)
            ),
        )
        return args.func(job, args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
