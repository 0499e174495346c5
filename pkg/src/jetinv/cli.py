"""Command-line interface: every certificate and table as a reproducible file.

Output is deterministic: the same command line (including seeds) produces
byte-identical bytes. JSON payloads embed a provenance block with the
command, the fully resolved configuration, the package version, and a
plain-language statement of what the result certifies. CSV outputs carry
the same provenance as '#'-prefixed comment lines above the fixed header.

Exit codes: 0 on success (certificate truth is data, not an exit code),
1 on domain errors, 2 on flag errors, 3 when the resource cap refuses a
computation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .errors import DomainError, ResourceCapExceeded
from .exact import parse_rat
from .grassmann import (
    a_nk_membership,
    check_plucker_relations,
    invariance_check,
    phi,
    plucker_of_jet,
    projective_equal,
    z_point,
)
from .invariants import (
    CSV_TABLE_HEADER,
    dimension_table,
    generation_profile,
    invariant_basis,
    unipotent_derivations,
    verify_invariance,
)
from .jets import (
    Jet,
    act,
    elashvili_jet,
    orbit_dim,
    random_jet,
    singular_locus_codim,
    stabilizer_algebra,
    strata_histogram,
    trdeg,
)
from .lie import (
    LieElement,
    cartan_certificate,
    derived_report,
    elashvili_adjoint,
    lie_basis,
    bracket,
    weyl_finiteness_certificate,
)
from .reparam import Reparam, compose, group_matrix, invert, random_reparam


def _parse_rationals(text: str) -> list:
    try:
        return [parse_rat(x) for x in text.split(",") if x != ""]
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational list {text!r}: {exc}") from exc


def _parse_jet(args) -> Jet:
    entries = _parse_rationals(args.jet)
    if len(entries) != args.k * args.n:
        raise DomainError(
            f"--jet needs {args.k * args.n} entries (n x k, row-major), "
            f"got {len(entries)}"
        )
    rows = [entries[r * args.k : (r + 1) * args.k] for r in range(args.n)]
    return Jet.from_rows(args.k, args.n, rows)


def _parse_reparam(k: int, text: str) -> Reparam:
    return Reparam.of(k, _parse_rationals(text))


def _parse_probe(args) -> LieElement:
    if getattr(args, "probe", None):
        coords = _parse_rationals(args.probe)
        if len(coords) != args.k:
            raise DomainError(f"--probe needs {args.k} coordinates")
        return LieElement.from_coords(args.k, coords)
    return lie_basis(args.k)[0]


def _config_dict(args) -> dict:
    # output path is where the bytes go, not part of what they mean
    skip = {"func", "command", "claim", "output"}
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and value is not None
    }


def _emit_json(args, result: dict) -> None:
    payload = {
        "provenance": {
            "command": args.command,
            "config": _config_dict(args),
            "version": __version__,
            "claim": args.claim,
        },
        "result": result,
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    _write(args, text)


def _emit_csv(args, header, rows) -> None:
    provenance = {
        "command": args.command,
        "config": _config_dict(args),
        "version": __version__,
        "claim": args.claim,
    }
    lines = ["# " + json.dumps(provenance, sort_keys=True)]
    lines.append(",".join(str(h) for h in header))
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    _write(args, "\n".join(lines) + "\n")


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# --- group ------------------------------------------------------------------


def cmd_group_matrix(args):
    f = _parse_reparam(args.k, args.coeffs)
    _emit_json(
        args, {"reparam": f.to_json(), "matrix": group_matrix(f).to_json()}
    )


def cmd_group_compose(args):
    f = _parse_reparam(args.k, args.f)
    g = _parse_reparam(args.k, args.g)
    _emit_json(args, {"composition": compose(f, g).to_json()})


def cmd_group_invert(args):
    f = _parse_reparam(args.k, args.coeffs)
    _emit_json(args, {"inverse": invert(f).to_json()})


# --- lie --------------------------------------------------------------------


def cmd_lie_basis(args):
    basis = lie_basis(args.k)
    _emit_json(
        args,
        {
            "basis": [
                {"coords": e.to_json()["coords"], "matrix": e.matrix.to_json()}
                for e in basis
            ]
        },
    )


def cmd_lie_bracket(args):
    x = LieElement.from_coords(args.k, _parse_rationals(args.x))
    y = LieElement.from_coords(args.k, _parse_rationals(args.y))
    z = bracket(x, y)
    _emit_json(args, {"coords": z.to_json()["coords"], "matrix": z.matrix.to_json()})


def cmd_lie_elashvili(args):
    _emit_json(args, elashvili_adjoint(_parse_probe(args)).to_json())


def cmd_lie_cartan(args):
    _emit_json(args, cartan_certificate(_parse_probe(args)).to_json())


def cmd_lie_weyl(args):
    _emit_json(args, weyl_finiteness_certificate(_parse_probe(args)).to_json())


def cmd_lie_derived(args):
    _emit_json(args, derived_report(args.k).to_json())


# --- jets -------------------------------------------------------------------


def cmd_jets_act(args):
    jet = _parse_jet(args)
    f = _parse_reparam(args.k, args.coeffs)
    _emit_json(args, {"jet": act(jet, f).to_json()})


def cmd_jets_orbit(args):
    jet = _parse_jet(args)
    stab = stabilizer_algebra(jet)
    _emit_json(
        args,
        {
            "orbit_dim": orbit_dim(jet),
            "stabilizer_dim": stab.dim,
            "stabilizer_basis": stab.to_json()["basis"],
        },
    )


def cmd_jets_elashvili(args):
    _emit_json(args, elashvili_jet(_parse_jet(args)).to_json())


def cmd_jets_trdeg(args):
    _emit_json(args, trdeg(args.k, args.n, args.samples, args.seed, args.box).to_json())


def cmd_jets_strata(args):
    report = strata_histogram(args.k, args.n, args.samples, args.seed, args.box)
    if args.format == "csv":
        _emit_csv(args, ("orbit_dim", "count"), report.csv_rows())
    else:
        _emit_json(args, report.to_json())


def cmd_jets_codim(args):
    _emit_json(args, singular_locus_codim(args.k, args.n).to_json())


# --- invariants -------------------------------------------------------------


def _table_csv_rows(rows):
    return [
        (r.k, r.n, r.m, r.monomial_count, r.invariant_dim, r.product_span_dim)
        for r in rows
    ]


def cmd_invariants_dim(args):
    rows = dimension_table(args.k, args.n, args.mmax, cap=args.cap)
    if args.format == "csv":
        _emit_csv(args, CSV_TABLE_HEADER, _table_csv_rows(rows))
    else:
        _emit_json(
            args,
            {
                "table": [r.to_json() for r in rows],
                "dims": [r.invariant_dim for r in rows],
            },
        )


def cmd_invariants_profile(args):
    rows = generation_profile(args.k, args.n, args.mmax, cap=args.cap)
    if args.format == "csv":
        _emit_csv(args, CSV_TABLE_HEADER, _table_csv_rows(rows))
    else:
        _emit_json(
            args,
            {
                "table": [r.to_json() for r in rows],
                "degrees_needing_new_generators": [
                    r.m for r in rows if r.new_generators
                ],
            },
        )


def cmd_invariants_basis(args):
    space = invariant_basis(args.k, args.n, args.m, cap=args.cap)
    _emit_json(args, space.to_json())


def cmd_invariants_verify(args):
    space = invariant_basis(args.k, args.n, args.m, cap=args.cap)
    derivations = unipotent_derivations(args.k, args.n)
    rng = random.Random(args.seed)
    samples = [
        random_reparam(rng, args.k, args.box, unipotent=True)
        for _ in range(args.samples)
    ]
    checks = []
    for b in space.basis:
        annihilated = all(d.annihilates(b) for d in derivations)
        fixed = all(verify_invariance(b, u) for u in samples)
        checks.append({"annihilated": annihilated, "fixed_by_samples": fixed})
    _emit_json(
        args,
        {
            "dim": space.dim,
            "checks": checks,
            "all_pass": all(c["annihilated"] and c["fixed_by_samples"] for c in checks),
        },
    )


# --- embed ------------------------------------------------------------------


def cmd_embed_phi(args):
    jet = _parse_jet(args)
    _emit_json(args, {"columns": [col.to_json() for col in phi(jet)]})


def cmd_embed_plucker(args):
    jet = _parse_jet(args)
    p = plucker_of_jet(jet)
    result = {"coordinates": p.to_json(), "is_zero": p.is_zero()}
    if not p.is_zero():
        result["in_distinguished_chart"] = a_nk_membership(p)
    _emit_json(args, result)


def cmd_embed_zpoint(args):
    p = z_point(args.n, args.k)
    _emit_json(
        args,
        {
            "coordinates": p.to_json(),
            "in_distinguished_chart": a_nk_membership(p),
        },
    )


def cmd_embed_check_invariance(args):
    if args.jet is not None:
        if args.coeffs is None:
            raise DomainError("--jet also needs --coeffs for the group element")
        jet = _parse_jet(args)
        f = _parse_reparam(args.k, args.coeffs)
        ok = invariance_check(jet, f)
        _emit_json(args, {"checks": [ok], "all_true": ok})
        return
    rng = random.Random(args.seed)
    checks = []
    for _ in range(args.samples):
        jet = random_jet(rng, args.k, args.n, args.box, regular=True)
        f = random_reparam(rng, args.k, args.box)
        base = plucker_of_jet(jet)
        moved = plucker_of_jet(act(jet, f))
        checks.append(
            {
                "invariant": projective_equal(moved, base),
                "relations_vanish": check_plucker_relations(
                    base, trials=50, seed=args.seed
                ),
            }
        )
    _emit_json(
        args,
        {
            "checks": checks,
            "all_true": all(c["invariant"] and c["relations_vanish"] for c in checks),
        },
    )


# --- parser -----------------------------------------------------------------


def _add_output_flags(p, csv_allowed=False):
    p.add_argument("--output", "-o", help="write to this path instead of stdout")
    if csv_allowed:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetinv",
        description=(
            "Exact-arithmetic certificates for the reparametrization action "
            "on jets of curves"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="topic", required=True)

    def sub(group, name, func, claim, **kwargs):
        p = group.add_parser(name, **kwargs)
        p.set_defaults(func=func, claim=claim)
        return p

    # group
    group = top.add_parser("group").add_subparsers(dest="sub", required=True)
    p = sub(group, "matrix", cmd_group_matrix, "matrix realization of a reparametrization")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coeffs", required=True)
    _add_output_flags(p)
    p = sub(group, "compose", cmd_group_compose, "group law: coefficients of f(g(t))")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    _add_output_flags(p)
    p = sub(group, "invert", cmd_group_invert, "compositional inverse modulo t^(k+1)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coeffs", required=True)
    _add_output_flags(p)

    # lie
    lie = top.add_parser("lie").add_subparsers(dest="sub", required=True)
    p = sub(lie, "basis", cmd_lie_basis, "algebra basis from differentiating the group matrix")
    p.add_argument("--k", type=int, required=True)
    _add_output_flags(p)
    p = sub(lie, "bracket", cmd_lie_bracket, "bracket re-expressed in the basis")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _add_output_flags(p)
    p = sub(
        lie,
        "elashvili-adjoint",
        cmd_lie_elashvili,
        "bracket image plus centralizer-fixed space fills the algebra at the probe",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--probe", help="probe coordinates, default is the grading direction")
    _add_output_flags(p)
    p = sub(
        lie,
        "cartan",
        cmd_lie_cartan,
        "the probe's centralizer is commutative and self-normalizing",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--probe")
    _add_output_flags(p)
    p = sub(
        lie,
        "weyl-cert",
        cmd_lie_weyl,
        "self-normalizing centralizer: infinitesimal finiteness of the Weyl group",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--probe")
    _add_output_flags(p)
    p = sub(lie, "derived", cmd_lie_derived, "span of all brackets of basis elements")
    p.add_argument("--k", type=int, required=True)
    _add_output_flags(p)

    # jets
    jets = top.add_parser("jets").add_subparsers(dest="sub", required=True)
    p = sub(jets, "act", cmd_jets_act, "jet matrix times the group matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet", required=True, help="n*k entries, row-major")
    p.add_argument("--coeffs", required=True)
    _add_output_flags(p)
    p = sub(jets, "orbit", cmd_jets_orbit, "orbit and stabilizer dimensions by exact rank")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet", required=True)
    _add_output_flags(p)
    p = sub(
        jets,
        "elashvili",
        cmd_jets_elashvili,
        "orbit tangent plus stabilizer-fixed subspace fills the jet space",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet", required=True)
    _add_output_flags(p)
    p = sub(
        jets,
        "trdeg",
        cmd_jets_trdeg,
        "invariant-field transcendence degree: space dimension minus maximal orbit dimension",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=10)
    _add_output_flags(p)
    p = sub(jets, "strata", cmd_jets_strata, "census of orbit dimensions over samples")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=10)
    _add_output_flags(p, csv_allowed=True)
    p = sub(jets, "codim", cmd_jets_codim, "codimension of the non-regular locus")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)

    # invariants
    inv = top.add_parser("invariants").add_subparsers(dest="sub", required=True)
    p = sub(
        inv,
        "dim",
        cmd_invariants_dim,
        "kernel dimensions of the unipotent derivations per weighted degree",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--cap", type=int)
    _add_output_flags(p, csv_allowed=True)
    p = sub(
        inv,
        "basis",
        cmd_invariants_basis,
        "exact basis of the invariant space in one weighted degree",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=int)
    _add_output_flags(p)
    p = sub(
        inv,
        "verify",
        cmd_invariants_verify,
        "basis elements are annihilated by the derivations and fixed by sampled unipotents",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=10)
    p.add_argument("--cap", type=int)
    _add_output_flags(p)
    p = sub(
        inv,
        "profile",
        cmd_invariants_profile,
        "product span versus invariant dimension per weighted degree",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--cap", type=int)
    _add_output_flags(p, csv_allowed=True)

    # embed
    embed = top.add_parser("embed").add_subparsers(dest="sub", required=True)
    p = sub(embed, "phi", cmd_embed_phi, "embedded columns in the symmetric algebra")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet", required=True)
    _add_output_flags(p)
    p = sub(embed, "plucker", cmd_embed_plucker, "wedge coordinates of the embedded columns")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet", required=True)
    _add_output_flags(p)
    p = sub(embed, "zpoint", cmd_embed_zpoint, "wedge coordinates of the distinguished jet")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_output_flags(p)
    p = sub(
        embed,
        "check-invariance",
        cmd_embed_check_invariance,
        "wedge of embedded columns is projectively constant along group orbits",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jet")
    p.add_argument("--coeffs")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=10)
    _add_output_flags(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command = f"{args.topic} {args.sub}"
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
