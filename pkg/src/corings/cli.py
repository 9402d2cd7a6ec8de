"""Command line interface: check, galois, descent and build.

Exit codes: 0 all checks pass, 1 negative verdict, 2 input error,
3 a computed result contradicts a theorem the library relies on.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .algebra import NotProjective, Report
from .comatrix import (
    CanReport, ComoduleFamily, DescentReport, EndomorphismBarReport, InconsistencyError, TriangleReport,
    GrouplikePresentation, brute_force_can_rank, canonical_map, coaction_report, coproduct_coring,
    descent_report, endomorphism_ring_bar, grouplike_family, infinite_comatrix, quotient_coring_of,
    triangle_report,
)
from .coring import Coring
from .exactlin import rank
from .graded import subgroup_family
from .workspace import (
    Workspace, WorkspaceError, _Errors, _read_subgroup, check_workspace, encode, export_document,
    parse_workspace, register_report,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3

for _cls in (Report, CanReport, TriangleReport, DescentReport, EndomorphismBarReport):
    register_report(_cls)


@register_report
@dataclass
class CheckSummary:
    reports: list
    nothing_to_check: bool = False

    @property
    def ok(self) -> bool:
        return not self.nothing_to_check and all(r.ok for r in self.reports)


@register_report
@dataclass
class GaloisSummary:
    family: list
    dims: dict
    rank: int
    target_dim: int
    galois: bool
    can: CanReport
    triangle: TriangleReport
    coactions: Report
    brute_force_rank: int | None = None
    presentation_rank: int | None = None
    inconsistencies: list = field(default_factory=list)


@register_report
@dataclass
class DescentSummary:
    family: list
    probes: list
    report: DescentReport
    endomorphisms: EndomorphismBarReport
    conditions: dict
    inconsistencies: list = field(default_factory=list)


# -- building blocks ---------------------------------------------------------------

def _split(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [s.strip() for s in text.split(",") if s.strip()]


def load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise WorkspaceError([(path, exc.strerror or str(exc))]) from None
    return parse_workspace(text)


def resolve_family(ws: Workspace, family: list[str] | None = None, subgroup: list[str] | None = None):
    """The family named on the command line (or in the document), plus the names used."""
    if ws.empty:
        raise WorkspaceError([("algebra", "the document defines no algebra")])
    if subgroup is not None:
        errs = _Errors()
        _read_subgroup(subgroup, ws, "--subgroup", errs)
        errs.raise_if_any()
        names = subgroup
    elif family is not None:
        names = family
    else:
        names = ws.default_family()
    if not names:
        raise WorkspaceError([("family", "no family selected and no grouplikes available")])
    try:
        if subgroup is not None and ws.graded is not None and getattr(ws.coring, "graded", None) is ws.graded:
            grp = ws.graded.group
            return subgroup_family(ws.graded, [grp.index(n) for n in names], ws.coring,
                                   [ws.grouplike(g, "--subgroup") for g in grp.labels]), names
        if all(n in ws.grouplike_vectors and n not in ws.comodule_specs for n in names):
            gls = [ws.grouplike(n, "family") for n in names]
            return grouplike_family(ws.coring, gls), names
        return ComoduleFamily(ws.coring, [ws.comodule(n, "family") for n in names]), names
    except NotProjective as exc:
        raise WorkspaceError([("family", f"member is not finitely generated projective: {exc}")]) from None


def resolve_probes(ws: Workspace, probes: list[str] | None):
    if probes is None:
        return ws.default_probes()
    if probes == ["graded-simples"]:
        if ws.graded is None:
            raise WorkspaceError([("--probes", "graded-simples needs a graded section")])
        ws.probes = "graded-simples"
        return ws.default_probes()
    return [ws.comodule(n, "--probes") for n in probes]


def run_check(ws: Workspace) -> CheckSummary:
    if ws.empty:
        return CheckSummary([], nothing_to_check=True)
    return CheckSummary(check_workspace(ws))


def run_galois(ws: Workspace, family=None, subgroup=None) -> GaloisSummary:
    fam, names = resolve_family(ws, family, subgroup)
    tri = triangle_report(fam)
    can = canonical_map(fam)
    coact = coaction_report(fam)
    q = quotient_coring_of(fam)
    dims = {"P": coproduct_coring(fam).dim, "J": q.j.dim, "r": q.coring.dim,
            "dagger": infinite_comatrix(fam).coring.dim, "C": fam.coring.dim}
    bad = []
    if not tri.ok:
        bad.append("the presentations r, Sigma^dagger (x)_R Sigma and Sigma* (x)_T Sigma are not isomorphic")
    if not can.is_coring_hom:
        bad.append("can is not a coring homomorphism")
    if not coact.ok:
        bad.extend(coact.failures)
    brute = pres = None
    gls = getattr(fam, "grouplikes", None)
    if gls:
        brute = brute_force_can_rank(fam.coring, gls)
        pres = rank(GrouplikePresentation(fam.coring, gls).can())
        if brute != can.rank or pres != can.rank:
            bad.append(f"can ranks disagree: family {can.rank}, r(G) {pres}, brute force {brute}")
    return GaloisSummary(names, dims, can.rank, can.target_dim, can.galois, can, tri, coact, brute, pres, bad)


def run_descent(ws: Workspace, family=None, subgroup=None, probes=None) -> DescentSummary:
    fam, names = resolve_family(ws, family, subgroup)
    plist = resolve_probes(ws, probes)
    rep = descent_report(fam, plist)
    _, bar = endomorphism_ring_bar(fam)
    bad = list(rep.inconsistencies())
    if not bar.contains_R:
        bad.append("R is not contained in R-bar")
    if not bar.agrees_with_condition:
        bad.append("R-bar computed two ways disagrees")
    if not bar.can_iso_bijective:
        bad.append("Sigma^dagger (x)_R-bar Sigma -> Sigma^dagger (x)_R Sigma is not bijective")
    conditions = {"i": rep.condition_i, "iii": rep.condition_iii, "iv": rep.condition_iv}
    return DescentSummary(names, [p.name for p in plist], rep, bar, conditions, bad)


def build_coring(ws: Workspace, construct: str, family=None, subgroup=None) -> dict:
    if ws.empty:
        raise WorkspaceError([("algebra", "the document defines no algebra")])
    if construct == "coring":
        return export_document(ws.coring, ws.grouplikes)
    fam, _ = resolve_family(ws, family, subgroup)
    if construct == "P":
        c: Coring = coproduct_coring(fam)
    elif construct == "r":
        c = quotient_coring_of(fam).coring
    elif construct == "dagger":
        c = infinite_comatrix(fam).coring
    elif construct == "star":
        c = infinite_comatrix(fam).t_coring
    else:
        raise WorkspaceError([("--construct", f"unknown construction {construct!r}")])
    return export_document(c)


# -- rendering ----------------------------------------------------------------------

def _yn(b: bool) -> str:
    return "yes" if b else "no"


def render_check(s: CheckSummary) -> str:
    if s.nothing_to_check:
        return "nothing to check"
    return "\n".join(str(r) for r in s.reports)


def render_galois(s: GaloisSummary) -> str:
    lines = [
        f"family: {', '.join(s.family)}",
        f"dim P = {s.dims['P']}",
        f"dim J = {s.dims['J']}",
        f"dim r = {s.dims['r']}",
        f"dim Sigma^dagger (x)_R Sigma = {s.dims['dagger']}",
        f"can rank = {s.rank} (dim C = {s.target_dim})",
    ]
    if s.brute_force_rank is not None:
        lines.append(f"span of a g a' = {s.brute_force_rank}")
    lines.append(f"triangle isomorphisms: {'pass' if s.triangle.ok else 'FAIL'}")
    lines.append(f"GALOIS: {_yn(s.galois)} (rank {s.rank}/{s.target_dim})")
    lines.extend(f"INCONSISTENT: {m}" for m in s.inconsistencies)
    return "\n".join(lines)


_FLAG_LABELS = [
    ("flat", "C flat as a left A-module"),
    ("fg_projective", "members f.g. projective over A"),
    ("can_bijective", "can bijective"),
    ("sigma_faithfully_flat", "Sigma faithfully flat over R"),
    ("s_iso", "S ~ Sigma (x)_A Sigma^dagger"),
    ("s_faithfully_flat", "S faithfully flat over R"),
    ("lambda_bijective", "lambda: R -> R-bar bijective"),
    ("generates", "family generates the probes"),
    ("projective_certificate", "projectivity certificate"),
]


def render_descent(s: DescentSummary) -> str:
    flags = s.report.flags()
    width = max(len(lbl) for _, lbl in _FLAG_LABELS)
    lines = [f"family: {', '.join(s.family)}", f"probes: {', '.join(s.probes)}"]
    for key, lbl in _FLAG_LABELS:
        lines.append(f"  {lbl.ljust(width)}  {str(flags[key]).lower()}")
    d = s.report.dims
    lines.append(f"dims: C {d['C']}, Sigma {d['Sigma']}, R {d['R']}, R-bar {d['Rbar']}, can rank {d['can_rank']}")
    for name, ok in s.report.generation.items():
        lines.append(f"  generates {name}: {str(ok).lower()}")
    lines.append(f"(i)   generating set of small projectives: {_yn(s.conditions['i'])}")
    lines.append(f"(iii) can bijective and Sigma faithfully flat: {_yn(s.conditions['iii'])}")
    lines.append(f"(iv)  flat, can bijective and S faithfully flat: {_yn(s.conditions['iv'])}")
    if s.inconsistencies:
        lines.extend(f"INCONSISTENT: {m}" for m in s.inconsistencies)
    else:
        lines.append("consistent with the descent equivalences")
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corings", description="Exact computations with corings over Q.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="workspace document (JSON)")
        sp.add_argument("--json", action="store_true", help="emit the machine-readable report")
        return sp

    add("check", "validate algebra, coring, grouplike and comodule axioms")
    for name, text in (("galois", "canonical map and Galois verdict"), ("descent", "descent conditions")):
        sp = add(name, text)
        sp.add_argument("--family", help="comma separated grouplike or comodule names")
        sp.add_argument("--subgroup", help="comma separated group elements (graded documents)")
        if name == "descent":
            sp.add_argument("--probes", help="comma separated comodule names, or graded-simples")
    sp = add("build", "emit a constructed coring as a workspace document")
    sp.add_argument("--construct", default="coring", choices=["coring", "P", "r", "dagger", "star"])
    sp.add_argument("--family", help="comma separated grouplike or comodule names")
    sp.add_argument("--subgroup", help="comma separated group elements (graded documents)")
    sp.add_argument("-o", "--output", help="write the document here instead of standard output")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    try:
        ws = load(args.file)
        if args.command == "check":
            s = run_check(ws)
            text, code = render_check(s), (EXIT_OK if s.ok else EXIT_NEGATIVE)
        elif args.command == "galois":
            s = run_galois(ws, _split(args.family), _split(args.subgroup))
            text = render_galois(s)
            code = EXIT_INCONSISTENT if s.inconsistencies else (EXIT_OK if s.galois else EXIT_NEGATIVE)
        elif args.command == "descent":
            s = run_descent(ws, _split(args.family), _split(args.subgroup), _split(args.probes))
            text = render_descent(s)
            code = EXIT_INCONSISTENT if s.inconsistencies else (EXIT_OK if s.report.all_true else EXIT_NEGATIVE)
        else:
            doc = build_coring(ws, args.construct, _split(args.family), _split(args.subgroup))
            payload = json.dumps(doc, indent=2)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(payload + "\n")
            else:
                print(payload, file=out)
            return EXIT_OK
    except WorkspaceError as exc:
        for loc, msg in exc.errors:
            print(f"error: {loc}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"INCONSISTENT: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    if args.json:
        print(json.dumps(encode(s), indent=2), file=out)
    else:
        print(text, file=out)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
