"""The ``bgd`` command: run verifications on object files and print JSON reports.

Every command reads an object file (``-`` for standard input) and writes one
JSON document to standard output.  Exit status: 0 when every check passes,
1 when some axiom fails, 2 when the input is malformed.
"""
from __future__ import annotations

import json
import sys

import click

from .algebra import check_morphism, validate_algebra
from .bialgebroid import (bialgebroid_difference, bialgebroid_from_entwining, canonical_grouplike,
                          coinvariants_of_A, coring_from_bialgebroid, dual_bialgebroid, entwining_conditions,
                          entwining_from_bialgebroid, hopf_check, validate_left_bialgebroid,
                          validate_right_bialgebroid)
from .bimodule import right_dual, validate_bimodule
from .catalog import catalog
from .coring import (coring_from_entwining, enumerate_grouplikes,
                     flatten_coring, galois, validate_coring, validate_internal_coring)
from .entwining import _safe, check_comonoid, check_left_entwining, check_monoid, check_right_entwining, dualize_entwining
from .errors import BgdError, MalformedInput, UnknownCatalogId
from .exactfield import LinMap, kron
from .pseudomonoid import pseudomonoid_report
from .report import Report
from .serialize import CoringRecord, EntwiningRecord, ObjectFile, SweedlerRecord, dumps, load


# analyses on single objects

def _entwining(rep: Report, rec: EntwiningRecord):
    return _safe(rep, "balanced", rec.build)


def validate_object(section: str, obj) -> Report:
    if section == "algebras":
        return validate_algebra(obj)
    if section == "morphisms":
        return check_morphism(obj)
    if section == "bimodules":
        return validate_bimodule(obj)
    if section == "bialgebroids":
        return validate_left_bialgebroid(obj)
    if section == "entwinings":
        rep = Report("entwining")
        e = _entwining(rep, obj)
        if e is not None:
            rep.extend(check_monoid(e.monoid), "monoid:")
            rep.extend(check_comonoid(e.comonoid), "comonoid:")
            rep.extend(check_left_entwining(e))
        return rep
    if isinstance(obj, SweedlerRecord):
        return validate_internal_coring(obj.build())
    return validate_coring(obj.build())


def entwine_report(b) -> Report:
    """The entwining of a bialgebroid, conditions (1i)-(1iii) and the way back."""
    rep = Report("entwine")
    e = _safe(rep, "entwining", lambda: entwining_from_bialgebroid(b))
    if e is None:
        return rep
    rep.extend(check_left_entwining(e))
    cond = entwining_conditions(e, b.t)
    rep.extend(cond)
    rep.derived.update(cond.derived)

    def back():
        diff = bialgebroid_difference(b, bialgebroid_from_entwining(e, b.t, b.name))
        rep.add("round-trip", diff is None, None, "" if diff is None else f"differs in {diff}")

    _safe(rep, "round-trip", back)
    return rep


def coring_report_for_entwining(e) -> Report:
    """Validity of the coring L (x) S against validity of the entwining."""
    rep = Report("coring")
    ec = coring_from_entwining(e)
    rep.extend(ec.coring_report, "coring:")
    rep.add("coring-valid", ec.coring_report.ok)
    rep.add("entwining-valid", ec.entwining_report.ok)
    rep.add("equivalent", ec.equivalent, None, "coring valid iff entwining valid")
    rep.derived["coring_verdict"] = ec.coring_report.verdict
    rep.derived["entwining_verdict"] = ec.entwining_report.verdict
    return rep


def coring_report(section: str, obj) -> Report:
    if section == "bialgebroids":
        rep = Report("coring")
        c = _safe(rep, "construction", lambda: coring_from_bialgebroid(obj))
        if c is not None:
            rep.extend(validate_coring(c))
            rep.derived["carrier_dim"] = c.carrier_dim
        e = _safe(rep, "entwining", lambda: entwining_from_bialgebroid(obj))
        if e is not None:
            rep.extend(coring_report_for_entwining(e), "internal:")
        return rep
    if section == "entwinings":
        rep = Report("coring")
        e = _entwining(rep, obj)
        if e is not None:
            rep.extend(coring_report_for_entwining(e))
        return rep
    raise MalformedInput(f"coring needs a bialgebroid or an entwining, got a {section[:-1]}")


def _coring_of(section: str, obj):
    if section == "bialgebroids":
        return coring_from_bialgebroid(obj)
    if section == "corings" and isinstance(obj, CoringRecord):
        return obj.build()
    if section == "corings" and isinstance(obj, SweedlerRecord):
        return flatten_coring(obj.build()).coring
    raise MalformedInput(f"galois needs a coring or a bialgebroid, got a {section[:-1]}")


def galois_report(section: str, obj, grouplike=None) -> Report:
    c = _coring_of(section, obj)
    f = c.field
    if grouplike is not None:
        if len(grouplike) != c.carrier_dim:
            raise MalformedInput(f"group-like has {len(grouplike)} entries, carrier has dim {c.carrier_dim}")
        candidates = [LinMap.from_entries(f, c.carrier_dim, 1, [f.parse(x) for x in grouplike])]
    elif section == "bialgebroids":
        candidates = [canonical_grouplike(obj)]
    elif isinstance(obj, SweedlerRecord):
        a = obj.iota.target
        candidates = [obj.build().carrier.proj @ kron(a.unit, a.unit)]
    else:
        candidates = enumerate_grouplikes(c)
    rep = Report("galois")
    if not candidates:
        rep.add("grouplike-exists", False, None, "no group-like element")
        return rep
    several = len(candidates) > 1
    for k, g in enumerate(candidates):
        prefix = f"g{k + 1}:" if several else ""
        res = galois(c, g)
        rep.extend(res.report, prefix)
        for key, v in res.report.derived.items():
            rep.derived[prefix + key] = v
        if several:
            rep.derived[prefix + "grouplike"] = [f.format(x) for x in g.column(0)]
    return rep


def hopf_report(b) -> Report:
    """kappa for the bialgebroid against the Galois map of its coring."""
    rep = Report("hopf")
    res = hopf_check(b)
    rep.extend(res.report)
    rep.derived.update(res.report.derived)
    rep.add("hopf", res.invertible, None, "x_R-Hopf" if res.invertible else "not x_R-Hopf")

    def agree():
        c = coring_from_bialgebroid(b)
        gal = galois(c, canonical_grouplike(b))
        rep.derived["galois_rank"] = gal.rank
        rep.add("hopf-galois-agree", gal.invertible == res.invertible and gal.rank == res.rank, None,
                f"galois rank {gal.rank}, hopf rank {res.rank}")

    _safe(rep, "hopf-galois-agree", agree)
    return rep


def dualize_report(section: str, obj) -> Report:
    rep = Report("dualize")
    if section == "bialgebroids":
        built = _safe(rep, "dual", lambda: dual_bialgebroid(obj))
        if built is None:
            return rep
        rb, data = built
        rep.extend(data.report)
        rep.extend(validate_right_bialgebroid(rb), "right:")
        rep.derived.update({"B_dim": data.b_algebra.dim, "s_r_rank": data.s_r.rank()})
        return rep
    if section == "entwinings":
        e = _entwining(rep, obj)
        if e is None:
            return rep
        duals = _safe(rep, "duals", lambda: (right_dual(e.monoid.carrier), right_dual(e.comonoid.carrier)))
        if duals is not None:
            de = dualize_entwining(e, *duals)
            rep.extend(check_right_entwining(de.structure))
        return rep
    raise MalformedInput(f"dualize needs a bialgebroid or an entwining, got a {section[:-1]}")


def flatten_report(section: str, obj) -> Report:
    rep = Report("flatten")
    if section == "corings" and isinstance(obj, SweedlerRecord):
        ic = obj.build()
    elif section == "entwinings":
        e = _entwining(rep, obj)
        ic = None if e is None else coring_from_entwining(e).coring
    elif section == "bialgebroids":
        e = _safe(rep, "entwining", lambda: entwining_from_bialgebroid(obj))
        ic = None if e is None else coring_from_entwining(e).coring
    else:
        raise MalformedInput(f"flatten needs an internal coring, an entwining or a bialgebroid, got a {section[:-1]}")
    if ic is None:
        if rep.ok:
            rep.add("internal-coring", False, None, "the internal coring could not be built")
        return rep
    rep.extend(validate_internal_coring(ic))
    fl = _safe(rep, "flatten", lambda: flatten_coring(ic))
    if fl is not None:
        rep.derived.update({"internal_dim": ic.carrier.dim, "flat_dim": fl.coring.carrier_dim,
                            "iso_rank": fl.iso.rank()})
    return rep


def coinvariant_report(b) -> Report:
    rep = Report("coinvariants")
    res = coinvariants_of_A(b)
    rep.add("coinvariants=image(t)", res.equals_image_t, None, f"dim {res.dim}")
    rep.derived["coinvariant_dim"] = res.dim
    return rep


def check_all_bialgebroid(b) -> Report:
    """Validation, the entwining/coring equivalence, Galois/Hopf, duality
    and the pseudo-monoid, in that order; later stages need a valid input."""
    rep = Report("check-all")
    stages = [("validate", lambda: validate_left_bialgebroid(b)),
              ("entwine", lambda: entwine_report(b)),
              ("coring", lambda: coring_report("bialgebroids", b))]
    valid = validate_left_bialgebroid(b).ok
    if valid:
        stages += [("coinvariants", lambda: coinvariant_report(b)),
                   ("hopf", lambda: hopf_report(b)),
                   ("dualize", lambda: dualize_report("bialgebroids", b)),
                   ("pseudomonoid", lambda: pseudomonoid_report(b))]
    for label, run in stages:
        sub = _safe(rep, label, run)
        if sub is not None:
            rep.extend(sub, label + ":")
            for k, v in sub.derived.items():
                rep.derived[f"{label}:{k}"] = v
    return rep


def check_all_object(section: str, obj) -> Report:
    if section == "bialgebroids":
        return check_all_bialgebroid(obj)
    rep = Report("check-all")
    rep.extend(validate_object(section, obj), "validate:")
    if section == "entwinings":
        e = _entwining(Report("scratch"), obj)
        if e is not None:
            rep.extend(coring_report_for_entwining(e), "coring:")
    if section == "corings" and isinstance(obj, SweedlerRecord):
        sub = flatten_report(section, obj)
        rep.extend(sub, "flatten:")
        rep.derived.update({f"flatten:{k}": v for k, v in sub.derived.items()})
    return rep


# command plumbing

ALL = ObjectFile.SECTIONS


def _select(of: ObjectFile, name, sections):
    if name is not None:
        section, obj = of.lookup(name)
        if section not in sections:
            raise MalformedInput(f"{name!r} is a {section[:-1]}; expected one of {', '.join(sections)}")
        return [(name, section, obj)]
    picked = [(n, s, obj) for s in sections for n, obj in getattr(of, s).items()]
    if not picked:
        raise MalformedInput(f"the file has no {' or '.join(sections)}")
    return picked


def _guarded(title: str, fn) -> Report:
    try:
        return fn()
    except MalformedInput:
        raise
    except BgdError as exc:
        rep = Report(title)
        rep.error = f"{type(exc).__name__}: {exc}"
        if exc.witness is not None:
            rep.add(getattr(exc, "condition", None) or type(exc).__name__, False, exc.witness, str(exc))
        return rep


def _emit(command: str, reports: dict):
    ok = all(r.ok for r in reports.values())
    doc = {"command": command, "verdict": "pass" if ok else "fail",
           "objects": {name: r.to_json() for name, r in reports.items()}}
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False))
    return 0 if ok else 1


def _run(command: str, path: str, name, sections, analyse):
    of = load(path)
    reports = {}
    for n, section, obj in _select(of, name, sections):
        reports[n] = _guarded(command, lambda: analyse(section, obj))
    return _emit(command, reports)


def _exit_on_malformed(fn):
    """Exit 2 with a diagnostic on malformed input."""
    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except (MalformedInput, UnknownCatalogId) as exc:
            doc = {"verdict": "error", "error": f"{type(exc).__name__}: {exc}"}
            if exc.witness is not None:
                doc["witness"] = list(exc.witness)
            click.echo(json.dumps(doc, indent=2, ensure_ascii=False))
            sys.exit(2)
        sys.exit(code)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
def main():
    """Exact verification of bialgebroids, entwining structures and corings."""


FILE = click.argument("path", metavar="FILE")
NAME = click.argument("name", required=False)


@main.command()
@FILE
@NAME
@_exit_on_malformed
def validate(path, name):
    """Check the axioms of one object (or of every object in FILE)."""
    return _run("validate", path, name, ALL, validate_object)


@main.command()
@FILE
@NAME
@_exit_on_malformed
def entwine(path, name):
    """Entwining structure of a bialgebroid, conditions (1i)-(1iii), round trip."""
    def analyse(section, obj):
        if section == "bialgebroids":
            return entwine_report(obj)
        rep = Report("entwine")
        e = _entwining(rep, obj)
        if e is not None:
            rep.extend(check_left_entwining(e))
        return rep
    return _run("entwine", path, name, ("bialgebroids", "entwinings"), analyse)


@main.command()
@FILE
@NAME
@_exit_on_malformed
def coring(path, name):
    """The coring of a bialgebroid or entwining, compared with the entwining axioms."""
    return _run("coring", path, name, ("bialgebroids", "entwinings"), coring_report)


@main.command("galois")
@FILE
@NAME
@click.option("--grouplike", help="comma-separated coordinates of a group-like element")
@_exit_on_malformed
def galois_cmd(path, name, grouplike):
    """The Galois map of a coring at a group-like element."""
    vec = None
    if grouplike is not None:
        vec = [x.strip() for x in grouplike.strip("[] ").split(",") if x.strip()]
    return _run("galois", path, name, ("corings", "bialgebroids"),
                lambda section, obj: galois_report(section, obj, vec))


@main.command()
@FILE
@NAME
@_exit_on_malformed
def hopf(path, name):
    """Whether a bialgebroid is x_R-Hopf, checked against the Galois property."""
    return _run("hopf", path, name, ("bialgebroids",), lambda section, obj: hopf_report(obj))


@main.command()
@FILE
@NAME
@_exit_on_malformed
def dualize(path, name):
    """The dual right bialgebroid, or the dual right entwining."""
    return _run("dualize", path, name, ("bialgebroids", "entwinings"), dualize_report)


@main.command()
@FILE
@NAME
@_exit_on_malformed
def pseudomonoid(path, name):
    """The pseudo-monoid of a bialgebroid with its strong monoidal structure."""
    return _run("pseudomonoid", path, name, ("bialgebroids",), lambda section, obj: pseudomonoid_report(obj))


@main.command()
@FILE
@NAME
@_exit_on_malformed
def flatten(path, name):
    """Compare an internal coring with its image over the field."""
    return _run("flatten", path, name, ("corings", "entwinings", "bialgebroids"), flatten_report)


@main.command("catalog")
@click.argument("ident", metavar="ID")
@_exit_on_malformed
def catalog_cmd(ident):
    """Print a built-in example as an object file."""
    click.echo(dumps(catalog(ident)), nl=False)
    return 0


@main.command("check-all")
@FILE
@_exit_on_malformed
def check_all(path):
    """Run every applicable pipeline on every bialgebroid, entwining and coring."""
    return _run("check-all", path, None, ("bialgebroids", "entwinings", "corings"), check_all_object)


if __name__ == "__main__":
    main()
