"""Run a task document and render the result as text, JSON or CSV."""
from __future__ import annotations

import csv
import io
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import endo, existence, hn, p1, segre
from .document import TaskDocument
from .errors import ValidationError
from .hn import format_rational

SWEEP_COLUMNS = ("g", "m", "gamma", "profile", "verdict", "citation",
                 "delta", "nilpotency_bound", "segre", "commutant_dim")


@dataclass
class Table:
    name: str
    columns: tuple
    rows: list = field(default_factory=list)


@dataclass
class Report:
    task: str
    seed: int
    data: dict = field(default_factory=dict)  # ordered key -> scalar
    tables: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"task": self.task}
        out.update(self.data)
        out["seed"] = self.seed
        out["tables"] = {t.name: {"columns": list(t.columns), "rows": [list(r) for r in t.rows]}
                         for t in self.tables}
        out["warnings"] = list(self.warnings)
        return out


def _s(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


def _rng(seed: int, *parts) -> random.Random:
    # str seeds are hashed with sha512, so this is stable across processes
    return random.Random("|".join(str(p) for p in (seed,) + parts))


def _field_for(doc: TaskDocument, split, seed: int, rep: Report):
    if doc.field is not None:
        rep.data["field_source"] = "document"
        return p1.CoHiggsFieldP1.from_payload(split, doc.gamma, [list(map(list, r)) for r in doc.field])
    rep.data["field_source"] = f"random integer coefficients in [-3, 3], seed {seed}"
    return p1.random_field(split, doc.gamma, _rng(seed, "field", split, doc.gamma))


def _entries_text(f) -> str:
    return "; ".join(f"({p},{q})={f.entry(p, q)}" for p, q in f.nonzero_entries()) or "0"


# ------------------------------------------------------------------- tasks

def _classify(doc, rep, **_):
    ctx, data = doc.context(), doc.hn_data()
    verdict = existence.classify(ctx, data)
    mu_plus, mu_minus, _ = hn.slope_profile(data)
    rep.data.update(
        verdict=verdict.kind.value,
        citation=verdict.citation,
        gamma=ctx.gamma,
        regime=ctx.regime,
        profile=str(data),
        mu_plus=format_rational(mu_plus),
        mu_minus=format_rational(mu_minus),
        necessary_condition=hn.necessary_condition(ctx, data),
    )
    if hn.necessary_condition(ctx, data):
        rep.data["nilpotency_bound"] = hn.nilpotency_bound(ctx, data)
    if data.s >= 2:
        rep.data["two_nilpotent_guarantee"] = existence.two_nilpotent_guarantee(ctx, data)
        rep.data["gcd_vanishing"] = existence.gcd_vanishing(ctx, data)
    rep.data["splitting_guarantee"] = hn.splitting_guarantee(ctx, data).value
    if verdict.witness_note:
        rep.data["witness_note"] = verdict.witness_note


def _delta(doc, rep, **_):
    split = doc.splitting()
    plus, minus = p1.decompose_pm(split, doc.gamma)
    rep.data.update(
        gamma=doc.gamma,
        splitting=str(split),
        delta=p1.delta_dimension(split, doc.gamma),
        citation="P1 hom dimension: sum_{i<j} r_i r_j max(0, gamma + 1 + b_i - b_j)",
        e_plus=str(plus) if plus else "",
        e_minus=str(minus) if minus else "",
    )


def _basis(doc, rep, **_):
    split = doc.splitting()
    basis = p1.hom_basis(split, doc.gamma)
    rep.data.update(gamma=doc.gamma, splitting=str(split), delta=len(basis),
                    citation="monomial basis of Hom(E, E(gamma))")
    t = Table("basis", ("index", "entry", "monomial"))
    for i, f in enumerate(basis, start=1):
        (p, q), = f.nonzero_entries()
        t.rows.append((i, f"({p},{q})", str(f.entry(p, q))))
    rep.tables.append(t)


def _nilpotency(doc, rep, seed, **_):
    split = doc.splitting()
    phi = _field_for(doc, split, seed, rep)
    ctx, data = doc.context(), split.to_hn()
    idx = p1.nilpotency_index(phi)
    rep.data.update(gamma=doc.gamma, splitting=str(split), field=_entries_text(phi),
                    nilpotency_index=idx, generic_rank=p1.generic_rank(phi, seed=seed),
                    citation="iterated composition Phi^(i)")
    if hn.necessary_condition(ctx, data):
        rep.data["nilpotency_bound"] = hn.nilpotency_bound(ctx, data)
    t = Table("iterates", ("level", "nonzero_entries"))
    for i in range(1, idx + 1):
        t.rows.append((i, _entries_text(p1.iterate(phi, i))))
    rep.tables.append(t)


def _segre(doc, rep, oracle=False, seed=0, **_):
    ctx = doc.context()
    rep.data["gamma"] = ctx.gamma
    if ctx.genus == 0:
        split = doc.splitting()
        table = segre.segre_p1(split)
        rep.data["splitting"] = str(split)
        cols = ("k", "s_k", "delta_k", "provenance")
        if oracle:
            check = segre.oracle_segre_p1(split)
            rep.data["oracle_agrees"] = check.values == table.values
            cols = cols + ("oracle_delta_k",)
        t = Table("segre", cols)
        for k, s_k, d_k, prov in table.rows():
            row = (k, s_k, d_k, prov)
            if oracle:
                row = row + (check.delta(k),)
            t.rows.append(row)
        rep.tables.append(t)
        return
    data = doc.hn_data()
    rep.data["profile"] = str(data)
    if all(r == 1 for r in data.ranks):
        table = segre.segre_complete(data)
        t = Table("segre", ("k", "s_k", "delta_k", "provenance"))
        t.rows.extend(table.rows())
        rep.tables.append(t)
    elif data.s >= 2:
        t = Table("segre_breakpoints", ("j", "rank", "s_rank", "provenance"))
        for j, val in segre.s_at_breakpoints(data).items():
            t.rows.append((j, data.partial_rank(j), val, "HN breakpoint: F_j maximises"))
        rep.tables.append(t)
        rep.warnings.append("intermediate ranks need delta tables of the graded pieces; only breakpoints reported")
    else:
        rep.warnings.append("single semistable block: no breakpoints")


def _endo(doc, rep, seed, **_):
    split = doc.splitting()
    phi = _field_for(doc, split, seed, rep)
    space = endo.commutant(phi)
    rep.data.update(gamma=doc.gamma, splitting=str(split), field=_entries_text(phi),
                    end_dim=endo.end_dim(split), commutant_dim=space.dimension,
                    simple=space.dimension == 1, contains_identity=space.contains_identity,
                    citation="exact solve of Phi o f = f o Phi")
    ctx, data = doc.context(), split.to_hn()
    if data.s >= 2 and hn.necessary_condition(ctx, data):
        rep.data["nonsimplicity_certificate"] = endo.nonsimplicity_certificate(ctx, data)
    t = Table("commutant_basis", ("index", "flag", "entries"))
    for i, (f, flag) in enumerate(zip(space.basis, space.flags), start=1):
        t.rows.append((i, flag, _entries_text(f)))
    rep.tables.append(t)


# ------------------------------------------------------------------- sweep

def sweep_points(doc: TaskDocument):
    """Cartesian product of the sweep ranges, in a fixed order."""
    sw = doc.sweep
    axes = [range(lo, hi + 1) for lo, hi in (sw.genus or (doc.genus,) * 2, sw.marked_points or (doc.marked_points,) * 2)]
    slots = []
    for key in ("ranks", "degrees", "twists"):
        for i, (lo, hi) in getattr(sw, key):
            slots.append((key, i))
            axes.append(range(lo, hi + 1))
    for combo in itertools.product(*axes):
        g, m = combo[0], combo[1]
        prof = [list(b) for b in doc.profile] if doc.profile_kind == "hn" else list(doc.profile)
        for (key, i), v in zip(slots, combo[2:]):
            if key == "ranks":
                prof[i - 1][0] = v
            elif key == "degrees":
                prof[i - 1][1] = v
            else:
                prof[i - 1] = v
        yield g, m, doc.profile_kind, tuple(tuple(b) for b in prof) if doc.profile_kind == "hn" else tuple(prof)


def sweep_row(point, seed: int = 0):
    """One sweep point -> ("ok", row) or ("rejected", message)."""
    g, m, kind, prof = point
    label = f"g={g} m={m} profile={prof}"
    try:
        ctx = hn.CurveContext(g, m)
        if kind == "hn":
            data = hn.validate_hn(prof, ctx)
        else:
            if g != 0:
                raise ValidationError("a splitting type needs genus 0")
            data = p1.SplittingType.from_twists(prof).to_hn()
        verdict = existence.classify(ctx, data)
        row = {"g": g, "m": m, "gamma": ctx.gamma, "profile": str(data),
               "verdict": verdict.kind.value, "citation": verdict.citation,
               "delta": "", "nilpotency_bound": "", "segre": "", "commutant_dim": ""}
        if hn.necessary_condition(ctx, data):
            row["nilpotency_bound"] = hn.nilpotency_bound(ctx, data)
        if g == 0:
            split = p1.SplittingType.from_hn(data)
            row["delta"] = p1.delta_dimension(split, ctx.gamma)
            row["segre"] = " ".join(str(s) for _, s, _, _ in segre.segre_p1(split).rows())
            phi = p1.random_field(split, ctx.gamma, _rng(seed, "field", split, ctx.gamma))
            row["commutant_dim"] = endo.commutant_dimension(phi)
        elif all(r == 1 for r in data.ranks):
            row["segre"] = " ".join(str(s) for _, s, _, _ in segre.segre_complete(data).rows())
        return "ok", tuple(row[c] for c in SWEEP_COLUMNS)
    except ValidationError as exc:
        return "rejected", f"{label}: {exc}"


def _sweep_row_star(args):
    return sweep_row(*args)


def _sweep(doc, rep, seed=0, jobs=1, **_):
    points = list(sweep_points(doc))
    args = [(pt, seed) for pt in points]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map keeps input order regardless of completion order
            results = list(pool.map(_sweep_row_star, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        results = [sweep_row(*a) for a in args]
    t = Table("sweep", SWEEP_COLUMNS)
    for status, payload in results:
        if status == "ok":
            t.rows.append(payload)
        else:
            rep.warnings.append(f"rejected {payload}")
    rep.data.update(points=len(points), rows=len(t.rows), rejected=len(points) - len(t.rows))
    rep.tables.append(t)


_DISPATCH = {
    "classify": _classify,
    "delta": _delta,
    "basis": _basis,
    "nilpotency": _nilpotency,
    "segre": _segre,
    "endo": _endo,
    "sweep": _sweep,
}


def run(doc: TaskDocument, seed: int = 0, oracle: bool = False, jobs: int = 1) -> Report:
    rep = Report(doc.task, seed)
    _DISPATCH[doc.task](doc, rep, seed=seed, oracle=oracle, jobs=jobs)
    return rep


# -------------------------------------------------------------------- emit

def emit(rep: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(_jsonable_tree(rep.to_json()), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _emit_csv(rep)
    if fmt == "text":
        return _emit_text(rep)
    raise ValueError(f"unknown format {fmt!r}")


def _jsonable_tree(obj):
    if isinstance(obj, dict):
        return {k: _jsonable_tree(v) for k, v in obj.items()}
    return _jsonable(obj)


def _emit_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    if rep.tables:
        t = rep.tables[0]
        w.writerow(t.columns)
        for row in t.rows:
            w.writerow([_s(v) for v in row])
    else:
        w.writerow(("key", "value"))
        w.writerow(("task", rep.task))
        for k, v in rep.data.items():
            w.writerow((k, _s(v)))
        w.writerow(("seed", rep.seed))
    return buf.getvalue()


def _emit_text(rep: Report) -> str:
    lines = [f"task: {rep.task}"]
    for k, v in rep.data.items():
        lines.append(f"{k}: {_s(v)}")
    lines.append(f"seed: {rep.seed}")
    for t in rep.tables:
        lines.append("")
        lines.append(f"[{t.name}]")
        cells = [list(t.columns)] + [[_s(v) for v in row] for row in t.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(t.columns))]
        for r in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    for wmsg in rep.warnings:
        lines.append(f"warning: {wmsg}")
    return "\n".join(lines) + "\n"
