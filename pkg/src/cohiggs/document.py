"""Task documents: a small JSON format describing one computation.

::

    {
      "curve":   {"genus": 0, "marked_points": 4},
      "profile": {"splitting": [0, -3]}          # or {"hn": [[1, 0], [1, -2]]}
      "task":    "delta",
      "field":   [[[], ["1", "0"]], [[], []]],   # optional, splitting only
      "sweep":   {...}                           # only with task "sweep"
    }

Field entries are coefficient arrays in descending powers of x; entries
whose prescribed degree is negative are written ``[]``. Rationals may be
integers or "p/q" strings.

A sweep varies parameters over inclusive ranges ``[lo, hi]``::

    "sweep": {"genus": [2, 3], "marked_points": [0, 1],
              "degrees": {"2": [-6, -1]},   # hn block index -> degree range
              "ranks": {"1": [1, 2]},       # hn block index -> rank range
              "twists": {"2": [-4, 0]}}     # splitting position -> twist range
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import DocumentSyntaxError, SchemaError
from .hn import CurveContext, HNData, validate_hn

TASKS = ("classify", "delta", "basis", "nilpotency", "segre", "endo", "sweep")
_TOP_KEYS = ("curve", "profile", "task", "field", "sweep")
_SWEEP_SCALARS = ("genus", "marked_points")
_SWEEP_MAPS = ("degrees", "ranks", "twists")


@dataclass(frozen=True)
class SweepSpec:
    genus: Optional[tuple] = None
    marked_points: Optional[tuple] = None
    degrees: tuple = ()  # ((block, (lo, hi)), ...)
    ranks: tuple = ()
    twists: tuple = ()

    def to_json(self) -> dict:
        out = {}
        for key in _SWEEP_SCALARS:
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val)
        for key in _SWEEP_MAPS:
            val = getattr(self, key)
            if val:
                out[key] = {str(i): list(rng) for i, rng in val}
        return out


@dataclass(frozen=True)
class TaskDocument:
    genus: int
    marked_points: int
    profile_kind: str  # "hn" or "splitting"
    profile: tuple  # ((r, d), ...) or (a_1, ..., a_r) as given
    task: str
    field: Optional[tuple] = None  # nested tuples of coefficient strings
    sweep: Optional[SweepSpec] = None

    @property
    def gamma(self) -> int:
        return 2 - 2 * self.genus - self.marked_points

    def context(self) -> CurveContext:
        return CurveContext(self.genus, self.marked_points)

    def hn_data(self) -> HNData:
        ctx = self.context()
        if self.profile_kind == "hn":
            return validate_hn(self.profile, ctx)
        from .p1 import SplittingType

        return SplittingType.from_twists(self.profile).to_hn()

    def splitting(self):
        from .errors import ValidationError
        from .p1 import SplittingType

        if self.genus != 0:
            raise ValidationError("explicit split bundles need genus 0")
        if self.profile_kind == "splitting":
            return SplittingType.from_twists(self.profile)
        return SplittingType.from_hn(self.hn_data())

    def to_json(self) -> dict:
        out = {
            "curve": {"genus": self.genus, "marked_points": self.marked_points},
            "profile": {self.profile_kind: [list(b) for b in self.profile]
                        if self.profile_kind == "hn" else list(self.profile)},
            "task": self.task,
        }
        if self.field is not None:
            out["field"] = [[list(e) for e in row] for row in self.field]
        if self.sweep is not None:
            out["sweep"] = self.sweep.to_json()
        return out


def dump(doc: TaskDocument) -> str:
    """Serialise back to the input format (parse(dump(doc)) == doc)."""
    return json.dumps(doc.to_json(), indent=2) + "\n"


# ----------------------------------------------------------------- parsing

def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    return value


def _range(value, path):
    if isinstance(value, int) and not isinstance(value, bool):
        return (value, value)
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError(path, "expected an integer or a [lo, hi] pair")
    lo, hi = _int(value[0], path + "[0]"), _int(value[1], path + "[1]")
    if lo > hi:
        raise SchemaError(path, "empty range")
    return (lo, hi)


def _coeff(value, path):
    from fractions import Fraction

    if isinstance(value, bool):
        raise SchemaError(path, "expected an integer or a \"p/q\" string")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"not a rational: {value!r}") from None
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    raise SchemaError(path, "expected an integer or a \"p/q\" string")


def _object(value, path, allowed):
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    for key in value:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown key")
    return value


def parse(text: str) -> TaskDocument:
    """Parse and validate a task document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.lineno, exc.msg) from None
    _object(raw, "$", _TOP_KEYS)

    curve = _object(raw.get("curve"), "$.curve", ("genus", "marked_points"))
    if "genus" not in curve:
        raise SchemaError("$.curve.genus", "missing")
    genus = _int(curve["genus"], "$.curve.genus")
    marked = _int(curve.get("marked_points", 0), "$.curve.marked_points")
    if genus < 0 or marked < 0:
        raise SchemaError("$.curve", "genus and marked_points must be non-negative")

    task = raw.get("task")
    # a sweep may move the curve into range; anything else must start valid
    if task != "sweep":
        CurveContext(genus, marked)
    if task not in TASKS:
        if task is None:
            raise SchemaError("$.task", "missing")
        raise SchemaError("$.task", f"must be one of {', '.join(TASKS)}")

    if "profile" not in raw:
        raise SchemaError("$.profile", "missing")
    prof = _object(raw["profile"], "$.profile", ("hn", "splitting"))
    if len(prof) != 1:
        raise SchemaError("$.profile", "give exactly one of hn, splitting")
    kind, value = next(iter(prof.items()))
    path = f"$.profile.{kind}"
    if not isinstance(value, list) or not value:
        raise SchemaError(path, "expected a non-empty list")
    if kind == "hn":
        blocks = []
        for i, b in enumerate(value):
            if not isinstance(b, list) or len(b) != 2:
                raise SchemaError(f"{path}[{i}]", "expected [rank, degree]")
            blocks.append((_int(b[0], f"{path}[{i}][0]"), _int(b[1], f"{path}[{i}][1]")))
        profile = tuple(blocks)
    else:
        profile = tuple(_int(a, f"{path}[{i}]") for i, a in enumerate(value))
        if genus != 0 and task != "sweep":
            raise SchemaError(path, "a splitting type needs genus 0")

    field = None
    if "field" in raw:
        if kind != "splitting":
            raise SchemaError("$.field", "a field needs a splitting profile")
        rows = raw["field"]
        if not isinstance(rows, list):
            raise SchemaError("$.field", "expected a matrix")
        out = []
        for p, row in enumerate(rows):
            if not isinstance(row, list):
                raise SchemaError(f"$.field[{p}]", "expected a row")
            cells = []
            for q, e in enumerate(row):
                if not isinstance(e, list):
                    raise SchemaError(f"$.field[{p}][{q}]", "expected a coefficient array")
                cells.append(tuple(_coeff(c, f"$.field[{p}][{q}][{j}]") for j, c in enumerate(e)))
            out.append(tuple(cells))
        field = tuple(out)

    sweep = None
    if "sweep" in raw:
        if task != "sweep":
            raise SchemaError("$.sweep", "only allowed with task sweep")
        sw = _object(raw["sweep"], "$.sweep", _SWEEP_SCALARS + _SWEEP_MAPS)
        args = {}
        for key in _SWEEP_SCALARS:
            if key in sw:
                args[key] = _range(sw[key], f"$.sweep.{key}")
        for key in _SWEEP_MAPS:
            if key in sw:
                m = _object(sw[key], f"$.sweep.{key}", [str(i) for i in range(1, 1 + len(profile))])
                args[key] = tuple(sorted((int(i), _range(v, f"$.sweep.{key}.{i}")) for i, v in m.items()))
        if (args.get("degrees") or args.get("ranks")) and kind != "hn":
            raise SchemaError("$.sweep", "degrees/ranks sweep an hn profile")
        if args.get("twists") and kind != "splitting":
            raise SchemaError("$.sweep.twists", "twists sweep a splitting profile")
        sweep = SweepSpec(**args)
    elif task == "sweep":
        raise SchemaError("$.sweep", "missing")

    doc = TaskDocument(genus, marked, kind, profile, task, field, sweep)
    if task != "sweep":
        # surface math errors (slopes, integrality, field shape) at parse time
        doc.hn_data()
        if field is not None:
            from .p1 import CoHiggsFieldP1

            CoHiggsFieldP1.from_payload(doc.splitting(), doc.gamma, [list(map(list, r)) for r in field])
    return doc
