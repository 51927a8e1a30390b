"""Self-describing JSON text format for graded complexes.

A complex file is one JSON object:

    {"modulus": 4,
     "convention": "homological",
     "support": {"periodic": {"period": 1}},
     "cells": {"0": {"factors": [4]}},
     "diffs": {"0": [[2]]}}

`support` is either {"window": {"lo": a, "hi": b}} (degrees a..b inclusive,
zero outside) or {"periodic": {"period": p}} (degrees mod p).  Each cell is
{"factors": [d1, ...]} -- cyclic orders, 0 meaning Z -- or {"rank": k} for
the free module of rank k.  `diffs` maps a degree to the matrix of the
differential leaving that degree (columns indexed by the source cell's
generators); omitted degrees get the zero map.  Bicomplexes are never
written to files; they are always built from a pair of complexes.

Parsing succeeds exactly when the assembled complex satisfies the complex
axioms; any violation is reported with the offending degree.  Serialization
normalizes cells to their cyclic decomposition and rewrites differentials
in those coordinates, so parse/serialize round-trips are stable.
"""

import json

from .abgroup import FpGroup, Morphism
from .complexes import COHOMOLOGICAL, HOMOLOGICAL, Periodic, Window, Complex
from .errors import ConventionViolation, ParseError
from .snf import IntMatrix


def _expect_object(value, where, keys, optional=()):
    if not isinstance(value, dict):
        raise ParseError("%s must be a JSON object" % where)
    missing = [k for k in keys if k not in value]
    if missing:
        raise ParseError("%s is missing %s" % (where, ", ".join(missing)))
    stray = [k for k in value if k not in keys and k not in optional]
    if stray:
        raise ParseError("%s has unknown field %s" % (where, stray[0]))


def _expect_int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("%s must be an integer" % where)
    return value


def _degree_key(key, where):
    try:
        return int(key)
    except (TypeError, ValueError):
        raise ParseError("%s key %r is not a degree" % (where, key))


def _parse_support(raw):
    if not isinstance(raw, dict):
        raise ParseError("support must be a JSON object")
    if set(raw) == {"window"}:
        spec = raw["window"]
        _expect_object(spec, "support.window", ["lo", "hi"])
        lo = _expect_int(spec["lo"], "support.window.lo")
        hi = _expect_int(spec["hi"], "support.window.hi")
        if lo > hi:
            raise ParseError("support.window has lo > hi")
        return Window(lo, hi)
    if set(raw) == {"periodic"}:
        spec = raw["periodic"]
        _expect_object(spec, "support.periodic", ["period"])
        period = _expect_int(spec["period"], "support.periodic.period")
        if period < 1:
            raise ParseError("support.periodic.period must be positive")
        return Periodic(period)
    raise ParseError('support must be {"window": ...} or {"periodic": ...}')


def _parse_cell(raw, modulus, degree):
    where = "cells[%d]" % degree
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ParseError('%s must be {"factors": [...]} or {"rank": k}'
                         % where)
    if "rank" in raw:
        rank = _expect_int(raw["rank"], where + ".rank")
        if rank < 0:
            raise ParseError("%s.rank must not be negative" % where)
        return FpGroup.free(modulus, rank)
    if "factors" in raw:
        factors = raw["factors"]
        if not isinstance(factors, list):
            raise ParseError("%s.factors must be a list" % where)
        return FpGroup.from_factors(
            modulus, [_expect_int(d, where + ".factors") for d in factors])
    raise ParseError('%s must use "factors" or "rank"' % where)


def _parse_matrix(raw, degree):
    where = "diffs[%d]" % degree
    if not isinstance(raw, list) or \
            any(not isinstance(row, list) for row in raw):
        raise ParseError("%s must be a list of rows" % where)
    try:
        return IntMatrix([[_expect_int(e, where) for e in row]
                          for row in raw])
    except ValueError:
        raise ParseError("%s has ragged rows" % where)


def parse_complex(text):
    """Complex from JSON text; ParseError pinpoints any violation."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("not valid JSON: %s" % exc)
    _expect_object(raw, "complex file",
                   ["modulus", "convention", "support", "cells"], ["diffs"])
    modulus = _expect_int(raw["modulus"], "modulus")
    if modulus < 0 or modulus == 1:
        raise ParseError("modulus must be 0 or at least 2")
    convention = raw["convention"]
    if convention not in (HOMOLOGICAL, COHOMOLOGICAL):
        raise ParseError('convention must be "%s" or "%s"'
                         % (HOMOLOGICAL, COHOMOLOGICAL))
    support = _parse_support(raw["support"])
    if isinstance(support, Periodic):
        wanted = range(support.period)
    else:
        wanted = range(support.lo, support.hi + 1)
    if not isinstance(raw["cells"], dict):
        raise ParseError("cells must be a JSON object")
    cells = {}
    for key, spec in raw["cells"].items():
        n = _degree_key(key, "cells")
        if n in cells:
            raise ParseError("cells[%d] appears twice" % n)
        cells[n] = _parse_cell(spec, modulus, n)
    for n in wanted:
        if n not in cells:
            raise ParseError("cells[%d] is required by the support" % n)
    for n in cells:
        if n not in wanted:
            raise ParseError("cells[%d] is outside the support" % n)
    step = -1 if convention == HOMOLOGICAL else 1
    diffs = {}
    for key, spec in raw.get("diffs", {}).items():
        n = _degree_key(key, "diffs")
        if n in diffs:
            raise ParseError("diffs[%d] appears twice" % n)
        src = cells.get(n if isinstance(support, Window)
                        else n % support.period)
        if src is None:
            raise ParseError("diffs[%d] has no source cell" % n)
        tgt_deg = n + step
        if isinstance(support, Periodic):
            tgt_deg %= support.period
        tgt = cells.get(tgt_deg)
        if tgt is None:
            raise ParseError("diffs[%d] leaves the support" % n)
        mat = _parse_matrix(spec, n)
        if (mat.rows, mat.cols) != (tgt.ambient_rank, src.ambient_rank):
            raise ParseError(
                "diffs[%d] is %dx%d but degree %d -> %d needs %dx%d"
                % (n, mat.rows, mat.cols, n, n + step,
                   tgt.ambient_rank, src.ambient_rank))
        diffs[n] = Morphism(src, tgt, mat)
    try:
        return Complex(convention, modulus, support, cells, diffs)
    except ConventionViolation as exc:
        raise ParseError(str(exc))


def load_complex(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise ParseError("%s: %s" % (path, exc))


def _normalized_diff(c, n, forms):
    """Matrix of diff(n) written in cyclic coordinates, entries reduced."""
    src = forms[_canon(c, n)]
    tgt_form = forms[_canon(c, n + c.step)]
    composed = tgt_form.to_cyclic @ c.diff(n).matrix @ src.from_cyclic
    target = FpGroup.from_factors(c.modulus, list(tgt_form.orders))
    cols = [target.reduce(composed.column(j)) for j in range(composed.cols)]
    return IntMatrix.from_columns(cols, rows=len(tgt_form.orders))


def _canon(c, n):
    s = c.support
    return n % s.period if isinstance(s, Periodic) else n


def _diff_degrees(c):
    s = c.support
    if isinstance(s, Periodic):
        return range(s.period)
    if c.step == -1:
        return range(s.lo + 1, s.hi + 1)
    return range(s.lo, s.hi)


def serialize_complex(c):
    """Canonical JSON text; cells in cyclic form, diffs rewritten to match."""
    s = c.support
    if isinstance(s, Periodic):
        support = {"periodic": {"period": s.period}}
    elif not s.zero_outside:
        # the format has no field for truncation, so refuse to drop it
        raise ValueError("truncated windows are not serializable")
    else:
        support = {"window": {"lo": s.lo, "hi": s.hi}}
    forms = {n: c.cell(n).cyclic_decomposition() for n in c.degrees()}
    cells = {str(n): {"factors": list(forms[n].orders)}
             for n in sorted(forms)}
    diffs = {}
    for n in _diff_degrees(c):
        mat = _normalized_diff(c, n, forms)
        if not mat.is_zero():
            diffs[str(n)] = mat.to_lists()
    out = {"modulus": c.modulus, "convention": c.convention,
           "support": support, "cells": cells, "diffs": diffs}
    return json.dumps(out, indent=2) + "\n"
