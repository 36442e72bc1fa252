"""Matrix documents: JSON with exact rational entries.

    {"n": 3, "A": [[0, 1, 1], ["2", "1/2", 0.25], ...], "q": [-4, -7, 10]}

Entries may be integers, decimals (JSON numbers or strings, converted
exactly, so 0.1 is 1/10) or "p/q" strings. Written documents use integers
and "p/q" strings only, so a write-then-read round trip is exact.
"""
import json
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from .errors import InputError
from .rational import fmt, rmat, rvec


@dataclass
class MatrixDocument:
    A: np.ndarray
    q: np.ndarray = None

    @property
    def n(self):
        return self.A.shape[0]


def parse_entry(v, where):
    if isinstance(v, bool) or v is None:
        raise InputError(f"{where}: expected a number, got {json.dumps(v)}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Decimal):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        try:
            if "/" in s:
                return Fraction(s)
            return Fraction(Decimal(s))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise InputError(f"{where}: cannot read {v!r} as a rational") from None
    raise InputError(f"{where}: expected a number, got {type(v).__name__}")


def loads(text):
    try:
        raw = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(raw, dict) or "A" not in raw:
        raise InputError('document must be an object with key "A"')
    rows = raw["A"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError('"A" must be a list of rows')
    n = raw.get("n", len(rows))
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f'"n" must be a positive integer, got {n!r}')
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f'"A" must be {n}x{n}')
    a = rmat([[parse_entry(v, f"A[{i + 1}][{j + 1}]") for j, v in enumerate(r)]
              for i, r in enumerate(rows)])
    q = None
    if raw.get("q") is not None:
        qs = raw["q"]
        if not isinstance(qs, list) or len(qs) != n:
            raise InputError(f'"q" must be a list of {n} entries')
        q = rvec([parse_entry(v, f"q[{i + 1}]") for i, v in enumerate(qs)])
    return MatrixDocument(a, q)


def load(path):
    with open(path) as fh:
        return loads(fh.read())


def _cell(x):
    s = fmt(x)
    return int(s) if "/" not in s else s


def dumps(doc):
    out = {"n": doc.n, "A": [[_cell(x) for x in row] for row in doc.A]}
    if doc.q is not None:
        out["q"] = [_cell(x) for x in doc.q]
    rows = ",\n    ".join(json.dumps(r) for r in out["A"])
    text = '{\n  "n": %d,\n  "A": [\n    %s\n  ]' % (out["n"], rows)
    if "q" in out:
        text += ',\n  "q": ' + json.dumps(out["q"])
    return text + "\n}\n"


def dump(doc, path):
    with open(path, "w") as fh:
        fh.write(dumps(doc))
