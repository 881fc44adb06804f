"""Line-oriented text format for named algebraic data.

Grammar (one declaration per line, ``#`` starts a comment, indices are 1-based)::

    algebra NAME dim N
    c i j k = VALUE                 # e_i o e_j has VALUE in front of e_k
    coalgebra NAME dim N
    d i j k = VALUE                 # Delta(e_i) has VALUE in front of e_j (x) e_k
    map NAME from SRC [dim M] [weight W] [role ROLE] rows:
      M rows of dim(SRC) values
    form NAME on A rows:
      N rows of N values            # row i, column j holds w(e_i, e_j)
    rtensor NAME on A rows:
      N rows of N values            # row i, column j holds the coefficient of e_i (x) e_j
    rep NAME of A on dim M
    rho[i]:
      M rows of M values
    phi[i]:
      M rows of M values
    bialgebra NAME alg A co D p P s S

``c`` and ``d`` lines attach to the most recent algebra or coalgebra header;
unspecified constants and omitted ``rho``/``phi`` blocks are zero.  A map's
source may be an algebra, coalgebra or representation (whose module dimension
is used); without ``dim`` the map is square.  Values are integers, ``p/q``
rationals or finite decimals, all read exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exactlin as el
from .algebra import Algebra
from .bialgebra import AvgBialgebra, BilinearForm, Coalgebra
from .errors import DimensionMismatch, ParseError, UnknownObject
from .representations import Representation
from .yang_baxter import RTensor

_NAME = r"[A-Za-z_][A-Za-z0-9_.+-]*"


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A matrix from the space named ``source``; column ``j`` is the image of ``e_j``."""

    matrix: np.ndarray
    source: str
    weight: int | Fraction | None = None
    role: str | None = None


@dataclass(frozen=True, eq=False)
class BialgebraRef:
    """A bialgebra declared by the names of its parts."""

    alg: str
    co: str
    p: str
    s: str


@dataclass
class Workspace:
    objects: dict[str, object] = field(default_factory=dict)
    anchors: dict[str, str] = field(default_factory=dict)  # form/rtensor name -> space it lives on

    def __contains__(self, name: str) -> bool:
        return name in self.objects

    def __getitem__(self, name: str):
        try:
            return self.objects[name]
        except KeyError:
            raise UnknownObject(f"no object named {name!r}") from None

    def get(self, name: str, kind: type | tuple[type, ...] | None = None):
        obj = self[name]
        if kind is not None and not isinstance(obj, kind):
            want = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise UnknownObject(f"{name!r} is a {type(obj).__name__}, expected {want}")
        return obj

    def add(self, name: str, obj) -> None:
        self.objects[name] = obj

    def names(self) -> list[str]:
        return list(self.objects)

    def space_dim(self, name: str) -> int:
        obj = self[name]
        if isinstance(obj, (Algebra, Coalgebra)):
            return obj.dim
        if isinstance(obj, Representation):
            return obj.module_dim
        raise DimensionMismatch(f"{name!r} does not name a space")

    def bialgebra(self, name: str) -> AvgBialgebra:
        ref = self.get(name, BialgebraRef)
        return AvgBialgebra(self.get(ref.alg, Algebra), self.get(ref.p, LinearMap).matrix,
                            self.get(ref.co, Coalgebra), self.get(ref.s, LinearMap).matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, Workspace) and emit_workspace(self) == emit_workspace(other)


def _value(tok: str, line: int, col: int):
    try:
        return el.q(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {tok!r}", line, col) from None


@dataclass
class _Pending:
    kind: str
    name: str
    line: int
    info: dict
    rows: list = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.ws = Workspace()
        self.current: tuple[str, np.ndarray] | None = None  # (name, tensor) for c/d lines
        self.block: tuple[list, int, int] | None = None    # (target list, rows wanted, width)
        self.rep: dict | None = None

    def error(self, msg, line, col=1):
        raise ParseError(msg, line, col)

    def run(self) -> Workspace:
        for ln, raw in enumerate(self.lines, start=1):
            text = raw.split("#", 1)[0]
            if not text.strip():
                continue
            toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]
            if self.block is not None:
                self._row(toks, ln)
                continue
            self._statement(toks, ln)
        if self.block is not None:
            self.error("unexpected end of input inside a rows block", len(self.lines) + 1)
        return self.ws

    def _row(self, toks, ln):
        target, want, width = self.block
        if len(toks) != width:
            self.error(f"expected {width} values, found {len(toks)}", ln, toks[0][1])
        target.append([_value(t, ln, c) for t, c in toks])
        if len(target) == want:
            self.block = None

    def _open_block(self, target, rows, width):
        if rows == 0:
            return
        self.block = (target, rows, width)

    def _declare(self, name, col, ln):
        if not re.fullmatch(_NAME, name):
            self.error(f"bad name {name!r}", ln, col)
        if name in self.ws:
            self.error(f"duplicate name {name!r}", ln, col)

    def _lookup_dim(self, name, col, ln):
        obj = self.ws.objects.get(name)
        if obj is None:
            self.error(f"unknown object {name!r}", ln, col)
        if obj.kind not in ("algebra", "coalgebra", "rep"):
            self.error(f"{name!r} does not name a space", ln, col)
        return obj.info["m"] if obj.kind == "rep" else obj.info["n"]

    def _int(self, tok, col, ln, lo=0):
        if not re.fullmatch(r"\d+", tok) or int(tok) < lo:
            self.error(f"expected an integer >= {lo}, found {tok!r}", ln, col)
        return int(tok)

    def _statement(self, toks, ln):
        head, col = toks[0]
        if not re.fullmatch(r"(rho|phi)\[\d+\]:", head):
            self.rep = None
        if head not in ("c", "d"):
            self.current = None
        words = [t for t, _ in toks]
        if head in ("algebra", "coalgebra"):
            if len(toks) != 4 or words[2] != "dim":
                self.error(f"expected '{head} NAME dim N'", ln, col)
            self._declare(words[1], toks[1][1], ln)
            n = self._int(words[3], toks[3][1], ln)
            t = el.zeros(n, n, n)
            self.ws.add(words[1], _Pending(head, words[1], ln, {"n": n, "tensor": t}))
            self.current = (head, t)
        elif head in ("c", "d"):
            want = "algebra" if head == "c" else "coalgebra"
            if self.current is None or self.current[0] != want:
                self.error(f"'{head}' line outside a {want} declaration", ln, col)
            if len(toks) != 6 or words[4] != "=":
                self.error(f"expected '{head} i j k = VALUE'", ln, col)
            t = self.current[1]
            n = t.shape[0]
            idx = []
            for tok, c in toks[1:4]:
                i = self._int(tok, c, ln, 1)
                if i > n:
                    self.error(f"index {i} out of range 1..{n}", ln, c)
                idx.append(i - 1)
            t[tuple(idx)] = _value(words[5], ln, toks[5][1])
        elif head == "map":
            self._map(toks, ln)
        elif head in ("form", "rtensor"):
            if len(toks) != 5 or words[2] != "on" or words[4] != "rows:":
                self.error(f"expected '{head} NAME on A rows:'", ln, col)
            self._declare(words[1], toks[1][1], ln)
            n = self._lookup_dim(words[3], toks[3][1], ln)
            rows: list = []
            self.ws.add(words[1], _Pending(head, words[1], ln, {"on": words[3], "n": n}, rows))
            self._open_block(rows, n, n)
        elif head == "rep":
            if len(toks) != 7 or words[2] != "of" or words[4] != "on" or words[5] != "dim":
                self.error("expected 'rep NAME of A on dim M'", ln, col)
            self._declare(words[1], toks[1][1], ln)
            src = self.ws.objects.get(words[3])
            if src is None or src.kind != "algebra":
                self.error(f"{words[3]!r} is not an algebra", ln, toks[3][1])
            n = src.info["n"]
            m = self._int(words[6], toks[6][1], ln)
            self.rep = {"name": words[1], "alg": words[3], "n": n, "m": m,
                        "rho": {}, "phi": {}, "line": ln}
            self.ws.add(words[1], _Pending("rep", words[1], ln, self.rep))
        elif re.fullmatch(r"(rho|phi)\[\d+\]:", head):
            if self.rep is None:
                self.error(f"'{head}' outside a rep declaration", ln, col)
            which, i = head[:3], int(head[4:-2])
            if not 1 <= i <= self.rep["n"]:
                self.error(f"index {i} out of range 1..{self.rep['n']}", ln, col + 4)
            if i in self.rep[which]:
                self.error(f"duplicate block {head}", ln, col)
            if len(toks) != 1:
                self.error("rows follow on the next lines", ln, toks[1][1])
            rows = []
            self.rep[which][i] = rows
            self._open_block(rows, self.rep["m"], self.rep["m"])
        elif head == "bialgebra":
            keys = words[2::2]
            if len(toks) != 10 or keys != ["alg", "co", "p", "s"]:
                self.error("expected 'bialgebra NAME alg A co D p P s S'", ln, col)
            self._declare(words[1], toks[1][1], ln)
            vals = dict(zip(keys, words[3::2]))
            for (k, v), (_, c) in zip(vals.items(), toks[3::2]):
                if v not in self.ws:
                    self.error(f"unknown object {v!r}", ln, c)
            self.ws.add(words[1], _Pending("bialgebra", words[1], ln, vals))
        else:
            self.error(f"unknown declaration {head!r}", ln, col)

    def _map(self, toks, ln):
        words = [t for t, _ in toks]
        if len(toks) < 5 or words[2] != "from" or words[-1] != "rows:":
            self.error("expected 'map NAME from SRC [dim M] [weight W] [role ROLE] rows:'", ln, toks[0][1])
        self._declare(words[1], toks[1][1], ln)
        src_dim = self._lookup_dim(words[3], toks[3][1], ln)
        opts: dict = {}
        rest = toks[4:-1]
        if len(rest) % 2:
            self.error("options come in 'key value' pairs", ln, rest[-1][1])
        for (k, kc), (v, vc) in zip(rest[::2], rest[1::2]):
            if k in opts or k not in ("dim", "weight", "role"):
                self.error(f"unexpected option {k!r}", ln, kc)
            if k == "dim":
                opts[k] = self._int(v, vc, ln)
            elif k == "weight":
                opts[k] = _value(v, ln, vc)
            else:
                opts[k] = v
        rows_n = opts.get("dim", src_dim)
        rows: list = []
        self.ws.add(words[1], _Pending("map", words[1], ln,
                                       {"src": words[3], "m": rows_n, "n": src_dim, **opts}, rows))
        self._open_block(rows, rows_n, src_dim)


def _resolve(ws: Workspace) -> Workspace:
    out = Workspace()
    for name, obj in ws.objects.items():
        if not isinstance(obj, _Pending):
            out.add(name, obj)
            continue
        info = obj.info
        if obj.kind == "algebra":
            out.add(name, Algebra(info["tensor"], name))
        elif obj.kind == "coalgebra":
            out.add(name, Coalgebra(info["tensor"], name))
        elif obj.kind == "map":
            mat = el.array(obj.rows, (info["m"], info["n"]))
            out.add(name, LinearMap(mat, info["src"], info.get("weight"), info.get("role")))
        elif obj.kind == "form":
            out.add(name, BilinearForm(el.array(obj.rows, (info["n"], info["n"]))))
            out.anchors[name] = info["on"]
        elif obj.kind == "rtensor":
            out.add(name, RTensor(el.array(obj.rows, (info["n"], info["n"]))))
            out.anchors[name] = info["on"]
        elif obj.kind == "rep":
            n, m = info["n"], info["m"]
            rho, phi = el.zeros(n, m, m), el.zeros(n, m, m)
            for which, arr in (("rho", rho), ("phi", phi)):
                for i, rows in info[which].items():
                    arr[i - 1] = el.array(rows, (m, m))
            out.add(name, Representation(out.get(info["alg"], Algebra), rho, phi))
        elif obj.kind == "bialgebra":
            ref = BialgebraRef(info["alg"], info["co"], info["p"], info["s"])
            alg = out.get(ref.alg, Algebra)
            co = out.get(ref.co, Coalgebra)
            p, s = out.get(ref.p, LinearMap), out.get(ref.s, LinearMap)
            for part in (co.dim, p.matrix.shape[0], p.matrix.shape[1], s.matrix.shape[0], s.matrix.shape[1]):
                if part != alg.dim:
                    raise DimensionMismatch(f"bialgebra {name!r}: parts do not all have dimension {alg.dim}")
            out.add(name, ref)
    return out


def parse_workspace(text: str) -> Workspace:
    return _resolve(_Parser(text).run())


def load_workspace(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


def _rows(m) -> list[str]:
    return ["  " + " ".join(el.fmt(v) for v in row) for row in el.canon(np.asarray(m, dtype=object))]


def _constants(letter: str, t) -> list[str]:
    return [f"{letter} {i + 1} {j + 1} {k + 1} = {el.fmt(v)}"
            for (i, j, k), v in np.ndenumerate(el.canon(t)) if v != 0]


def _owner(ws: Workspace, dim: int) -> str | None:
    for name, obj in ws.objects.items():
        if isinstance(obj, (Algebra, Coalgebra)) and obj.dim == dim:
            return name
    return None


def emit_workspace(ws: Workspace) -> str:
    """Canonical text; ``parse_workspace(emit_workspace(ws)) == ws``.

    Forms and r-tensors added without an anchor are attached to the first
    declared algebra or coalgebra of matching dimension.
    """
    out: list[str] = []
    for name, obj in ws.objects.items():
        if isinstance(obj, Algebra):
            out.append(f"algebra {name} dim {obj.dim}")
            out += _constants("c", obj.product)
        elif isinstance(obj, Coalgebra):
            out.append(f"coalgebra {name} dim {obj.dim}")
            out += _constants("d", obj.coproduct)
        elif isinstance(obj, LinearMap):
            head = f"map {name} from {obj.source}"
            if obj.matrix.shape[0] != obj.matrix.shape[1]:
                head += f" dim {obj.matrix.shape[0]}"
            if obj.weight is not None:
                head += f" weight {el.fmt(obj.weight)}"
            if obj.role is not None:
                head += f" role {obj.role}"
            out.append(head + " rows:")
            out += _rows(obj.matrix)
        elif isinstance(obj, (BilinearForm, RTensor)):
            kind = "form" if isinstance(obj, BilinearForm) else "rtensor"
            on = ws.anchors.get(name) or _owner(ws, obj.dim)
            if on is None:
                raise DimensionMismatch(f"{kind} {name!r} has no space of dimension {obj.dim} to live on")
            out.append(f"{kind} {name} on {on} rows:")
            out += _rows(obj.matrix if kind == "form" else obj.coeff)
        elif isinstance(obj, Representation):
            alg = next((k for k, v in ws.objects.items() if v is obj.alg), None)
            if alg is None:
                alg = next(k for k, v in ws.objects.items() if isinstance(v, Algebra) and v.same_as(obj.alg))
            out.append(f"rep {name} of {alg} on dim {obj.module_dim}")
            for which, arr in (("rho", obj.rho), ("phi", obj.phi)):
                for i in range(arr.shape[0]):
                    if not el.is_zero(arr[i]):
                        out.append(f"{which}[{i + 1}]:")
                        out += _rows(arr[i])
        elif isinstance(obj, BialgebraRef):
            out.append(f"bialgebra {name} alg {obj.alg} co {obj.co} p {obj.p} s {obj.s}")
        else:
            raise TypeError(f"cannot emit {type(obj).__name__} {name!r}")
    return "\n".join(out) + "\n" if out else ""
