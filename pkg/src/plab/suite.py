"""Check suites over a workspace, and the machine-readable report format.

A suite is a list of steps.  A step names a check or construction followed by
workspace object names; constructions end with ``as NAME`` and register their
results back into the workspace.  Suite files use the same syntax, one step per
line::

    check_pre_lie UT2
    induced_leibniz UT2 R as L
    check_leibniz L

Machine reports are JSON arrays of records::

    {"check": str, "tag": str, "status": "pass" | "fail" | "skipped",
     "note": str,                                   # only when nonempty
     "witness": {"index": [str], "lhs": [str], "rhs": [str],
                 "shape": [str], "detail": str},    # only when present
     "children": [record]}

Every number, including 1-based witness indices, is a decimal or ``p/q`` string.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import exactlin as el
from .algebra import (Algebra, AveragingAlgebra, check_averaging, check_leibniz, check_lie, check_pre_lie,
                      induced_leibniz, sub_adjacent_lie)
from .bialgebra import (AvgBialgebra, BilinearForm, Coalgebra, bialgebra_to_manin, check_avg_coalgebra,
                        check_avg_lie_bialgebra, check_avg_prelie_bialgebra, check_balanced, check_manin_triple,
                        check_prelie_coalgebra, check_quadratic, induced_lie_bialgebra, verify_rep_isomorphism)
from .errors import ParseError, PlabError, UnknownCheck, UnknownObject
from .matched_pairs import (build_double, build_leibniz_double, check_matched_pair_leibniz,
                            check_matched_pair_prelie, induced_leibniz_matched_pair)
from .reports import FAIL, PASS, SKIPPED, CheckReport, Witness, all_of, compare, fail, ok, skipped
from .representations import (AvgRepresentation, Representation, check_avg_representation,
                              check_beta_admissible, check_prelie_representation, check_S_admissible,
                              semidirect_product)
from .rota_baxter import (QuadraticRB, RBOperator, RelativeRB, build_r_from_qrb, check_avg_on_qrb,
                          check_equiva3, check_quadratic_rb, check_rb, check_relative_rb, descendent_avg_prelie,
                          descendent_product, matched_pair_from_rrb, rota_baxter)
from .workspace import BialgebraRef, LinearMap, Workspace
from .yang_baxter import (RTensor, build_coboundary_avg_bialgebra, check_admissible_cybe,
                          check_combined_conditions, check_factorizable, check_quasi_triangular,
                          check_S_equation, delta_r)

# argument kinds
ALG, MAP, REP, CO, FORM, R, BI = "algebra", "map", "rep", "coalgebra", "form", "rtensor", "bialgebra"
_TYPES = {ALG: Algebra, MAP: LinearMap, REP: Representation, CO: Coalgebra,
          FORM: BilinearForm, R: RTensor, BI: BialgebraRef}


@dataclass(frozen=True)
class Step:
    op: str
    args: tuple[str, ...]
    out: str | None = None

    def __str__(self) -> str:
        s = " ".join((self.op,) + self.args)
        return s + (f" as {self.out}" if self.out else "")


@dataclass(frozen=True)
class Report:
    records: tuple[CheckReport, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.records)


class _Ctx:
    def __init__(self, ws: Workspace):
        self.ws = ws

    def avg(self, a: Algebra, p: LinearMap) -> AveragingAlgebra:
        return AveragingAlgebra(a, p.matrix)

    def avgrep(self, a, p, rep, alpha) -> AvgRepresentation:
        return AvgRepresentation(rep, self.avg(a, p), alpha.matrix)

    def bi(self, ref: BialgebraRef) -> AvgBialgebra:
        ws = self.ws
        return AvgBialgebra(ws[ref.alg], ws[ref.p].matrix, ws[ref.co], ws[ref.s].matrix)


def _weight(b: LinearMap):
    return 0 if b.weight is None else b.weight


def _qrb(a, b, form) -> QuadraticRB:
    return QuadraticRB(RBOperator(a, b.matrix, _weight(b)), form)


def _rrb(cx, a, p, rep, alpha, t) -> RelativeRB:
    return RelativeRB(cx.avg(a, p), cx.avgrep(a, p, rep, alpha), t.matrix)


def _halves(n: int):
    return list(range(n // 2)), list(range(n // 2, n))


def _leibniz_double_agrees(mp) -> CheckReport:
    """Induced Leibniz of the double versus the double of the induced Leibniz matched pair."""
    lmp = induced_leibniz_matched_pair(mp)
    lhs = induced_leibniz(build_double(mp)).product
    rhs = build_leibniz_double(lmp).product
    return all_of("Leibniz double", "induced Leibniz matched pair", [
        check_matched_pair_leibniz(lmp), compare("double agreement", "induced Leibniz of the double", lhs, rhs, 3)])


# name -> (argument kinds, runner).  Checks return a CheckReport; constructions
# (marked by a leading "+") return a dict of suffix -> object to register.
CHECKS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "check_pre_lie": ((ALG,), lambda cx, a: check_pre_lie(a)),
    "check_lie": ((ALG,), lambda cx, a: check_lie(a)),
    "check_leibniz": ((ALG,), lambda cx, a: check_leibniz(a)),
    "check_averaging": ((ALG, MAP), lambda cx, a, p: check_averaging(a, p.matrix)),
    "check_prelie_representation": ((REP,), lambda cx, rep: check_prelie_representation(rep.alg, rep)),
    "check_avg_representation": ((ALG, MAP, REP, MAP),
                                 lambda cx, a, p, rep, al: check_avg_representation(cx.avgrep(a, p, rep, al))),
    "check_S_admissible": ((ALG, MAP, MAP), lambda cx, a, p, s: check_S_admissible(cx.avg(a, p), s.matrix)),
    "check_beta_admissible": ((ALG, MAP, REP, MAP),
                              lambda cx, a, p, rep, b: check_beta_admissible(cx.avg(a, p), rep, b.matrix)),
    "check_prelie_coalgebra": ((CO,), lambda cx, d: check_prelie_coalgebra(d)),
    "check_avg_coalgebra": ((CO, MAP), lambda cx, d, s: check_avg_coalgebra(d, s.matrix)),
    "check_avg_prelie_bialgebra": ((BI,), lambda cx, b: check_avg_prelie_bialgebra(cx.bi(b))),
    "check_balanced": ((BI,), lambda cx, b: check_balanced(cx.ws[b.alg], cx.ws[b.co])),
    "check_avg_lie_bialgebra": ((ALG, CO, MAP, MAP),
                                lambda cx, a, d, p, s: check_avg_lie_bialgebra(a, d, p.matrix, s.matrix)),
    "check_quadratic": ((ALG, FORM, MAP), lambda cx, a, om, p: check_quadratic(a, om, p.matrix)),
    "verify_rep_isomorphism": ((ALG, MAP, FORM), lambda cx, a, p, om: verify_rep_isomorphism(cx.avg(a, p), om)),
    "check_manin_triple": ((ALG, MAP, FORM),
                           lambda cx, a, p, om: check_manin_triple(cx.avg(a, p), om, *_halves(a.dim))),
    "check_S_equation": ((ALG, R), lambda cx, a, r: check_S_equation(a, r)),
    "check_quasi_triangular": ((ALG, R), lambda cx, a, r: check_quasi_triangular(a, r)),
    "check_factorizable": ((ALG, R), lambda cx, a, r: check_factorizable(a, r)),
    "check_admissible_cybe": ((ALG, MAP, MAP, R),
                              lambda cx, a, p, s, r: check_admissible_cybe(cx.avg(a, p), s.matrix, r)),
    "check_combined_conditions": ((ALG, MAP, MAP, R),
                                  lambda cx, a, p, s, r: check_combined_conditions(cx.avg(a, p), s.matrix, r)),
    "check_rb": ((ALG, MAP), lambda cx, a, b: check_rb(a, b.matrix, _weight(b))),
    "check_quadratic_rb": ((ALG, MAP, FORM), lambda cx, a, b, om: check_quadratic_rb(_qrb(a, b, om))),
    "check_avg_on_qrb": ((ALG, MAP, FORM, MAP),
                         lambda cx, a, b, om, p: check_avg_on_qrb(_qrb(a, b, om), p.matrix)),
    "check_relative_rb": ((ALG, MAP, REP, MAP, MAP),
                          lambda cx, a, p, rep, al, t: check_relative_rb(_rrb(cx, a, p, rep, al, t))),
    "check_rrb_matched_pair": ((ALG, MAP, REP, MAP, MAP),
                               lambda cx, a, p, rep, al, t: all_of(
                                   "matched pair from relative Rota-Baxter", "descendent matched pair", [
                                       check_matched_pair_prelie(mp := matched_pair_from_rrb(
                                           _rrb(cx, a, p, rep, al, t))),
                                       _leibniz_double_agrees(mp)])),
    "check_equiva3": ((ALG, MAP, REP, MAP, MAP, MAP),
                      lambda cx, a, p, rep, s, al, be: check_equiva3(cx.avg(a, p), rep, s.matrix, al.matrix,
                                                                      be.matrix)),
    "+induced_leibniz": ((ALG, MAP), lambda cx, a, p: {"": induced_leibniz(cx.avg(a, p))}),
    "+sub_adjacent_lie": ((ALG,), lambda cx, a: {"": sub_adjacent_lie(a)}),
    "+delta_r": ((ALG, R), lambda cx, a, r: {"": delta_r(a, r)}),
    "+descendent_product": ((ALG, MAP), lambda cx, a, b: {"": descendent_product(rota_baxter(a, b.matrix,
                                                                                             _weight(b)))}),
    "+semidirect_product": ((ALG, MAP, REP, MAP), lambda cx, a, p, rep, al: _avg_out(
        semidirect_product(cx.avg(a, p), cx.avgrep(a, p, rep, al)))),
    "+descendent_avg_prelie": ((ALG, MAP, REP, MAP, MAP), lambda cx, a, p, rep, al, t: _avg_out(
        descendent_avg_prelie(_rrb(cx, a, p, rep, al, t)))),
    "+coboundary_bialgebra": ((ALG, MAP, MAP, R), lambda cx, a, p, s, r: _bi_out(
        build_coboundary_avg_bialgebra(cx.avg(a, p), s.matrix, r))),
    "+manin_double": ((BI,), lambda cx, b: _manin_out(bialgebra_to_manin(cx.bi(b)))),
    "+induced_lie_bialgebra": ((BI,), lambda cx, b: _lie_out(induced_lie_bialgebra(cx.bi(b)))),
    "+r_from_qrb": ((ALG, MAP, FORM), lambda cx, a, b, om: {"": build_r_from_qrb(_qrb(a, b, om))}),
}


def _avg_out(avg: AveragingAlgebra) -> dict:
    return {"": avg.base, ".P": avg.op}


def _bi_out(bi: AvgBialgebra) -> dict:
    return {".alg": bi.alg, ".co": bi.co, ".P": bi.p, ".S": bi.s, "": "bialgebra"}


def _manin_out(res) -> dict:
    total, form, _ = res
    return {"": total.base, ".P": total.op, ".form": form}


def _lie_out(lie) -> dict:
    return {"": lie.lie, ".delta": lie.delta, ".P": lie.p, ".S": lie.s}


def check_names() -> list[str]:
    return sorted(k.lstrip("+") for k in CHECKS)


def _lookup(op: str):
    for key in (op, "+" + op):
        if key in CHECKS:
            return key, CHECKS[key]
    raise UnknownCheck(f"unknown check or construction {op!r}")


def _outputs(step: Step) -> list[str]:
    if step.out is None:
        return []
    key, _ = _lookup(step.op)
    probe = {"+coboundary_bialgebra": ["", ".alg", ".co", ".P", ".S"],
             "+manin_double": ["", ".P", ".form"],
             "+induced_lie_bialgebra": ["", ".delta", ".P", ".S"],
             "+semidirect_product": ["", ".P"], "+descendent_avg_prelie": ["", ".P"]}.get(key, [""])
    return [step.out + suffix for suffix in probe]


def parse_suite(text: str) -> list[Step]:
    steps = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        out = None
        if "as" in words:
            k = words.index("as")
            if k != len(words) - 2:
                raise ParseError("'as NAME' must end the step", ln, raw.index("as") + 1)
            out = words[-1]
            words = words[:k]
        steps.append(Step(words[0], tuple(words[1:]), out))
    return steps


def _order(ws: Workspace, steps: list[Step]) -> list[Step]:
    """Validate names and sort steps so producers run before consumers (stable otherwise)."""
    producer: dict[str, int] = {}
    for i, st in enumerate(steps):
        key, (kinds, _) = _lookup(st.op)
        if len(st.args) != len(kinds):
            raise UnknownCheck(f"{st.op} takes {len(kinds)} arguments ({', '.join(kinds)}), got {len(st.args)}")
        if key.startswith("+") and st.out is None:
            raise UnknownCheck(f"construction {st.op} needs 'as NAME'")
        for name in _outputs(st):
            producer[name] = i
    deps = []
    for i, st in enumerate(steps):
        d = set()
        for name in st.args:
            if name in producer and producer[name] != i:
                d.add(producer[name])
            elif name not in ws:
                raise UnknownObject(f"step '{st}' refers to unknown object {name!r}")
        deps.append(d)
    done: list[int] = []
    pending = list(range(len(steps)))
    while pending:
        ready = [i for i in pending if deps[i] <= set(done)]
        if not ready:
            raise UnknownObject("suite has a dependency cycle")
        done.append(ready[0])
        pending.remove(ready[0])
    return [steps[i] for i in done]


def run_suite(ws: Workspace, steps: list[Step] | str) -> Report:
    """Run steps in dependency order; outputs are registered into ``ws``.

    A check whose input comes from a failed construction is recorded as skipped.
    """
    if isinstance(steps, str):
        steps = preset(ws, steps) if steps in PRESETS or steps == "all" else parse_suite(steps)
    cx = _Ctx(ws)
    records = []
    failed: set[str] = set()
    for st in _order(ws, steps):
        key, (kinds, fn) = _lookup(st.op)
        label = str(st)
        missing = [a for a in st.args if a in failed]
        if missing:
            records.append(skipped(label, st.op, f"input {missing[0]!r} was not constructed"))
            failed.update(_outputs(st))
            continue
        try:
            args = []
            for name, kind in zip(st.args, kinds):
                obj = ws[name]
                if not isinstance(obj, _TYPES[kind]):
                    raise UnknownObject(f"{name!r} is a {type(obj).__name__}, expected {kind}")
                args.append(obj)
            result = fn(cx, *args)
        except UnknownObject:
            raise
        except PlabError as e:
            records.append(fail(label, st.op, str(e)))
            failed.update(_outputs(st))
            continue
        if key.startswith("+"):
            _register(ws, st.out, result, st.args[0])
            records.append(ok(label, st.op, "constructed " + ", ".join(st.out + s for s in result)))
        else:
            records.append(_rename(result, label))
    return Report(tuple(records))


def _register(ws: Workspace, base: str, result: dict, src: str) -> None:
    """Maps, forms and r-tensors hang off the newest registered algebra, else the first input."""
    for suffix, obj in result.items():
        name = base + suffix
        if isinstance(obj, Algebra):
            obj = Algebra(obj.product, name)
        elif isinstance(obj, Coalgebra):
            obj = Coalgebra(obj.coproduct, name)
        elif isinstance(obj, str):
            ws.add(name, BialgebraRef(base + ".alg", base + ".co", base + ".P", base + ".S"))
            continue
        elif not isinstance(obj, (BilinearForm, RTensor)):
            obj = LinearMap(el.array(obj), src)
        ws.add(name, obj)
        if isinstance(obj, (BilinearForm, RTensor)):
            ws.anchors[name] = src
        if isinstance(obj, Algebra):
            src = name


def _rename(rep: CheckReport, label: str) -> CheckReport:
    return CheckReport(label, rep.tag if rep.name == rep.tag else f"{rep.name}: {rep.tag}", rep.status,
                       rep.witness, (rep,) if rep.children or rep.witness else (), rep.note)


# ---------------------------------------------------------------- presets

def _maps(ws: Workspace, source: str, role: str | None = None) -> list[str]:
    return [n for n, o in ws.objects.items()
            if isinstance(o, LinearMap) and o.source == source and (role is None or o.role == role)]


def _of(ws: Workspace, kind) -> list[str]:
    return [n for n, o in ws.objects.items() if isinstance(o, kind)]


def _alg_name(ws: Workspace, alg: Algebra) -> str:
    return next(n for n, o in ws.objects.items() if o is alg)


def _pre_lie_steps(ws):
    out = [Step("check_pre_lie", (a,)) for a in _of(ws, Algebra)]
    out += [Step("check_prelie_coalgebra", (d,)) for d in _of(ws, Coalgebra)]
    out += [Step("check_prelie_representation", (r,)) for r in _of(ws, Representation)]
    return out


def _rep_ctx(ws):
    """(algebra, averaging map, rep, alpha) for every rep with an averaging companion."""
    out = []
    for rep in _of(ws, Representation):
        a = _alg_name(ws, ws[rep].alg)
        ps, als = _maps(ws, a, "averaging"), _maps(ws, rep, "averaging")
        if ps and als:
            out.append((a, ps[0], rep, als[0]))
    return out


def _averaging_steps(ws):
    out = []
    for a in _of(ws, Algebra):
        for p in _maps(ws, a, "averaging"):
            out += [Step("check_averaging", (a, p)),
                    Step("induced_leibniz", (a, p), f"{a}.{p}.leibniz"),
                    Step("check_leibniz", (f"{a}.{p}.leibniz",))]
    for a, p, rep, al in _rep_ctx(ws):
        sd = f"{a}.{rep}.semidirect"
        out += [Step("check_avg_representation", (a, p, rep, al)),
                Step("semidirect_product", (a, p, rep, al), sd),
                Step("check_averaging", (sd, sd + ".P"))]
    return out


def _bialgebra_steps(ws):
    out = []
    for b in _of(ws, BialgebraRef):
        ref = ws[b]
        out += [Step("check_avg_prelie_bialgebra", (b,)),
                Step("check_avg_coalgebra", (ref.co, ref.s)),
                Step("check_balanced", (b,)),
                Step("induced_lie_bialgebra", (b,), f"{b}.lie"),
                Step("check_avg_lie_bialgebra", (f"{b}.lie", f"{b}.lie.delta", f"{b}.lie.P", f"{b}.lie.S"))]
        if ref.p == ref.s:
            out += [Step("manin_double", (b,), f"{b}.double"),
                    Step("check_manin_triple", (f"{b}.double", f"{b}.double.P", f"{b}.double.form")),
                    Step("verify_rep_isomorphism", (f"{b}.double", f"{b}.double.P", f"{b}.double.form"))]
    return out


def _cybe_steps(ws):
    out = []
    for r in _of(ws, RTensor):
        a = ws.anchors.get(r)
        if not isinstance(ws.objects.get(a), Algebra):
            continue
        out.append(Step("check_S_equation", (a, r)))
        for p in _maps(ws, a, "averaging"):
            out += [Step("check_S_admissible", (a, p, p)),
                    Step("check_admissible_cybe", (a, p, p, r)),
                    Step("check_combined_conditions", (a, p, p, r)),
                    Step("coboundary_bialgebra", (a, p, p, r), f"{r}.bi"),
                    Step("check_avg_prelie_bialgebra", (f"{r}.bi",))]
    return out


def _rb_steps(ws):
    out = []
    for a in _of(ws, Algebra):
        for b in _maps(ws, a, "rb"):
            out += [Step("check_rb", (a, b)), Step("descendent_product", (a, b), f"{a}.{b}.descendent"),
                    Step("check_pre_lie", (f"{a}.{b}.descendent",))]
            for om in (n for n in _of(ws, BilinearForm) if ws.anchors.get(n) == a):
                out.append(Step("check_quadratic_rb", (a, b, om)))
    for a, p, rep, al in _rep_ctx(ws):
        for t in _maps(ws, rep, "relative-rb"):
            out += [Step("check_relative_rb", (a, p, rep, al, t)),
                    Step("descendent_avg_prelie", (a, p, rep, al, t), f"{t}.descendent"),
                    Step("check_averaging", (f"{t}.descendent", f"{t}.descendent.P")),
                    Step("check_rrb_matched_pair", (a, p, rep, al, t))]
    return out


PRESETS: dict[str, Callable[[Workspace], list[Step]]] = {
    "preLie": _pre_lie_steps,
    "averaging": _averaging_steps,
    "bialgebra": _bialgebra_steps,
    "cybe": _cybe_steps,
    "rota-baxter": _rb_steps,
}


def preset(ws: Workspace, name: str) -> list[Step]:
    if name == "all":
        steps: list[Step] = []
        for fn in PRESETS.values():
            steps += [s for s in fn(ws) if s not in steps]
        return steps
    if name not in PRESETS:
        raise UnknownCheck(f"unknown suite {name!r}; choose from {', '.join(list(PRESETS) + ['all'])}")
    return PRESETS[name](ws)


# ---------------------------------------------------------------- reports

def _s(v) -> str:
    return el.fmt(el.q(v))


def _record(r: CheckReport) -> dict:
    out: dict = {"check": r.name, "tag": r.tag, "status": r.status}
    if r.note:
        out["note"] = r.note
    if r.witness is not None:
        w = r.witness
        out["witness"] = {"index": [str(i + 1) for i in w.index], "lhs": [_s(v) for v in w.lhs],
                          "rhs": [_s(v) for v in w.rhs], "shape": [str(k) for k in w.shape],
                          "detail": w.detail}
    out["children"] = [_record(c) for c in r.children]
    return out


def _text(r: CheckReport, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    line = f"{pad}{r.status.upper():7} {r.name} [{r.tag}]"
    if r.note:
        line += f" ({r.note})"
    lines.append(line)
    w = r.witness
    if w is not None and (r.status == FAIL and (not r.children or w.detail)):
        if w.index:
            lines.append(f"{pad}        at {tuple(i + 1 for i in w.index)}: lhs={[_s(v) for v in w.lhs]} "
                         f"rhs={[_s(v) for v in w.rhs]}")
        if w.detail:
            lines.append(f"{pad}        {w.detail}")
    if r.status == FAIL:
        for c in r.children:
            _text(c, depth + 1, lines)


def emit_report(rep: Report, fmt: str = "text") -> bytes:
    if fmt in ("json", "machine"):
        doc = json.dumps([_record(r) for r in rep.records], indent=1, ensure_ascii=False, sort_keys=True)
        return (doc + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines: list[str] = []
    for r in rep.records:
        _text(r, 0, lines)
    n_fail = sum(r.status == FAIL for r in rep.records)
    lines.append(f"{len(rep.records)} checks, {n_fail} failed")
    return ("\n".join(lines) + "\n").encode()


def _value(s: str):
    return el.q(Fraction(s))


def _unrecord(d: dict) -> CheckReport:
    w = d.get("witness")
    wit = None
    if w is not None:
        wit = Witness(tuple(int(i) - 1 for i in w["index"]), tuple(_value(v) for v in w["lhs"]),
                      tuple(_value(v) for v in w["rhs"]), tuple(int(k) for k in w["shape"]), w["detail"])
    if d["status"] not in (PASS, FAIL, SKIPPED):
        raise ValueError(f"bad status {d['status']!r}")
    return CheckReport(d["check"], d["tag"], d["status"], wit,
                       tuple(_unrecord(c) for c in d.get("children", [])), d.get("note", ""))


def parse_report(data: bytes | str) -> Report:
    if isinstance(data, bytes):
        data = data.decode()
    return Report(tuple(_unrecord(d) for d in json.loads(data)))
