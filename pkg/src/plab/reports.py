"""Check reports: pass/fail plus a localized witness for the first violation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Witness:
    """First offending basis-index tuple (0-based) with both evaluated sides.

    ``lhs``/``rhs`` are flattened values; ``shape`` restores them.  ``detail``
    carries a short message for conditions that are not index-quantified.
    """

    index: tuple[int, ...]
    lhs: tuple = ()
    rhs: tuple = ()
    shape: tuple[int, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    name: str
    tag: str
    status: str
    witness: Witness | None = None
    children: tuple["CheckReport", ...] = field(default=())
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def child(self, name: str) -> "CheckReport":
        for c in self.children:
            if c.name == name:
                return c
        raise KeyError(name)

    def walk(self) -> Iterator["CheckReport"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def first_failure(self) -> "CheckReport | None":
        """Deepest-first failing leaf, in child order."""
        if self.status != FAIL:
            return None
        for c in self.children:
            f = c.first_failure()
            if f is not None:
                return f
        return self

    def summary(self) -> str:
        line = f"{self.name} [{self.tag}]: {self.status}"
        f = self.first_failure()
        if f is not None and f.witness is not None:
            w = f.witness
            where = f"{f.name} at {tuple(i + 1 for i in w.index)}"
            line += f" ({where}{': ' + w.detail if w.detail else ''})"
        return line


def ok(name: str, tag: str, note: str = "") -> CheckReport:
    return CheckReport(name, tag, PASS, note=note)


def skipped(name: str, tag: str, note: str = "") -> CheckReport:
    return CheckReport(name, tag, SKIPPED, note=note)


def fail(name: str, tag: str, detail: str, lhs=(), rhs=(), index=()) -> CheckReport:
    return CheckReport(name, tag, FAIL, Witness(tuple(index), tuple(lhs), tuple(rhs), (), detail))


def predicate(name: str, tag: str, holds: bool, detail: str = "", lhs=(), rhs=()) -> CheckReport:
    return ok(name, tag) if holds else fail(name, tag, detail, lhs, rhs)


def compare(name: str, tag: str, lhs, rhs, nidx: int) -> CheckReport:
    """Compare two arrays whose leading ``nidx`` axes are quantified basis indices."""
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise ValueError(f"{name}: side shapes differ {lhs.shape} vs {rhs.shape}")
    diff = lhs != rhs
    if not np.any(diff):
        return ok(name, tag)
    if nidx:
        axes = tuple(range(nidx, diff.ndim))
        bad = np.any(diff, axis=axes) if axes else diff
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
    else:
        idx = ()
    lv, rv = lhs[idx], rhs[idx]
    shape = tuple(np.shape(lv))
    return CheckReport(
        name, tag, FAIL,
        Witness(idx, tuple(np.ravel(lv).tolist()), tuple(np.ravel(rv).tolist()), shape),
    )


def vanishes(name: str, tag: str, value, nidx: int) -> CheckReport:
    value = np.asarray(value, dtype=object)
    zero = np.zeros(value.shape, dtype=object)
    zero.fill(0)
    return compare(name, tag, value, zero, nidx)


def all_of(name: str, tag: str, children: Iterable[CheckReport], note: str = "") -> CheckReport:
    children = tuple(children)
    failed = [c for c in children if c.status == FAIL]
    if not failed:
        return CheckReport(name, tag, PASS, None, children, note)
    return CheckReport(name, tag, FAIL, failed[0].first_failure().witness, children, note)


def agreement(name: str, tag: str, children: Iterable[CheckReport], note: str = "") -> CheckReport:
    """Passes iff every child has the same outcome (an equivalence held on this instance)."""
    children = tuple(children)
    outcomes = [c.passed for c in children]
    if len(set(outcomes)) <= 1:
        return CheckReport(name, tag, PASS, None, children, note)
    detail = ", ".join(f"{c.name}={'pass' if c.passed else 'fail'}" for c in children)
    return CheckReport(name, tag, FAIL, Witness((), (), (), (), "outcomes differ: " + detail), children, note)


def implication(name: str, tag: str, hypothesis: CheckReport, conclusion: CheckReport) -> CheckReport:
    """Passes unless the hypothesis holds while the conclusion fails."""
    children = (hypothesis, conclusion)
    if hypothesis.passed and not conclusion.passed:
        return CheckReport(name, tag, FAIL, Witness((), (), (), (), "hypothesis holds but conclusion fails"), children)
    return CheckReport(name, tag, PASS, None, children)
