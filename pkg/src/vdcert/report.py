"""Certificate items, targets and the two-precision verdict logic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CertificateFailure, VdcertError
from .numerics import DirectedReal, check_ge, check_gt, check_le, check_lt

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


@dataclass(frozen=True)
class Target:
    """A published value together with the relation a computed value must satisfy.

    ``relation`` is one of ``<=``, ``<``, ``>=``, ``>``, ``in`` (closed
    interval, two values), ``digits`` (the enclosure must lie in
    ``[v, v + 10^-d)`` where ``d`` is the number of printed decimals, i.e.
    the printed digits are a truncation of the true value) or ``info``.
    Values are decimal strings, or ``DirectedReal`` for comparisons between
    two computed quantities.
    """

    relation: str
    values: tuple = ()
    label: str = ""

    def text(self) -> str:
        if self.relation == "info":
            return self.label
        shown = [self.label or _show(v) for v in self.values] if len(self.values) == 1 else [_show(v) for v in self.values]
        if self.relation == "in":
            return f"in [{shown[0]}, {shown[1]}]"
        if self.relation == "digits":
            return f"= {shown[0]}..."
        return f"{self.relation} {shown[0]}"

    def holds(self, value: DirectedReal) -> bool | None:
        rel = self.relation
        if rel == "info":
            return None
        if rel == "<=":
            return check_le(value, self.values[0])
        if rel == "<":
            return check_lt(value, self.values[0])
        if rel == ">=":
            return check_ge(value, self.values[0])
        if rel == ">":
            return check_gt(value, self.values[0])
        if rel == "in":
            return check_ge(value, self.values[0]) and check_le(value, self.values[1])
        if rel == "digits":
            text = self.values[0]
            decimals = len(text.split(".")[1]) if "." in text else 0
            low = Fraction(text)
            high = low + Fraction(1, 10 ** decimals)
            if low < 0:
                low, high = low - Fraction(1, 10 ** decimals), low
            return check_ge(value, low) and check_lt(value, high)
        raise ValueError(f"unknown relation {rel!r}")


def _show(value) -> str:
    if isinstance(value, DirectedReal):
        return f"{float(value.hi):.10g}"
    return str(value)


def le(value, label: str = "") -> Target:
    return Target("<=", (value,), label)


def lt(value, label: str = "") -> Target:
    return Target("<", (value,), label)


def ge(value, label: str = "") -> Target:
    return Target(">=", (value,), label)


def gt(value, label: str = "") -> Target:
    return Target(">", (value,), label)


def within(low, high) -> Target:
    return Target("in", (low, high))


def digits(value: str) -> Target:
    return Target("digits", (value,))


def info(label: str = "") -> Target:
    return Target("info", (), label)


@dataclass(frozen=True)
class CheckItem:
    name: str
    target: Target
    value: DirectedReal | None
    passed: bool | None
    note: str = ""

    @property
    def verdict(self) -> str:
        if self.passed is None:
            return INFO
        return PASS if self.passed else FAIL


def check(name: str, target: Target, value: DirectedReal, note: str = "") -> CheckItem:
    return CheckItem(name, target, value, target.holds(value), note)


def guarded(name: str, target: Target, compute: Callable[[], DirectedReal]) -> CheckItem:
    """Evaluate ``compute`` and compare; numerical errors become a failed item."""
    try:
        value = compute()
    except VdcertError as exc:
        return CheckItem(name, target, None, False if target.relation != "info" else None, f"{type(exc).__name__}: {exc}")
    return check(name, target, value)


@dataclass
class Certificate:
    """A named list of checked items plus the intermediate values behind them."""

    name: str
    items: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(item.passed is not False for item in self.items)

    def failures(self) -> list:
        return [item for item in self.items if item.passed is False]

    def require(self) -> "Certificate":
        if not self.passed:
            names = ", ".join(item.name for item in self.failures())
            raise CertificateFailure(f"{self.name}: failed {names}", self)
        return self

    def add(self, item: CheckItem) -> CheckItem:
        self.items.append(item)
        return item


def finish(certificate: Certificate, strict: bool) -> Certificate:
    return certificate.require() if strict else certificate


def merge_precisions(primary: Sequence[CheckItem], confirm: Sequence[CheckItem]) -> list:
    """Combine the same item list computed at two precisions.

    An item passes only if it passes at both precisions; the reported
    enclosure is the primary one.
    """
    if [i.name for i in primary] != [i.name for i in confirm]:
        raise VdcertError("item lists differ between precisions")
    merged = []
    for first, second in zip(primary, confirm):
        if first.passed is None and second.passed is None:
            passed = None
        else:
            passed = bool(first.passed) and bool(second.passed)
        note = first.note
        if first.passed != second.passed:
            note = (note + "; " if note else "") + "verdicts differ between precisions"
        merged.append(CheckItem(first.name, first.target, first.value, passed, note))
    return merged
