"""Invocation points: call sites that reach a method of another class."""
from __future__ import annotations

from dataclasses import dataclass, field

from .semantic import ProgramModel, RawInvocation, is_user_defined


@dataclass(frozen=True)
class InvocationPoint:
    line: int
    text: str
    target_class: str
    user_defined: bool
    enclosing_class: str
    enclosing_method: str  # method name; signature is kept separately
    enclosing_signature: str
    is_constructor: bool
    receiver: str
    raw: RawInvocation = field(repr=False, compare=False)


@dataclass(frozen=True)
class Counts:
    total: int = 0
    user_defined: int = 0

    def add(self, point: InvocationPoint) -> "Counts":
        return Counts(self.total + 1, self.user_defined + int(point.user_defined))


@dataclass
class ClassInvocationSummary:
    class_name: str
    total: Counts
    # (method name, signature, counts) in declaration order, zero counts included
    methods: list[tuple[str, str, Counts]]
    constructors: list[tuple[str, str, Counts]]


@dataclass
class InvocationSummary:
    classes: list[ClassInvocationSummary]

    def for_class(self, name: str) -> ClassInvocationSummary:
        return next(c for c in self.classes if c.class_name == name)


def find_invocation_points(model: ProgramModel) -> list[InvocationPoint]:
    """Cross-class call sites, classes in declaration order and calls in source order.

    A receiver whose type cannot be resolved is reported with its own text as
    target and treated as a platform (non user-defined) class.
    """
    points = []
    for cls in model.ordered():
        members = sorted(cls.members, key=lambda m: m.decl.span.start)
        for m in members:
            for inv in m.invocations:
                target = inv.receiver_type if inv.receiver_type is not None else inv.receiver_text
                if target == cls.name:
                    continue
                points.append(InvocationPoint(
                    line=inv.line,
                    text=inv.text,
                    target_class=target,
                    user_defined=is_user_defined(target, model),
                    enclosing_class=cls.name,
                    enclosing_method=m.name,
                    enclosing_signature=m.signature,
                    is_constructor=m.is_constructor,
                    receiver=inv.receiver_text,
                    raw=inv,
                ))
    return points


def summarize(points: list[InvocationPoint], model: ProgramModel) -> InvocationSummary:
    by_member: dict[tuple[str, str], Counts] = {}
    for p in points:
        key = (p.enclosing_class, p.enclosing_signature)
        by_member[key] = by_member.get(key, Counts()).add(p)
    classes = []
    for cls in model.ordered():
        def rows(members):
            return [(m.name, m.signature, by_member.get((cls.name, m.signature), Counts())) for m in members]
        methods, ctors = rows(cls.methods), rows(cls.constructors)
        total = Counts(
            sum(c.total for _, _, c in methods + ctors),
            sum(c.user_defined for _, _, c in methods + ctors),
        )
        classes.append(ClassInvocationSummary(cls.name, total, methods, ctors))
    return InvocationSummary(classes)
