"""Parameter-coupling detection and class-level integration metrics."""
from __future__ import annotations

from dataclasses import dataclass

from .semantic import ClassInfo, MethodInfo, ProgramModel, is_user_defined


@dataclass(frozen=True)
class CouplingMethod:
    method: MethodInfo
    coupling_params: tuple[tuple[str, str], ...]  # (param name, class name)

    @property
    def self_coupled(self) -> bool:
        return any(cls == self.method.owner for _, cls in self.coupling_params)


@dataclass(frozen=True)
class ClassMetrics:
    class_name: str
    method_count: int
    constructor_count: int
    max_params_over_methods: int
    coupling_degree: int
    base_names: tuple[str, ...]
    base_count: int


@dataclass(frozen=True)
class UsageStats:
    # class name -> count, in class declaration order
    times_as_method_parameter: dict[str, int]
    times_as_variable_type: dict[str, int]
    most_used: str | None


def _coupling(method: MethodInfo, model: ProgramModel) -> CouplingMethod | None:
    params = tuple((p.name, p.type_name) for p in method.params if is_user_defined(p.type_name, model))
    return CouplingMethod(method, params) if params else None


def find_coupling_methods(model: ProgramModel) -> list[CouplingMethod]:
    """Non-constructor methods taking at least one user-defined class, in declaration order.

    Visibility is ignored and a parameter of the method's own class counts.
    """
    out = []
    for cls in model.ordered():
        for m in cls.methods:
            cm = _coupling(m, model)
            if cm is not None:
                out.append(cm)
    return out


def find_coupling_constructors(model: ProgramModel) -> list[CouplingMethod]:
    out = []
    for cls in model.ordered():
        for m in cls.constructors:
            cm = _coupling(m, model)
            if cm is not None:
                out.append(cm)
    return out


def class_metrics(model: ProgramModel, cls: ClassInfo | str) -> ClassMetrics:
    if isinstance(cls, str):
        cls = model.classes[cls]
    members = cls.members
    coupled = {
        p.type_name
        for m in members
        for p in m.params
        if is_user_defined(p.type_name, model) and p.type_name != cls.name
    }
    return ClassMetrics(
        class_name=cls.name,
        method_count=len(cls.methods),
        constructor_count=len(cls.constructors),
        max_params_over_methods=max((len(m.params) for m in members), default=0),
        coupling_degree=len(coupled),
        base_names=cls.base_names,
        base_count=len(cls.base_names),
    )


def usage_stats(model: ProgramModel) -> UsageStats:
    """How often each class is a parameter type and a local variable type.

    Constructors count on the parameter side.  The most-used class maximises
    the parameter count, then the variable-type count, then comes first in
    declaration order.
    """
    as_param = {name: 0 for name in model.declaration_order}
    as_var = {name: 0 for name in model.declaration_order}
    for cls in model.ordered():
        for m in cls.members:
            for p in m.params:
                if p.type_name in as_param:
                    as_param[p.type_name] += 1
            for local in m.locals:
                if local.type_name in as_var:
                    as_var[local.type_name] += 1
    most_used = None
    best = None
    for name in model.declaration_order:
        key = (as_param[name], as_var[name])
        if best is None or key > best:
            best, most_used = key, name
    return UsageStats(as_param, as_var, most_used)
