"""Resolved program model: classes, inheritance, fields, def/use sets, calls."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .syntax import (
    Assign, Block, Call, ClassDecl, Expr, IncDec, LocalDecl, Member, MethodDecl, Name,
    New, Param, Paren, Span, Stmt, SyntaxTree, This, child_stmts, stmt_exprs, sub_exprs,
)

DEFAULT_BUILTIN_CLASSES = ("Console", "DateTime", "TimeSpan", "Clock")


class SemanticError(Exception):
    def __init__(self, message: str, path: str = "<string>", line: int = 0):
        super().__init__(f"{path}:{line}: {message}")
        self.message = message
        self.path = path
        self.line = line


@dataclass(frozen=True)
class FieldInfo:
    name: str
    type_name: str
    declaring_class: str
    declaration_index: int
    line: int = 0


@dataclass(frozen=True)
class RawInvocation:
    line: int
    receiver_text: str
    callee: str
    arg_count: int
    text: str
    # declared type of the receiver; None when it cannot be resolved
    receiver_type: Optional[str]
    span: Span
    stmt_span: Span  # statement that holds the call, always a direct child of a block


@dataclass(frozen=True)
class LocalVar:
    name: str
    type_name: str
    line: int


@dataclass(eq=False)
class MethodInfo:
    owner: str
    name: str
    signature: str
    params: tuple[Param, ...]
    is_constructor: bool
    decl: MethodDecl
    defs: dict[FieldInfo, list[int]] = field(default_factory=dict)
    uses: dict[FieldInfo, list[int]] = field(default_factory=dict)
    invocations: list[RawInvocation] = field(default_factory=list)
    locals: list[LocalVar] = field(default_factory=list)

    @property
    def qualified(self) -> str:
        return f"{self.owner}.{self.name}"

    def __repr__(self) -> str:
        return f"MethodInfo({self.owner}:{self.signature})"


@dataclass(eq=False)
class ClassInfo:
    name: str
    base: Optional[str]
    base_names: tuple[str, ...]
    own_fields: list[FieldInfo]
    effective_fields: list[FieldInfo]
    constructors: list[MethodInfo]
    methods: list[MethodInfo]
    decl: ClassDecl
    source_path: str

    def field(self, name: str) -> Optional[FieldInfo]:
        for f in self.effective_fields:
            if f.name == name:
                return f
        return None

    def field_position(self, f: FieldInfo) -> int:
        """Position in effective_fields: base fields first, then own, textual order."""
        return self.effective_fields.index(f)

    @property
    def members(self) -> list[MethodInfo]:
        return self.constructors + self.methods


@dataclass
class ProgramModel:
    classes: dict[str, ClassInfo]
    declaration_order: list[str]
    unresolved_bases: dict[str, str] = field(default_factory=dict)
    builtin_classes: tuple[str, ...] = DEFAULT_BUILTIN_CLASSES

    def ordered(self) -> list[ClassInfo]:
        return [self.classes[n] for n in self.declaration_order]


def is_user_defined(type_name: str, model: ProgramModel) -> bool:
    return bool(type_name) and type_name in model.classes


# -- per-method extraction --------------------------------------------------

def _receiver_text(expr: Optional[Expr], source: str) -> str:
    if expr is None:
        return "this"
    return " ".join(source[expr.span.start:expr.span.end].split())


class _BodyWalker:
    """One pass over a method body collecting field defs/uses, calls and locals.

    Locals and parameters shadow fields of the same name for the rest of
    their scope; ``this.f`` always names the field.
    """

    def __init__(self, method: MethodDecl, owner: ClassInfo, model: Optional[ProgramModel], source: str):
        self.method = method
        self.owner = owner
        self.model = model
        self.source = source
        self.scopes: list[dict[str, str]] = [{p.name: p.type_name for p in method.params}]
        self.defs: dict[FieldInfo, list[int]] = {}
        self.uses: dict[FieldInfo, list[int]] = {}
        self.calls: list[RawInvocation] = []
        self.locals: list[LocalVar] = []
        self._stmt_span: Optional[Span] = None

    def run(self) -> "_BodyWalker":
        self._block(self.method.body)
        return self

    # scopes

    def _lookup_local(self, name: str) -> Optional[str]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def _field_of(self, expr: Expr) -> Optional[FieldInfo]:
        if isinstance(expr, Name):
            if self._lookup_local(expr.name) is not None:
                return None
            return self.owner.field(expr.name)
        if isinstance(expr, Member) and isinstance(expr.target, This):
            return self.owner.field(expr.name)
        return None

    @staticmethod
    def _record(table: dict[FieldInfo, list[int]], f: FieldInfo, line: int) -> None:
        table.setdefault(f, []).append(line)

    # statements

    def _block(self, block: Block) -> None:
        outer = self._stmt_span
        self.scopes.append({})
        for stmt in block.stmts:
            self._stmt_span = stmt.span
            self._stmt(stmt)
        self.scopes.pop()
        self._stmt_span = outer

    def _embedded(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self._block(stmt)
            return
        self.scopes.append({})
        self._stmt(stmt)
        self.scopes.pop()

    def _stmt(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self._block(stmt)
            return
        if isinstance(stmt, LocalDecl):
            for d in stmt.declarators:
                if d.init is not None:
                    self._expr(d.init)
                self.scopes[-1][d.name] = stmt.type_name
                self.locals.append(LocalVar(d.name, stmt.type_name, d.line))
            return
        if isinstance(stmt, (Assign, IncDec)):
            self._write(stmt.target, compound=isinstance(stmt, IncDec) or stmt.op != "=")
            if isinstance(stmt, Assign):
                self._expr(stmt.value)
            return
        for expr in stmt_exprs(stmt):
            self._expr(expr)
        for child in child_stmts(stmt):
            self._embedded(child)

    def _write(self, target: Expr, compound: bool) -> None:
        f = self._field_of(target)
        if f is not None:
            line = target.span.start_line
            self._record(self.defs, f, line)
            if compound:
                self._record(self.uses, f, line)
        elif isinstance(target, Member):
            self._expr(target.target)

    # expressions

    def _expr(self, expr: Expr) -> None:
        f = self._field_of(expr)
        if f is not None:
            self._record(self.uses, f, expr.span.start_line)
            return
        if isinstance(expr, Call):
            self.calls.append(self._invocation(expr))
        for sub in sub_exprs(expr):
            self._expr(sub)

    def _invocation(self, call: Call) -> RawInvocation:
        assert self._stmt_span is not None
        return RawInvocation(
            line=call.line,
            receiver_text=_receiver_text(call.receiver, self.source),
            callee=call.name,
            arg_count=len(call.args),
            text=call.text,
            receiver_type=self._type_of(call.receiver),
            span=call.span,
            stmt_span=self._stmt_span,
        )

    def _type_of(self, expr: Optional[Expr]) -> Optional[str]:
        if expr is None or isinstance(expr, This):
            return self.owner.name
        if isinstance(expr, Paren):
            return self._type_of(expr.inner)
        if isinstance(expr, New):
            return expr.type_name
        if isinstance(expr, Name):
            local = self._lookup_local(expr.name)
            if local is not None:
                return local
            f = self.owner.field(expr.name)
            if f is not None:
                return f.type_name
            # a bare name that is not a variable is a static class receiver
            if self.model is not None and (
                expr.name in self.model.classes or expr.name in self.model.builtin_classes
            ):
                return expr.name
            if expr.name[:1].isupper():
                return expr.name
            return None
        if isinstance(expr, Member) and isinstance(expr.target, This):
            f = self.owner.field(expr.name)
            return f.type_name if f is not None else None
        return None


def extract_def_use(
    method: MethodDecl, owner: ClassInfo, source: str = ""
) -> tuple[dict[FieldInfo, list[int]], dict[FieldInfo, list[int]]]:
    """Flow-insensitive field defs and uses of *method*, with occurrence lines."""
    w = _BodyWalker(method, owner, None, source).run()
    return w.defs, w.uses


def extract_invocations(
    method: MethodDecl, owner: ClassInfo, model: Optional[ProgramModel] = None, source: str = ""
) -> list[RawInvocation]:
    """Every call expression in the body, nested calls included; `new` is not a call."""
    return _BodyWalker(method, owner, model, source).run().calls


# -- model assembly ---------------------------------------------------------

def _check_cycles(decls: dict[str, tuple[ClassDecl, str]]) -> None:
    for name in decls:
        seen = [name]
        cur = decls[name][0].base_names[0] if decls[name][0].base_names else None
        while cur is not None and cur in decls:
            if cur in seen:
                decl, path = decls[name]
                chain = " -> ".join(seen + [cur])
                raise SemanticError(f"inheritance cycle: {chain}", path, decl.name_line)
            seen.append(cur)
            bases = decls[cur][0].base_names
            cur = bases[0] if bases else None


def build_model(
    trees: Iterable[SyntaxTree],
    sources: Optional[dict[str, str]] = None,
    builtin_classes: Iterable[str] = DEFAULT_BUILTIN_CLASSES,
) -> ProgramModel:
    """Resolve classes across *trees*.

    *sources* maps each tree's ``source_path`` to its text; it is only used
    to recover receiver text for call sites.
    """
    from .parser import emit

    trees = list(trees)
    if sources is None:
        sources = {t.source_path: emit(t) for t in trees}
    decls: dict[str, tuple[ClassDecl, str]] = {}
    order: list[str] = []
    for tree in trees:
        for decl in tree.classes:
            if decl.name in decls:
                prev = decls[decl.name][1]
                raise SemanticError(
                    f"duplicate class {decl.name!r} (first declared in {prev})",
                    tree.source_path, decl.name_line,
                )
            decls[decl.name] = (decl, tree.source_path)
            order.append(decl.name)
    _check_cycles(decls)

    model = ProgramModel({}, order, builtin_classes=tuple(builtin_classes))

    def ensure(name: str) -> ClassInfo:
        if name in model.classes:
            return model.classes[name]
        decl, path = decls[name]
        base = decl.base_names[0] if decl.base_names else None
        inherited: list[FieldInfo] = []
        if base is not None:
            if base in decls:
                inherited = list(ensure(base).effective_fields)
            else:
                model.unresolved_bases[name] = base
        own: list[FieldInfo] = []
        taken = {f.name: f for f in inherited}
        for fd in decl.field_decls:
            for d in fd.declarators:
                if d.name in taken:
                    other = taken[d.name]
                    what = "shadows inherited field" if other.declaring_class != name else "duplicates field"
                    raise SemanticError(
                        f"field {name}.{d.name} {what} {other.declaring_class}.{other.name}",
                        path, d.line,
                    )
                f = FieldInfo(d.name, fd.type_name, name, len(own), d.line)
                own.append(f)
                taken[d.name] = f
        info = ClassInfo(name, base, decl.base_names, own, inherited + own, [], [], decl, path)
        model.classes[name] = info
        return info

    for name in order:
        ensure(name)
    # keep dict iteration in declaration order
    model.classes = {n: model.classes[n] for n in order}

    for info in model.ordered():
        source = sources.get(info.source_path, "")
        for m in info.decl.constructors + info.decl.methods:
            w = _BodyWalker(m, info, model, source).run()
            mi = MethodInfo(
                info.name, m.name, m.signature, m.params, m.is_constructor, m,
                w.defs, w.uses, w.calls, w.locals,
            )
            (info.constructors if m.is_constructor else info.methods).append(mi)
    return model
