"""Def-use trees over class fields and the integration test paths they yield.

For each coupling method a tree is grown depth-first: the children of a node
are the same-class methods that define a field the node uses.  Every
root-to-leaf walk is one test path; it runs leaf first, so the object is
driven through the defining methods before the coupling method is called.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .coupling import CouplingMethod
from .semantic import ClassInfo, FieldInfo, MethodInfo, ProgramModel, is_user_defined


class UnconstructibleDependency(Exception):
    pass


@dataclass(frozen=True)
class DefUseEdge:
    from_method: MethodInfo
    field: FieldInfo
    to_method: MethodInfo


@dataclass(eq=False)
class PathNode:
    method: MethodInfo
    children: list["PathNode"] = field(default_factory=list)


@dataclass
class PathTree:
    coupling: CouplingMethod
    root: PathNode

    def walks(self) -> Iterator[tuple[MethodInfo, ...]]:
        """Root-to-leaf method sequences in depth-first child order."""
        stack: list[tuple[PathNode, tuple[MethodInfo, ...]]] = [(self.root, (self.root.method,))]
        while stack:
            node, prefix = stack.pop()
            if not node.children:
                yield prefix
                continue
            for child in reversed(node.children):
                stack.append((child, prefix + (child.method,)))


@dataclass(frozen=True)
class TestPath:
    id: int
    kind: str  # "method" | "constructor"
    nodes: tuple[MethodInfo, ...]

    __test__ = False  # not a pytest class

    @property
    def length(self) -> int:
        return len(self.nodes)

    @property
    def signatures(self) -> tuple[str, ...]:
        return tuple(m.signature for m in self.nodes)


def definers_of(f: FieldInfo, cls: ClassInfo, model: ProgramModel | None = None) -> list[MethodInfo]:
    """Ordinary methods of *cls* that assign *f*, in declaration order."""
    return [m for m in cls.methods if f in m.defs]


def build_tree(coupling: CouplingMethod, model: ProgramModel) -> tuple[PathTree, list[DefUseEdge]]:
    cls = model.classes[coupling.method.owner]
    edges: list[DefUseEdge] = []

    def expand(node: PathNode, on_path: list[MethodInfo]) -> None:
        used = sorted(node.method.uses, key=cls.field_position)
        taken: list[MethodInfo] = []
        for f in used:
            for definer in definers_of(f, cls, model):
                if any(definer is m for m in on_path) or any(definer is m for m in taken):
                    continue
                taken.append(definer)
                node.children.append(PathNode(definer))
                edges.append(DefUseEdge(node.method, f, definer))
        for child in node.children:
            expand(child, on_path + [child.method])

    root = PathNode(coupling.method)
    expand(root, [coupling.method])
    return PathTree(coupling, root), edges


def enumerate_paths(trees: Iterable[PathTree], constructors: Iterable[CouplingMethod]) -> list[TestPath]:
    paths: list[TestPath] = []
    for tree in trees:
        for walk in tree.walks():
            paths.append(TestPath(len(paths) + 1, "method", walk))
    for ctor in constructors:
        paths.append(TestPath(len(paths) + 1, "constructor", (ctor.method,)))
    return paths


def generate(
    model: ProgramModel, couplings: list[CouplingMethod], constructors: list[CouplingMethod]
) -> tuple[list[PathTree], list[DefUseEdge], list[TestPath]]:
    trees: list[PathTree] = []
    edges: list[DefUseEdge] = []
    for cm in couplings:
        tree, tree_edges = build_tree(cm, model)
        trees.append(tree)
        edges.extend(tree_edges)
    return trees, edges, enumerate_paths(trees, constructors)


# -- execution order --------------------------------------------------------

_DEFAULT_LITERALS = {"int": "0", "string": '""', "bool": "false"}


@dataclass(frozen=True)
class Step:
    kind: str  # "new" | "call"
    class_name: str
    target: str  # variable created, or receiver of the call
    member: str  # constructor or method name
    args: tuple[str, ...]

    def __str__(self) -> str:
        args = ", ".join(self.args)
        if self.kind == "new":
            return f"{self.class_name} {self.target} = new {self.class_name}({args});"
        return f"{self.target}.{self.member}({args});"


class _Instantiator:
    def __init__(self, model: ProgramModel):
        self.model = model
        self.steps: list[Step] = []
        self.counters: dict[str, int] = {}

    def _fresh(self, class_name: str) -> str:
        n = self.counters.get(class_name, 0) + 1
        self.counters[class_name] = n
        return f"{class_name.lower()}{n}"

    def args_for(self, method: MethodInfo, visiting: tuple[str, ...]) -> tuple[str, ...]:
        args = []
        for p in method.params:
            if is_user_defined(p.type_name, self.model):
                args.append(self.instantiate(p.type_name, visiting))
            else:
                args.append(_DEFAULT_LITERALS.get(p.type_name, "null"))
        return tuple(args)

    def instantiate(self, class_name: str, visiting: tuple[str, ...] = ()) -> str:
        if class_name in visiting:
            chain = " -> ".join(visiting + (class_name,))
            raise UnconstructibleDependency(f"cyclic constructor dependency: {chain}")
        cls = self.model.classes[class_name]
        ctor = next((c for c in cls.constructors if not c.params), None)
        if ctor is None and cls.constructors:
            ctor = cls.constructors[0]
        args = self.args_for(ctor, visiting + (class_name,)) if ctor is not None else ()
        var = self._fresh(class_name)
        self.steps.append(Step("new", class_name, var, class_name, args))
        return var

    def construct_with(self, ctor: MethodInfo) -> str:
        args = self.args_for(ctor, (ctor.owner,))
        var = self._fresh(ctor.owner)
        self.steps.append(Step("new", ctor.owner, var, ctor.owner, args))
        return var


def execution_order(path: TestPath, model: ProgramModel) -> list[Step]:
    """Instantiations followed by the path's calls, leaf first.

    The owner object uses its parameterless constructor when it has one,
    otherwise its first declared constructor; each user-defined parameter
    of the coupling method gets a fresh instance built the same way.
    """
    inst = _Instantiator(model)
    if path.kind == "constructor":
        inst.construct_with(path.nodes[0])
        return inst.steps
    owner = path.nodes[0].owner
    receiver = inst.instantiate(owner)
    calls = [
        Step("call", owner, receiver, m.name, inst.args_for(m, ()))
        for m in reversed(path.nodes)
    ]
    return inst.steps + calls
