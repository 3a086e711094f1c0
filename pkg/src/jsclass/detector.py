"""Recovery of emulated classes and prototype inheritance from ES5 programs.

A function ``C`` is a class when the program also instantiates it, either
with ``new C(...)`` or ``Object.create(C.prototype)``.  Its members are the
``this.x = ...`` assignments in its own body plus ``C.prototype.x = ...``
assignments (and ``C.prototype = {...}`` literals) anywhere in the program;
function-valued right-hand sides make methods, everything else attributes.
``C2.prototype = new C1()`` and ``C2.prototype = Object.create(C1.prototype)``
make ``C2`` a subclass of ``C1`` when both are classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .diagnostics import Diagnostic
from .tree import FUNCTION_KINDS, Node, Program, SourceSpan, member_path

DECLARATION_KINDS = ("function_declaration", "var_assigned_function_expression")
MEMBER_ORIGINS = ("this_assignment", "prototype_assignment", "prototype_literal")
EDGE_PATTERNS = ("prototype_new", "prototype_object_create")


@dataclass
class CandidateFunction:
    name: str
    declaration_kind: str
    body: Node
    file_id: str
    span: Optional[SourceSpan] = None


@dataclass(frozen=True)
class Member:
    name: str
    kind: str  # "attribute" or "method"
    origin: str
    span: Optional[SourceSpan] = None


@dataclass
class ClassEntity:
    name: str
    file_id: str
    attributes: dict[str, Member] = field(default_factory=dict)
    methods: dict[str, Member] = field(default_factory=dict)
    superclass: Optional[str] = None
    children: list[str] = field(default_factory=list)
    span: Optional[SourceSpan] = None


@dataclass(frozen=True)
class InheritanceEdge:
    subclass: str
    superclass: str
    pattern: str
    span: Optional[SourceSpan] = None


@dataclass
class Package:
    """One source file, the grouping unit for classes."""

    path: str
    classes: list[str] = field(default_factory=list)
    loc: int = 0
    lines: int = 0
    loc_approximate: bool = False


@dataclass
class OOModel:
    classes: dict[str, ClassEntity] = field(default_factory=dict)
    edges: list[InheritanceEdge] = field(default_factory=list)
    packages: dict[str, Package] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    name: Optional[str] = None

    @property
    def noc(self) -> int:
        return len(self.classes)

    def ancestors(self, name: str) -> Iterator[str]:
        seen = {name}
        parent = self.classes[name].superclass
        while parent is not None and parent not in seen:
            yield parent
            seen.add(parent)
            parent = self.classes[parent].superclass


# -- pattern helpers ----------------------------------------------------

def _is_plain_assignment(node: Node) -> bool:
    return node.kind == "AssignmentExpression" and node.operator == "="


def _prototype_owner(node: Optional[Node]) -> Optional[str]:
    """``C`` for an expression of the form ``C.prototype``."""
    path = member_path(node)
    if path is not None and len(path) == 2 and path[1] == "prototype":
        return path[0]
    return None


def object_create_target(node: Node) -> Optional[str]:
    """``C`` for a call ``Object.create(C.prototype)`` with a single argument."""
    if node.kind != "CallExpression" or len(node.arguments) != 1:
        return None
    if member_path(node.callee) != ("Object", "create"):
        return None
    return _prototype_owner(node.arguments[0])


def new_target(node: Node) -> Optional[str]:
    if node.kind == "NewExpression" and node.callee.kind == "Identifier":
        return node.callee.name
    return None


def _property_name(key: Node) -> Optional[str]:
    if key.kind == "Identifier":
        return key.name
    if key.kind == "Literal":
        value = key.value
        if key.literal_type == "number":
            if isinstance(value, float) and value.is_integer():
                value = int(value)
            return str(value)
        if key.literal_type == "string":
            return value
    return None


def _member_kind(value: Node) -> str:
    return "method" if value.kind == "FunctionExpression" else "attribute"


def _walk_with_file(program: Program) -> Iterator[tuple[str, Node]]:
    for source in program.files:
        stack = [source.root]
        while stack:
            node = stack.pop()
            yield source.path, node
            kids = list(node.children())
            kids.reverse()
            stack.extend(kids)


def _own_body_nodes(function: Node) -> Iterator[Node]:
    """Nodes of a function body, not descending into nested functions."""
    stack = list(reversed(list(function.body.children())))
    while stack:
        node = stack.pop()
        yield node
        if node.kind in FUNCTION_KINDS:
            continue
        kids = list(node.children())
        kids.reverse()
        stack.extend(kids)


@dataclass
class _PrototypeMember:
    owner: str
    member: Member


@dataclass
class _InheritanceSite:
    subclass: str
    superclass: str
    pattern: str
    span: Optional[SourceSpan]


class PatternIndex:
    """Every detection pattern of a program, collected in one ordered pass."""

    def __init__(self, program: Program):
        self.candidates: dict[str, CandidateFunction] = {}
        self.instantiations: dict[str, int] = {}
        self.prototype_members: dict[str, list[Member]] = {}
        self.inheritance: list[_InheritanceSite] = []
        self.diagnostics: list[Diagnostic] = []
        for file_id, node in _walk_with_file(program):
            self._visit(file_id, node)

    def _add_candidate(self, name: str, kind: str, function: Node, file_id: str, span) -> None:
        if name in self.candidates:
            first = self.candidates[name]
            self.diagnostics.append(Diagnostic(
                "warning", "duplicate_candidate",
                f"function {name} already declared in {first.file_id}; keeping the first", span))
            return
        self.candidates[name] = CandidateFunction(name, kind, function, file_id, span)

    def _add_prototype_member(self, owner: str, member: Member) -> None:
        self.prototype_members.setdefault(owner, []).append(member)

    def _visit(self, file_id: str, node: Node) -> None:
        kind = node.kind
        if kind == "FunctionDeclaration":
            self._add_candidate(node.id.name, "function_declaration", node, file_id, node.span)
        elif kind == "VariableDeclarator":
            init = node.init
            if init is not None and init.kind == "FunctionExpression":
                self._add_candidate(node.id.name, "var_assigned_function_expression", init,
                                    file_id, node.span)
        elif kind == "NewExpression":
            target = new_target(node)
            if target is not None:
                self.instantiations[target] = self.instantiations.get(target, 0) + 1
        elif kind == "CallExpression":
            target = object_create_target(node)
            if target is not None:
                self.instantiations[target] = self.instantiations.get(target, 0) + 1
        elif kind == "AssignmentExpression" and node.operator == "=":
            self._visit_assignment(file_id, node)

    def _visit_assignment(self, file_id: str, node: Node) -> None:
        left, right = node.left, node.right
        if left.kind == "Identifier" and right.kind == "FunctionExpression":
            self._add_candidate(left.name, "var_assigned_function_expression", right,
                                file_id, node.span)
            return
        if left.kind != "MemberExpression":
            return
        owner = _prototype_owner(left)
        if owner is not None:
            self._visit_prototype_replacement(owner, node)
            return
        owner = _prototype_owner(left.object)
        if owner is None:
            return
        if left.computed:
            self.diagnostics.append(Diagnostic(
                "warning", "computed_member",
                f"computed member on {owner}.prototype ignored", node.span))
            return
        name = left.property.name
        self._add_prototype_member(
            owner, Member(name, _member_kind(right), "prototype_assignment", node.span))

    def _visit_prototype_replacement(self, owner: str, node: Node) -> None:
        right = node.right
        parent = new_target(right)
        if parent is not None:
            self.inheritance.append(_InheritanceSite(owner, parent, "prototype_new", node.span))
            return
        parent = object_create_target(right)
        if parent is not None:
            self.inheritance.append(
                _InheritanceSite(owner, parent, "prototype_object_create", node.span))
            return
        if right.kind != "ObjectExpression":
            return
        for prop in right.properties:
            if prop.property_kind != "init":
                self.diagnostics.append(Diagnostic(
                    "warning", "accessor_member",
                    f"accessor in {owner}.prototype literal ignored", prop.span))
                continue
            name = _property_name(prop.key)
            if name is None:
                continue
            self._add_prototype_member(
                owner, Member(name, _member_kind(prop.value), "prototype_literal", prop.span))

    def this_members(self, candidate: CandidateFunction) -> tuple[list[Member], list[Diagnostic]]:
        found: list[Member] = []
        notes: list[Diagnostic] = []
        for node in _own_body_nodes(candidate.body):
            if not _is_plain_assignment(node):
                continue
            left = node.left
            if left.kind != "MemberExpression" or left.object.kind != "ThisExpression":
                continue
            if left.computed:
                notes.append(Diagnostic(
                    "warning", "computed_member",
                    f"computed member on this in {candidate.name} ignored", node.span))
                continue
            found.append(Member(left.property.name, _member_kind(node.right),
                                "this_assignment", node.span))
        return found, notes


# -- public operations ----------------------------------------------------

def collect_candidates(program: Program) -> dict[str, CandidateFunction]:
    return PatternIndex(program).candidates


def collect_instantiations(program: Program) -> dict[str, int]:
    return PatternIndex(program).instantiations


def _merge_members(name: str, members: list[Member], diagnostics: list[Diagnostic]):
    attributes: dict[str, Member] = {}
    methods: dict[str, Member] = {}
    for member in members:
        target = methods if member.kind == "method" else attributes
        target.setdefault(member.name, member)
    for both in sorted(attributes.keys() & methods.keys()):
        diagnostics.append(Diagnostic(
            "warning", "member_conflict",
            f"{name}.{both} is assigned both a function and a non-function value",
            attributes[both].span))
    return attributes, methods


def extract_members(candidate: CandidateFunction, program: Program,
                    index: Optional[PatternIndex] = None):
    """Return ``(attributes, methods)`` name-keyed member maps for a candidate."""
    index = index or PatternIndex(program)
    members, _ = index.this_members(candidate)
    members += index.prototype_members.get(candidate.name, [])
    return _merge_members(candidate.name, members, [])


def detect_classes(program: Program, index: Optional[PatternIndex] = None) -> OOModel:
    """Build the class set; inheritance edges are left empty."""
    index = index or PatternIndex(program)
    model = OOModel()
    model.diagnostics.extend(program.diagnostics)
    model.diagnostics.extend(index.diagnostics)
    for source in program.files:
        model.packages[source.path] = Package(source.path, [], source.loc, source.raw_line_count,
                                              source.loc_approximate)
    for name, candidate in index.candidates.items():
        if not index.instantiations.get(name):
            model.diagnostics.append(Diagnostic(
                "info", "near_miss", f"function {name} is never instantiated", candidate.span))
            continue
        members, notes = index.this_members(candidate)
        model.diagnostics.extend(notes)
        members += index.prototype_members.get(name, [])
        attributes, methods = _merge_members(name, members, model.diagnostics)
        model.classes[name] = ClassEntity(name, candidate.file_id, attributes, methods,
                                          span=candidate.span)
    for name in sorted(model.classes):
        model.packages[model.classes[name].file_id].classes.append(name)
    return model


def detect_inheritance(model: OOModel, program: Program,
                       index: Optional[PatternIndex] = None) -> OOModel:
    """Populate inheritance edges, superclass links and children lists."""
    index = index or PatternIndex(program)
    sites = [s for s in index.inheritance
             if s.subclass in model.classes and s.superclass in model.classes]
    winners: dict[str, int] = {}
    for position, site in enumerate(sites):
        if site.subclass in winners:
            model.diagnostics.append(Diagnostic(
                "warning", "prototype_reassigned",
                f"{site.subclass}.prototype inherits again; the later assignment wins", site.span))
        winners[site.subclass] = position

    parent_of: dict[str, str] = {}
    edges = []
    for position in sorted(winners.values()):
        site = sites[position]
        ancestor: Optional[str] = site.superclass
        while ancestor is not None and ancestor != site.subclass:
            ancestor = parent_of.get(ancestor)
        if ancestor == site.subclass:
            model.diagnostics.append(Diagnostic(
                "error", "inheritance_cycle",
                f"{site.subclass} -> {site.superclass} would close an inheritance cycle", site.span))
            continue
        parent_of[site.subclass] = site.superclass
        edges.append(InheritanceEdge(site.subclass, site.superclass, site.pattern, site.span))

    model.edges = sorted(edges, key=lambda e: (e.subclass, e.superclass))
    for entity in model.classes.values():
        entity.superclass = parent_of.get(entity.name)
        entity.children = []
    for edge in model.edges:
        model.classes[edge.superclass].children.append(edge.subclass)
    for entity in model.classes.values():
        entity.children.sort()
    return model


def analyze(program: Program, name: Optional[str] = None) -> OOModel:
    """Run class and inheritance detection over a whole program."""
    index = PatternIndex(program)
    model = detect_classes(program, index)
    model.name = name
    return detect_inheritance(model, program, index)
