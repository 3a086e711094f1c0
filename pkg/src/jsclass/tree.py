"""Syntax-tree representation shared by the ESTree ingester and the native parser.

Nodes follow the ESTree shape for a fixed ES5 subset.  Any other ESTree node
type is kept as an ``Opaque`` node: it is traversed like any other node but
never matches a detection pattern.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Mapping, Optional, Sequence

#: child slots per supported node kind, in ESTree order
CHILD_SLOTS: dict[str, tuple[str, ...]] = {
    "Program": ("body",),
    "FunctionDeclaration": ("id", "params", "body"),
    "FunctionExpression": ("id", "params", "body"),
    "VariableDeclaration": ("declarations",),
    "VariableDeclarator": ("id", "init"),
    "ExpressionStatement": ("expression",),
    "AssignmentExpression": ("left", "right"),
    "MemberExpression": ("object", "property"),
    "NewExpression": ("callee", "arguments"),
    "CallExpression": ("callee", "arguments"),
    "ThisExpression": (),
    "Identifier": (),
    "Literal": (),
    "ObjectExpression": ("properties",),
    "Property": ("key", "value"),
    "ArrayExpression": ("elements",),
    "ReturnStatement": ("argument",),
    "BlockStatement": ("body",),
    "IfStatement": ("test", "consequent", "alternate"),
    "ForStatement": ("init", "test", "update", "body"),
    "WhileStatement": ("test", "body"),
    "BinaryExpression": ("left", "right"),
    "LogicalExpression": ("left", "right"),
    "UnaryExpression": ("argument",),
    "UpdateExpression": ("argument",),
    "ConditionalExpression": ("test", "consequent", "alternate"),
    "SequenceExpression": ("expressions",),
    "EmptyStatement": (),
}

#: scalar (non-node) fields per kind
VALUE_SLOTS: dict[str, tuple[str, ...]] = {
    "Identifier": ("name",),
    "Literal": ("value", "raw", "literal_type"),
    "MemberExpression": ("computed",),
    "AssignmentExpression": ("operator",),
    "BinaryExpression": ("operator",),
    "LogicalExpression": ("operator",),
    "UnaryExpression": ("operator", "prefix"),
    "UpdateExpression": ("operator", "prefix"),
    "VariableDeclaration": ("declaration_kind",),
    "Property": ("property_kind",),
}

#: (kind, slot) pairs holding a tuple of nodes rather than a single node
LIST_SLOTS = frozenset({
    ("Program", "body"), ("BlockStatement", "body"),
    ("FunctionDeclaration", "params"), ("FunctionExpression", "params"),
    ("VariableDeclaration", "declarations"), ("NewExpression", "arguments"),
    ("CallExpression", "arguments"), ("ObjectExpression", "properties"),
    ("ArrayExpression", "elements"), ("SequenceExpression", "expressions"),
})

SUPPORTED_KINDS = frozenset(CHILD_SLOTS)
OPAQUE = "Opaque"
LITERAL_TYPES = ("number", "string", "boolean", "null", "regex")

FUNCTION_KINDS = frozenset({"FunctionDeclaration", "FunctionExpression"})

_IDENT_RE = re.compile(r"^(?:[^\W\d]|\$)[\w$\u200c\u200d]*$")


@dataclass(frozen=True)
class SourceSpan:
    file_id: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if self.start_line < 1 or self.end_line < 1 or self.start_col < 0 or self.end_col < 0:
            raise ValueError(f"invalid span position {self}")
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    def __str__(self):
        return f"{self.file_id}:{self.start_line}:{self.start_col}"

    def to_dict(self) -> dict:
        return {"file": self.file_id, "start": [self.start_line, self.start_col],
                "end": [self.end_line, self.end_col]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "SourceSpan":
        return cls(data["file"], data["start"][0], data["start"][1], data["end"][0], data["end"][1])


@dataclass(frozen=True, eq=False)
class Node:
    """One syntax-tree node.

    ``fields`` maps slot names to child nodes, tuples of child nodes (``None``
    allowed for array holes) or scalar values.  Slots are readable as
    attributes: ``node.left``, ``node.name``.  Equality is structural and
    ignores spans.
    """

    kind: str
    fields: Mapping[str, Any]
    span: Optional[SourceSpan] = None

    def __getattr__(self, name: str) -> Any:
        if name.startswith("__"):
            raise AttributeError(name)
        fields = object.__getattribute__(self, "fields")
        try:
            return fields[name]
        except KeyError:
            raise AttributeError(f"{self.kind} node has no slot {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Node):
            return NotImplemented
        return self.kind == other.kind and self.fields == other.fields

    __hash__ = None  # type: ignore[assignment]

    @property
    def original_type(self) -> str:
        """ESTree type name, also for opaque nodes."""
        if self.kind == OPAQUE:
            return self.fields["original_type"]
        return self.kind

    def child_slots(self) -> Sequence[str]:
        if self.kind == OPAQUE:
            return [k for k in self.fields if k != "original_type"]
        return CHILD_SLOTS[self.kind]

    def children(self) -> Iterator["Node"]:
        """Direct children in slot order, skipping empty slots and holes."""
        for slot in self.child_slots():
            value = self.fields.get(slot)
            if value is None:
                continue
            if isinstance(value, tuple):
                for item in value:
                    if item is not None:
                        yield item
            else:
                yield value

    def __repr__(self):
        if self.kind == "Identifier":
            return f"Identifier({self.fields['name']!r})"
        if self.kind == "Literal":
            return f"Literal({self.fields['raw']})"
        return f"{self.original_type}(...)"


def make_node(kind: str, span: Optional[SourceSpan] = None, **fields: Any) -> Node:
    """Build a supported-kind node, checking slot arity."""
    if kind not in SUPPORTED_KINDS:
        raise ValueError(f"unsupported node kind {kind!r}")
    expected = set(CHILD_SLOTS[kind]) | set(VALUE_SLOTS.get(kind, ()))
    if set(fields) != expected:
        raise ValueError(f"{kind} expects slots {sorted(expected)}, got {sorted(fields)}")
    for slot in CHILD_SLOTS[kind]:
        if ((kind, slot) in LIST_SLOTS) != isinstance(fields[slot], tuple):
            raise ValueError(f"{kind}.{slot} has the wrong arity")
    if kind == "Identifier" and not _IDENT_RE.match(fields["name"] or ""):
        raise ValueError(f"invalid identifier name {fields['name']!r}")
    if kind == "MemberExpression" and not fields["computed"]:
        prop = fields["property"]
        if not isinstance(prop, Node) or prop.kind != "Identifier":
            raise ValueError("non-computed member access needs an Identifier property")
    return Node(kind, fields, span)


def make_opaque(original_type: str, span: Optional[SourceSpan] = None, **children: Any) -> Node:
    fields = {"original_type": original_type}
    fields.update((k, v) for k, v in children.items() if v is not None)
    return Node(OPAQUE, fields, span)


def iter_nodes(root: Node) -> Iterator[Node]:
    """Depth-first pre-order iteration."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        kids = list(node.children())
        kids.reverse()
        stack.extend(kids)


def walk(root: Node, visitor: Callable[[Node, tuple], Any]) -> None:
    """Call ``visitor(node, ancestors)`` for every node in depth-first pre-order.

    ``ancestors`` runs from the root down to the node's parent.
    """
    stack: list[tuple[Node, tuple]] = [(root, ())]
    while stack:
        node, ancestors = stack.pop()
        visitor(node, ancestors)
        inner = ancestors + (node,)
        kids = list(node.children())
        for kid in reversed(kids):
            stack.append((kid, inner))


def node_count(root: Node) -> int:
    return sum(1 for _ in iter_nodes(root))


def member_path(node: Optional[Node]) -> Optional[tuple[str, ...]]:
    """Dotted path of a chain like ``a.b.c`` as ``('a', 'b', 'c')``.

    Returns None for anything but identifiers joined by non-computed access.
    """
    parts = []
    while node is not None and node.kind == "MemberExpression" and not node.computed:
        parts.append(node.property.name)
        node = node.object
    if node is None or node.kind != "Identifier":
        return None
    parts.append(node.name)
    parts.reverse()
    return tuple(parts)


@dataclass
class SourceFile:
    path: str
    raw_line_count: int
    loc: int
    root: Node
    loc_approximate: bool = False
    node_count: int = 0
    opaque_count: int = 0
    diagnostics: list = field(default_factory=list)

    def __post_init__(self):
        if self.root.kind != "Program":
            raise ValueError("SourceFile root must be a Program node")
        if self.loc > self.raw_line_count:
            raise ValueError("loc cannot exceed the physical line count")


@dataclass
class Program:
    """All source files of one analysis run, ordered by path."""

    files: tuple[SourceFile, ...]
    diagnostics: list = field(default_factory=list)

    def __post_init__(self):
        self.files = tuple(sorted(self.files, key=lambda f: f.path))
        paths = [f.path for f in self.files]
        if len(set(paths)) != len(paths):
            raise ValueError("duplicate file paths in program")

    @property
    def total_loc(self) -> int:
        return sum(f.loc for f in self.files)

    @property
    def total_lines(self) -> int:
        return sum(f.raw_line_count for f in self.files)

    def file(self, path: str) -> SourceFile:
        for f in self.files:
            if f.path == path:
                return f
        raise KeyError(path)


_LINE_BREAK = re.compile("\r\n|[\n\r\u2028\u2029]")


def physical_lines(text: str) -> int:
    if not text:
        return 0
    breaks = len(_LINE_BREAK.findall(text))
    return breaks if _LINE_BREAK.search(text[-1:]) or text.endswith("\r\n") else breaks + 1


def count_loc(source_text: str) -> tuple[int, int]:
    """Return ``(physical lines, lines holding at least one code token)``.

    Comments and whitespace do not make a line count; a multi-line string or
    template of tokens marks every line it touches.  Never fails: text the
    lexer cannot handle counts as code.
    """
    from .lexer import code_lines

    raw = physical_lines(source_text)
    if raw == 0:
        return 0, 0
    return raw, min(raw, len(code_lines(source_text)))
