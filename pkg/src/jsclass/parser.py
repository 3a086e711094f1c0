"""Recursive-descent parser for ES5 source, producing ESTree-shaped trees.

Statements outside the analyzed node subset (switch, try, labels, for-in,
do-while, throw, break/continue, with, debugger) are parsed fully and kept
as ``Opaque`` nodes carrying their ESTree child slots, so native parsing and
ESTree ingestion of the same text yield the same tree.  Anything that is not
ES5 at all is skipped with panic-mode recovery and reported.
"""

from __future__ import annotations

import sys
from typing import Optional

from .diagnostics import AnalysisError, Diagnostic
from .lexer import Token, tokenize
from .tree import OPAQUE, Node, SourceFile, SourceSpan, iter_nodes, make_node, make_opaque, physical_lines

BINARY_PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6, "===": 6, "!==": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7, "in": 7,
    "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}
ASSIGNMENT_OPERATORS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", ">>>=",
                                  "&=", "|=", "^="})
UNARY_OPERATORS = frozenset({"!", "~", "+", "-"})
UNARY_KEYWORDS = frozenset({"typeof", "void", "delete"})
# reserved in ES5 but meaningful only in later editions
FUTURE_KEYWORDS = frozenset({"class", "const", "enum", "export", "extends", "import", "super"})

_NAME_KINDS = frozenset({"identifier", "keyword", "boolean", "null"})
_LITERAL_TYPES = {"number": "number", "string": "string", "boolean": "boolean",
                  "null": "null", "regex": "regex"}


class Parser:
    def __init__(self, tokens: list[Token], path: str = "<input>", recover: bool = True):
        if not tokens or tokens[-1].kind != "eof":
            raise ValueError("token list must end with eof")
        self.toks = tokens
        self.i = 0
        self.path = path
        self.recover = recover
        self.diagnostics: list[Diagnostic] = []

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, n: int = 1) -> Token:
        return self.toks[min(self.i + n, len(self.toks) - 1)]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.toks[self.i]
        return tok.text == text and tok.kind in ("punctuator", "keyword")

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.unexpected(f"expected {text!r}")
        return self.advance()

    def unexpected(self, message: str = "unexpected token", tok: Optional[Token] = None) -> AnalysisError:
        tok = tok or self.tok
        if tok.kind == "eof":
            return AnalysisError("syntax", f"{message}, found end of input", tok.span)
        code = "syntax"
        if tok.kind == "keyword" and tok.text in FUTURE_KEYWORDS:
            code = "unsupported_syntax"
        return AnalysisError(code, f"{message}, found {tok.text!r}", tok.span)

    def span(self, start: Token) -> SourceSpan:
        last = self.toks[self.i - 1] if self.i > 0 else start
        if (last.end_line, last.end_col) < (start.line, start.col):
            last = start
        return SourceSpan(self.path, start.line, start.col, last.end_line, last.end_col)

    def node(self, kind: str, start: Token, **fields) -> Node:
        return make_node(kind, self.span(start), **fields)

    def opaque(self, original_type: str, start: Token, **children) -> Node:
        return make_opaque(original_type, self.span(start), **children)

    def consume_semicolon(self) -> None:
        if self.eat(";"):
            return
        tok = self.tok
        if tok.preceded_by_newline or tok.kind == "eof" or tok.is_punct("}"):
            return
        raise self.unexpected("expected ';'")

    # -- statements ----------------------------------------------------

    def parse_program(self) -> Node:
        start = self.tok
        body = self.statement_list(lambda: self.tok.kind == "eof")
        return make_node("Program", SourceSpan(self.path, 1, 0, *self._end_of(start)), body=body)

    def _end_of(self, start: Token) -> tuple[int, int]:
        last = self.toks[-1]
        return max((start.line, start.col), (last.end_line, last.end_col))

    def statement_list(self, done) -> tuple:
        body = []
        while not done():
            if self.tok.kind == "eof":
                raise self.unexpected("unbalanced block")
            body.append(self.statement_or_recover())
        return tuple(body)

    def statement_or_recover(self) -> Node:
        start_index = self.i
        try:
            return self.parse_statement()
        except AnalysisError as err:
            if not self.recover or err.code not in ("syntax", "unsupported_syntax"):
                raise
            self.i = start_index
            start = self.tok
            self.skip_balanced()
            self.diagnostics.append(Diagnostic(
                "warning", "opaque_region",
                f"skipped unparsable statement ({err.message})", self.span(start)))
            return self.opaque("OpaqueRegion", start)

    def skip_balanced(self) -> None:
        """Skip one statement's worth of tokens, keeping brackets balanced."""
        pairs = {")": "(", "]": "[", "}": "{"}
        stack: list[str] = []
        consumed = 0
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind == "punctuator":
                if tok.text in "([{":
                    stack.append(tok.text)
                elif tok.text in pairs:
                    if not stack:
                        break
                    if stack[-1] != pairs[tok.text]:
                        raise AnalysisError("syntax", f"mismatched bracket {tok.text!r}", tok.span)
                    stack.pop()
                    if not stack and tok.text == "}":
                        self.advance()
                        consumed += 1
                        if self.eat(";") or self.tok.preceded_by_newline:
                            return
                        continue
                elif tok.text == ";" and not stack:
                    self.advance()
                    return
            self.advance()
            consumed += 1
        if stack:
            raise AnalysisError("syntax", f"unclosed bracket {stack[-1]!r}", self.tok.span)
        if consumed == 0:
            raise AnalysisError("syntax", f"mismatched bracket {self.tok.text!r}", self.tok.span)

    def parse_statement(self) -> Node:
        tok = self.tok
        kind, text = tok.kind, tok.text
        if kind == "punctuator":
            if text == "{":
                return self.parse_block()
            if text == ";":
                self.advance()
                return self.node("EmptyStatement", tok)
        elif kind == "keyword":
            handler = getattr(self, f"parse_{text}_statement", None)
            if handler is not None:
                return handler()
            if text in FUTURE_KEYWORDS:
                raise self.unexpected("unsupported statement")
        elif kind == "identifier":
            nxt = self.peek()
            if nxt.is_punct(":"):
                return self.parse_labeled_statement()
            if text == "let" and nxt.kind == "identifier" and not nxt.preceded_by_newline:
                raise AnalysisError("unsupported_syntax", "'let' declarations are not ES5", tok.span)
        expr = self.parse_expression()
        self.consume_semicolon()
        return self.node("ExpressionStatement", tok, expression=expr)

    def parse_block(self) -> Node:
        start = self.expect("{")
        body = self.statement_list(lambda: self.at("}"))
        self.expect("}")
        return self.node("BlockStatement", start, body=body)

    def parse_var_statement(self) -> Node:
        start = self.tok
        decl = self.parse_var_declaration(no_in=False)
        self.consume_semicolon()
        decl_span = self.span(start)
        return Node(decl.kind, decl.fields, decl_span)

    def parse_var_declaration(self, no_in: bool) -> Node:
        start = self.expect("var")
        declarations = []
        while True:
            id_tok = self.tok
            ident = self.parse_binding_identifier()
            init = self.parse_assignment(no_in) if self.eat("=") else None
            declarations.append(self.node("VariableDeclarator", id_tok, id=ident, init=init))
            if not self.eat(","):
                break
        return self.node("VariableDeclaration", start, declarations=tuple(declarations),
                         declaration_kind="var")

    def parse_binding_identifier(self) -> Node:
        tok = self.tok
        if tok.kind != "identifier":
            raise self.unexpected("expected an identifier")
        self.advance()
        return self.node("Identifier", tok, name=tok.value)

    def parse_function_statement(self) -> Node:
        return self.parse_function(declaration=True)

    def parse_function(self, declaration: bool) -> Node:
        start = self.expect("function")
        ident = None
        if declaration or self.tok.kind == "identifier":
            ident = self.parse_binding_identifier()
        self.expect("(")
        params = []
        while not self.at(")"):
            params.append(self.parse_binding_identifier())
            if not self.at(")"):
                self.expect(",")
        self.expect(")")
        body = self.parse_block()
        kind = "FunctionDeclaration" if declaration else "FunctionExpression"
        return self.node(kind, start, id=ident, params=tuple(params), body=body)

    def parse_if_statement(self) -> Node:
        start = self.expect("if")
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        consequent = self.parse_statement()
        alternate = self.parse_statement() if self.eat("else") else None
        return self.node("IfStatement", start, test=test, consequent=consequent, alternate=alternate)

    def parse_for_statement(self) -> Node:
        start = self.expect("for")
        self.expect("(")
        init = None
        if not self.at(";"):
            if self.at("var"):
                init = self.parse_var_declaration(no_in=True)
                if self.at("in") and len(init.declarations) == 1:
                    return self.finish_for_in(start, init)
            else:
                init = self.parse_expression(no_in=True)
                if self.at("in"):
                    if init.kind not in ("Identifier", "MemberExpression"):
                        raise self.unexpected("invalid for-in target")
                    return self.finish_for_in(start, init)
        self.expect(";")
        test = None if self.at(";") else self.parse_expression()
        self.expect(";")
        update = None if self.at(")") else self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.node("ForStatement", start, init=init, test=test, update=update, body=body)

    def finish_for_in(self, start: Token, left: Node) -> Node:
        self.expect("in")
        right = self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.opaque("ForInStatement", start, left=left, right=right, body=body)

    def parse_while_statement(self) -> Node:
        start = self.expect("while")
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.node("WhileStatement", start, test=test, body=body)

    def parse_do_statement(self) -> Node:
        start = self.expect("do")
        body = self.parse_statement()
        self.expect("while")
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        self.eat(";")
        return self.opaque("DoWhileStatement", start, body=body, test=test)

    def parse_return_statement(self) -> Node:
        start = self.expect("return")
        tok = self.tok
        argument = None
        if not (tok.is_punct(";") or tok.is_punct("}") or tok.kind == "eof" or tok.preceded_by_newline):
            argument = self.parse_expression()
        self.consume_semicolon()
        return self.node("ReturnStatement", start, argument=argument)

    def _jump(self, keyword: str, original_type: str) -> Node:
        start = self.expect(keyword)
        label = None
        if self.tok.kind == "identifier" and not self.tok.preceded_by_newline:
            label = self.parse_binding_identifier()
        self.consume_semicolon()
        return self.opaque(original_type, start, label=label)

    def parse_break_statement(self) -> Node:
        return self._jump("break", "BreakStatement")

    def parse_continue_statement(self) -> Node:
        return self._jump("continue", "ContinueStatement")

    def parse_throw_statement(self) -> Node:
        start = self.expect("throw")
        if self.tok.preceded_by_newline:
            raise self.unexpected("illegal newline after throw")
        argument = self.parse_expression()
        self.consume_semicolon()
        return self.opaque("ThrowStatement", start, argument=argument)

    def parse_try_statement(self) -> Node:
        start = self.expect("try")
        block = self.parse_block()
        handler = finalizer = None
        if self.at("catch"):
            catch_start = self.advance()
            self.expect("(")
            param = self.parse_binding_identifier()
            self.expect(")")
            body = self.parse_block()
            handler = self.opaque("CatchClause", catch_start, param=param, body=body)
        if self.eat("finally"):
            finalizer = self.parse_block()
        if handler is None and finalizer is None:
            raise self.unexpected("missing catch or finally after try")
        return self.opaque("TryStatement", start, block=block, handler=handler, finalizer=finalizer)

    def parse_switch_statement(self) -> Node:
        start = self.expect("switch")
        self.expect("(")
        discriminant = self.parse_expression()
        self.expect(")")
        self.expect("{")
        cases = []
        seen_default = False
        while not self.at("}"):
            case_start = self.tok
            if self.eat("case"):
                test = self.parse_expression()
            elif self.eat("default"):
                if seen_default:
                    raise self.unexpected("multiple default clauses", case_start)
                seen_default = True
                test = None
            else:
                raise self.unexpected("expected 'case' or 'default'")
            self.expect(":")
            consequent = self.statement_list(
                lambda: self.at("case") or self.at("default") or self.at("}"))
            cases.append(self.opaque("SwitchCase", case_start, test=test, consequent=consequent))
        self.expect("}")
        return self.opaque("SwitchStatement", start, discriminant=discriminant, cases=tuple(cases))

    def parse_with_statement(self) -> Node:
        start = self.expect("with")
        self.expect("(")
        obj = self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.opaque("WithStatement", start, object=obj, body=body)

    def parse_debugger_statement(self) -> Node:
        start = self.expect("debugger")
        self.consume_semicolon()
        return self.opaque("DebuggerStatement", start)

    def parse_labeled_statement(self) -> Node:
        start = self.tok
        label = self.parse_binding_identifier()
        self.expect(":")
        body = self.parse_statement()
        return self.opaque("LabeledStatement", start, label=label, body=body)

    # -- expressions ---------------------------------------------------

    def parse_expression(self, no_in: bool = False) -> Node:
        start = self.tok
        expr = self.parse_assignment(no_in)
        if not self.at(","):
            return expr
        expressions = [expr]
        while self.eat(","):
            expressions.append(self.parse_assignment(no_in))
        return self.node("SequenceExpression", start, expressions=tuple(expressions))

    def parse_assignment(self, no_in: bool = False) -> Node:
        start = self.tok
        left = self.parse_conditional(no_in)
        tok = self.tok
        if tok.kind == "punctuator" and tok.text in ASSIGNMENT_OPERATORS:
            if left.kind not in ("Identifier", "MemberExpression"):
                raise AnalysisError("syntax", "invalid assignment target", tok.span)
            self.advance()
            right = self.parse_assignment(no_in)
            return self.node("AssignmentExpression", start, operator=tok.text, left=left, right=right)
        return left

    def parse_conditional(self, no_in: bool) -> Node:
        start = self.tok
        test = self.parse_binary(0, no_in)
        if not self.eat("?"):
            return test
        consequent = self.parse_assignment(False)
        self.expect(":")
        alternate = self.parse_assignment(no_in)
        return self.node("ConditionalExpression", start, test=test, consequent=consequent,
                         alternate=alternate)

    def binary_operator(self, no_in: bool) -> Optional[str]:
        tok = self.tok
        if tok.kind == "punctuator":
            return tok.text if tok.text in BINARY_PRECEDENCE else None
        if tok.kind == "keyword" and tok.text in ("instanceof", "in"):
            if tok.text == "in" and no_in:
                return None
            return tok.text
        return None

    def parse_binary(self, min_precedence: int, no_in: bool) -> Node:
        start = self.tok
        left = self.parse_unary()
        while True:
            op = self.binary_operator(no_in)
            if op is None or BINARY_PRECEDENCE[op] < min_precedence:
                return left
            self.advance()
            right = self.parse_binary(BINARY_PRECEDENCE[op] + 1, no_in)
            kind = "LogicalExpression" if op in ("||", "&&") else "BinaryExpression"
            left = self.node(kind, start, operator=op, left=left, right=right)

    def parse_unary(self) -> Node:
        tok = self.tok
        if (tok.kind == "punctuator" and tok.text in UNARY_OPERATORS) or (
                tok.kind == "keyword" and tok.text in UNARY_KEYWORDS):
            self.advance()
            argument = self.parse_unary()
            return self.node("UnaryExpression", tok, operator=tok.text, prefix=True, argument=argument)
        if tok.is_punct("++") or tok.is_punct("--"):
            self.advance()
            argument = self.parse_unary()
            self.check_update_target(argument, tok)
            return self.node("UpdateExpression", tok, operator=tok.text, prefix=True, argument=argument)
        return self.parse_postfix()

    def check_update_target(self, target: Node, tok: Token) -> None:
        if target.kind not in ("Identifier", "MemberExpression"):
            raise AnalysisError("syntax", "invalid update target", tok.span)

    def parse_postfix(self) -> Node:
        start = self.tok
        expr = self.parse_left_hand_side(allow_call=True)
        tok = self.tok
        if (tok.is_punct("++") or tok.is_punct("--")) and not tok.preceded_by_newline:
            self.check_update_target(expr, tok)
            self.advance()
            return self.node("UpdateExpression", start, operator=tok.text, prefix=False, argument=expr)
        return expr

    def parse_left_hand_side(self, allow_call: bool) -> Node:
        start = self.tok
        expr = self.parse_new() if self.at("new") else self.parse_primary()
        while True:
            if self.eat("."):
                prop = self.parse_property_name_identifier()
                expr = self.node("MemberExpression", start, computed=False, object=expr, property=prop)
            elif self.eat("["):
                prop = self.parse_expression()
                self.expect("]")
                expr = self.node("MemberExpression", start, computed=True, object=expr, property=prop)
            elif allow_call and self.at("("):
                args = self.parse_arguments()
                expr = self.node("CallExpression", start, callee=expr, arguments=args)
            else:
                return expr

    def parse_new(self) -> Node:
        start = self.expect("new")
        callee = self.parse_left_hand_side(allow_call=False)
        args = self.parse_arguments() if self.at("(") else ()
        return self.node("NewExpression", start, callee=callee, arguments=args)

    def parse_arguments(self) -> tuple:
        self.expect("(")
        args = []
        while not self.at(")"):
            args.append(self.parse_assignment())
            if not self.at(")"):
                self.expect(",")
        self.expect(")")
        return tuple(args)

    def parse_property_name_identifier(self) -> Node:
        tok = self.tok
        if tok.kind not in _NAME_KINDS:
            raise self.unexpected("expected a property name")
        self.advance()
        return self.node("Identifier", tok, name=tok.text if tok.kind != "identifier" else tok.value)

    def literal(self, tok: Token) -> Node:
        self.advance()
        return self.node("Literal", tok, value=tok.value, raw=tok.text,
                         literal_type=_LITERAL_TYPES[tok.kind])

    def parse_primary(self) -> Node:
        tok = self.tok
        kind = tok.kind
        if kind == "identifier":
            self.advance()
            return self.node("Identifier", tok, name=tok.value)
        if kind in _LITERAL_TYPES:
            return self.literal(tok)
        if kind == "keyword":
            if tok.text == "this":
                self.advance()
                return self.node("ThisExpression", tok)
            if tok.text == "function":
                return self.parse_function(declaration=False)
        elif kind == "punctuator":
            if tok.text == "(":
                self.advance()
                expr = self.parse_expression()
                self.expect(")")
                return expr
            if tok.text == "[":
                return self.parse_array()
            if tok.text == "{":
                return self.parse_object()
        raise self.unexpected()

    def parse_array(self) -> Node:
        start = self.expect("[")
        elements: list[Optional[Node]] = []
        while not self.at("]"):
            if self.eat(","):
                elements.append(None)
                continue
            elements.append(self.parse_assignment())
            if not self.at("]"):
                self.expect(",")
        self.expect("]")
        return self.node("ArrayExpression", start, elements=tuple(elements))

    def parse_object(self) -> Node:
        start = self.expect("{")
        properties = []
        while not self.at("}"):
            properties.append(self.parse_property())
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return self.node("ObjectExpression", start, properties=tuple(properties))

    def parse_property_key(self) -> Node:
        tok = self.tok
        if tok.kind in ("string", "number"):
            return self.literal(tok)
        return self.parse_property_name_identifier()

    def parse_property(self) -> Node:
        start = self.tok
        nxt = self.peek()
        if (start.kind == "identifier" and start.text in ("get", "set")
                and not nxt.is_punct(":") and nxt.kind in _NAME_KINDS | {"string", "number"}):
            self.advance()
            key = self.parse_property_key()
            fn_start = self.expect("(")
            params = () if start.text == "get" else (self.parse_binding_identifier(),)
            self.expect(")")
            body = self.parse_block()
            value = self.node("FunctionExpression", fn_start, id=None, params=params, body=body)
            return self.node("Property", start, key=key, value=value, property_kind=start.text)
        key = self.parse_property_key()
        self.expect(":")
        value = self.parse_assignment()
        return self.node("Property", start, key=key, value=value, property_kind="init")


def parse(tokens: list[Token], path: str = "<input>", *, recover: bool = True,
          source_text: Optional[str] = None) -> SourceFile:
    """Parse a token list into a SourceFile.

    With ``recover`` (the default) statements that cannot be parsed become
    ``OpaqueRegion`` nodes plus a warning diagnostic; otherwise the first
    error is raised.  Line counts come from ``source_text`` when given,
    else from the token extents.
    """
    parser = Parser(tokens, path, recover)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        root = parser.parse_program()
    except RecursionError:
        raise AnalysisError("syntax", "nesting too deep", tokens[0].span) from None
    finally:
        sys.setrecursionlimit(limit)

    covered: set[int] = set()
    for tok in tokens[:-1]:
        covered.update(range(tok.line, tok.end_line + 1))
    raw = physical_lines(source_text) if source_text is not None else tokens[-1].line
    count = opaque = 0
    for node in iter_nodes(root):
        count += 1
        if node.kind == OPAQUE:
            opaque += 1
    return SourceFile(path, raw, min(len(covered), raw), root, node_count=count,
                      opaque_count=opaque, diagnostics=parser.diagnostics)


def parse_source(source_text: str, path: str = "<input>", *, recover: bool = True) -> SourceFile:
    """Tokenize and parse ES5 source text."""
    tokens = tokenize(source_text, path)
    return parse(tokens, path, recover=recover, source_text=source_text)
