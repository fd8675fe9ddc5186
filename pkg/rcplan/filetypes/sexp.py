"""Read Lisp-style s-expressions, as used by PDDL files."""
import re

from rcplan.moves import ParseError

TOKEN = re.compile(r"\(|\)|[^\s()]+")


def tokenise(text: str):
    """
    Split text into (token, line number) pairs, dropping ; comments.

    >>> [token for token, _ in tokenise("(and (l)) ; done")]
    ['(', 'and', '(', 'l', ')', ')']
    """
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split(";", 1)[0]
        for match in TOKEN.finditer(line):
            yield match.group(), number


def parse(text: str) -> list:
    """
    Parse all the top-level expressions in some text.

    Lists become Python lists and atoms stay strings.

    >>> parse("(cube1 ?x ?y ?z) (edge12 ?y ?z)")
    [['cube1', '?x', '?y', '?z'], ['edge12', '?y', '?z']]
    """
    stack = [[]]
    opened = []
    for token, line in tokenise(text):
        if token == "(":
            stack.append([])
            opened.append(line)
        elif token == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", token=token, line=line)
            finished = stack.pop()
            opened.pop()
            stack[-1].append(finished)
        else:
            stack[-1].append(token)
    if opened:
        raise ParseError("unclosed '('", token="(", line=opened[-1])
    return stack[0]


def parse_one(text: str) -> list:
    """Parse text holding exactly one expression."""
    expressions = parse(text)
    if len(expressions) != 1 or not isinstance(expressions[0], list):
        raise ParseError(f"expected one expression, found {len(expressions)}")
    return expressions[0]


def to_string(expression) -> str:
    """
    Write an expression on one line.

    >>> to_string(["not", ["cube1", "?x", "?y", "?z"]])
    '(not (cube1 ?x ?y ?z))'
    """
    if isinstance(expression, list):
        return "(" + " ".join(to_string(part) for part in expression) + ")"
    return expression


def normalise(text: str) -> str:
    """
    Collapse whitespace so that texts can be compared.

    >>> normalise("(forall(?x ?z)(when (edge13 ?x ?z)\\n  (and (edge12 ?x ?z))))")
    '(forall (?x ?z) (when (edge13 ?x ?z) (and (edge12 ?x ?z))))'
    """
    return " ".join(to_string(expression) for expression in parse(text))
