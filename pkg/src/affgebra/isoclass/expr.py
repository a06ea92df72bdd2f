"""Tiny arithmetic/boolean expression language for family templates.

Templates and side conditions are stored once as strings such as
``"(beta1-beta5)*(1-beta1)/lam"`` or ``"beta4 != 1"``; the same string is
evaluated when building representatives and rendered for the table.
"""

from __future__ import annotations

import ast
import operator
import re
from functools import lru_cache

from ..exactnum import Q

_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_CMP = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}
_CMP_TEXT = {ast.Eq: "=", ast.NotEq: "≠", ast.Lt: "<", ast.LtE: "≤", ast.Gt: ">", ast.GtE: "≥"}


@lru_cache(maxsize=None)
def parse(text: str) -> ast.AST:
    tree = ast.parse(text, mode="eval").body
    for node in ast.walk(tree):
        ok = isinstance(
            node,
            (ast.BinOp, ast.UnaryOp, ast.Compare, ast.BoolOp, ast.Name, ast.Constant, ast.Load,
             ast.USub, ast.Not, ast.And, ast.Or, *_BIN, *_CMP),
        )
        if not ok or (isinstance(node, ast.Constant) and not isinstance(node.value, int)):
            raise ValueError(f"unsupported syntax in {text!r}")
    return tree


def names(text: str) -> set[str]:
    return {n.id for n in ast.walk(parse(text)) if isinstance(n, ast.Name)}


def evaluate(text: str, env: dict):
    return _eval(parse(text), env)


def _eval(node, env):
    if isinstance(node, ast.Constant):
        return Q(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env or env[node.id] is None:
            raise KeyError(f"no value for {node.id}")
        return env[node.id]
    if isinstance(node, ast.BinOp):
        return _BIN[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else not v
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    left = _eval(node.left, env)
    for op, comp in zip(node.ops, node.comparators):
        right = _eval(comp, env)
        if not _CMP[type(op)](left, right):
            return False
        left = right
    return True


_SYMBOL = re.compile(r"^(beta|gamma|alpha)(\d+)$")
_GREEK = {"beta": "β", "gamma": "γ", "alpha": "α"}


def symbol(name: str) -> str:
    m = _SYMBOL.match(name)
    if m:
        return _GREEK[m.group(1)] + m.group(2)
    return "λ" if name == "lam" else name


_PREC = {ast.Add: 1, ast.Sub: 1, ast.Mult: 2, ast.Div: 2}


def render(text: str) -> str:
    return _render(parse(text))


def _render(node) -> str:
    if isinstance(node, ast.Constant):
        return str(node.value)
    if isinstance(node, ast.Name):
        return symbol(node.id)
    if isinstance(node, ast.UnaryOp):
        inner = _render(node.operand)
        return f"−{inner}" if isinstance(node.op, ast.USub) else f"not ({inner})"
    if isinstance(node, ast.BinOp):
        p = _PREC[type(node.op)]
        left = _wrap(node.left, p, False)
        right = _wrap(node.right, p, not isinstance(node.op, (ast.Add, ast.Mult)))
        if isinstance(node.op, ast.Mult):
            return left + right if right.startswith("(") else f"{left}·{right}"
        sym = {ast.Add: " + ", ast.Sub: " − ", ast.Div: "/"}[type(node.op)]
        return left + sym + right
    if isinstance(node, ast.BoolOp):
        sep = " and " if isinstance(node.op, ast.And) else " or "
        return sep.join(_render(v) for v in node.values)
    parts = [_render(node.left)]
    for op, comp in zip(node.ops, node.comparators):
        parts += [_CMP_TEXT[type(op)], _render(comp)]
    return " ".join(parts)


def _wrap(node, prec, strict) -> str:
    s = _render(node)
    if isinstance(node, ast.BinOp):
        q = _PREC[type(node.op)]
        if q < prec or (strict and q == prec):
            return f"({s})"
    return s
