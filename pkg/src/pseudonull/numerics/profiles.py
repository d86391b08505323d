"""Initial profiles given as short expressions in the arc-length variable ``s``.

``"sin"``, ``"2+cos"`` and ``"0.5*sin(2*s)"`` are all accepted: a bare
function name stands for that function applied to ``s``.  Only arithmetic,
a few elementary functions and the constants ``pi`` and ``e`` are allowed.
"""

from __future__ import annotations

import ast
import operator

import numpy as np

__all__ = ["ProfileError", "compile_profile"]


class ProfileError(ValueError):
    pass


_FUNCS = {
    name: getattr(np, name)
    for name in ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh", "arctan", "abs")
}
_CONSTS = {"pi": np.pi, "e": np.e}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _eval(node, s):
    if isinstance(node, ast.Expression):
        return _eval(node.body, s)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.Name):
        if node.id == "s":
            return s
        if node.id in _CONSTS:
            return _CONSTS[node.id]
        if node.id in _FUNCS:
            return _FUNCS[node.id](s)
        raise ProfileError(f"unknown name {node.id!r} at offset {node.col_offset}")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, s), _eval(node.right, s))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_eval(node.operand, s))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        if len(node.args) != 1 or node.keywords:
            raise ProfileError(f"{node.func.id} takes one argument")
        return _FUNCS[node.func.id](_eval(node.args[0], s))
    raise ProfileError(f"unsupported syntax at offset {getattr(node, 'col_offset', 0)}")


def compile_profile(text: str):
    """Return a vectorized callable ``s -> values`` for ``text``."""
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ProfileError(f"cannot parse profile {text!r}: {exc.msg} at offset {(exc.offset or 1) - 1}") from None
    _eval(tree, np.zeros(1))  # reject bad names before any work is done

    def fn(s):
        s = np.asarray(s, dtype=float)
        return np.broadcast_to(np.asarray(_eval(tree, s), dtype=float), s.shape).copy()

    return fn
