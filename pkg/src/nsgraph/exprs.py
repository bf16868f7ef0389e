"""Integer expressions over one index variable, parsed with :mod:`ast`.

Used for node templates in presentations (``X(k+1)``) and for hypernode
literals on the command line (``p(2*n+1, n//3)``).  Only ``+ - * // %``,
unary minus, integer constants and names are accepted.
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction

from .graphzero import NodeRef, GraphError
from .symbolic import Affine, ClassContext, NonAffine, Refine, Sym

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}


class ExprError(GraphError):
    pass


def compile_expr(text: str) -> ast.AST:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ExprError(f"cannot parse expression {text!r}") from e
    _validate(tree.body, text)
    return tree.body


def _validate(node, text):
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        _validate(node.left, text)
        _validate(node.right, text)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        _validate(node.operand, text)
    elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        pass
    elif isinstance(node, ast.Name):
        pass
    else:
        raise ExprError(f"unsupported syntax in {text!r}")


def evaluate(node: ast.AST, env: dict):
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](evaluate(node.left, env), evaluate(node.right, env))
    if isinstance(node, ast.UnaryOp):
        v = evaluate(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant):
        return node.value
    try:
        return env[node.id]
    except KeyError:
        raise ExprError(f"unknown name {node.id!r}") from None


def names(node: ast.AST) -> set:
    return {n.id for n in ast.walk(node) if isinstance(n, ast.Name)}


def parse_affine(text: str, var: str):
    """An int, or an :class:`Affine` in ``var``; anything else is rejected."""
    tree = compile_expr(text)
    extra = names(tree) - {var}
    if extra:
        raise ExprError(f"unknown names {sorted(extra)} in {text!r}")
    ctx = ClassContext(0, 1, 0)
    try:
        v = evaluate(tree, {var: ctx.n})
    except (Refine, NonAffine):
        raise ExprError(f"{text!r} is not affine in {var}") from None
    if isinstance(v, Sym):
        if v.slope == 0:
            return int(v.const)
        return Affine(v.slope, v.const)
    return int(v)


def split_call(text: str):
    """``"fam(a, b)"`` -> ``("fam", ["a", "b"])``; ``"fam"`` -> ``("fam", [])``."""
    text = text.strip()
    if "(" not in text:
        if not text.isidentifier():
            raise ExprError(f"bad node template {text!r}")
        return text, []
    if not text.endswith(")"):
        raise ExprError(f"bad node template {text!r}")
    head, body = text.split("(", 1)
    head = head.strip()
    if not head.isidentifier():
        raise ExprError(f"bad node template {text!r}")
    parts, depth, cur = [], 0, ""
    for ch in body[:-1]:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        parts.append(cur)
    return head, [p.strip() for p in parts]


def parse_template(text: str, var: str = "k") -> NodeRef:
    """A node whose params are ints or affine in ``var``."""
    fam, args = split_call(text)
    return NodeRef(fam, tuple(parse_affine(a, var) for a in args))


def format_template(t: NodeRef, var: str = "k") -> str:
    if not t.params:
        return t.family
    return f"{t.family}({','.join(_fmt_param(p, var) for p in t.params)})"


def _fmt_param(p, var):
    if isinstance(p, Affine):
        return str(p).replace("n", var)
    return str(p)


def instantiate_template(t: NodeRef, value) -> NodeRef:
    """Substitute ``value`` (int or symbolic) for the template variable."""
    def leaf(p):
        if isinstance(p, Affine):
            if isinstance(value, Sym):
                return value * p.slope + p.const
            return p.at(value)
        return p
    return NodeRef(t.family, tuple(leaf(p) for p in t.params))


ANY = object()


def solve_template(t: NodeRef, target: NodeRef):
    """Values of the variable for which ``t`` equals ``target``.

    Returns :data:`ANY` when every value works, ``None`` when none does, else
    the unique solution.  Works for symbolic targets as long as the result
    stays affine.
    """
    if t.family != target.family or len(t.params) != len(target.params):
        return None
    sol = ANY
    for p, v in zip(t.params, target.params):
        if isinstance(p, Affine):
            num = v - p.const
            k = num * (1 / p.slope) if isinstance(num, Sym) else Fraction(num) / p.slope
            if not isinstance(k, Sym):
                if k.denominator != 1:
                    return None
                k = int(k)
            elif k.slope.denominator != 1 or k.const.denominator != 1:
                return None
            if sol is ANY:
                sol = k
            elif not sol == k:
                return None
        elif not p == v:
            return None
    return sol
