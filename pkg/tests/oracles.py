"""Independent reference implementations used to check the analyzer.

Nothing here imports the package's lexer, parser or analyses.  The def/use
oracle works on a regex token stream with brace matching, and the path
oracle enumerates maximal simple walks by brute force.
"""
from __future__ import annotations

import re

_TOKEN = re.compile(
    r"""(?P<ws>\s+)|(?P<comment>//[^\n]*|/\*.*?\*/)|(?P<str>"(?:\\.|[^"\\\n])*")
    |(?P<num>\d+)|(?P<id>[A-Za-z_]\w*)
    |(?P<op>\+\+|--|\+=|-=|\*=|/=|==|!=|<=|>=|&&|\|\||.)""",
    re.S | re.X,
)
_TYPES = {"int", "string", "bool", "void"}
_ASSIGN = {"=", "+=", "-=", "*=", "/="}
_MODIFIERS = {"public", "private", "protected"}


def tokens(source: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(source):
        if m.lastgroup in ("ws", "comment"):
            continue
        out.append('""' if m.lastgroup == "str" else m.group())
    return out


def _match(toks: list[str], i: int, open_: str, close: str) -> int:
    """Index of the bracket closing the one at ``toks[i]``."""
    depth = 0
    for j in range(i, len(toks)):
        if toks[j] == open_:
            depth += 1
        elif toks[j] == close:
            depth -= 1
            if depth == 0:
                return j
    raise ValueError("unbalanced")


def _classes(toks):
    """Yield (name, base, body tokens) for each class."""
    i = 0
    while i < len(toks):
        if toks[i] == "class":
            name = toks[i + 1]
            j = i + 2
            base = None
            if toks[j] == ":":
                base = toks[j + 1]
                j += 2
                while toks[j] == ",":
                    j += 2
            end = _match(toks, j, "{", "}")
            yield name, base, toks[j + 1:end]
            i = end + 1
        else:
            i += 1


def _split_commas(toks):
    groups, cur, depth = [], [], 0
    for t in toks:
        depth += t == "("
        depth -= t == ")"
        if t == "," and depth == 0:
            groups.append(cur)
            cur = []
        else:
            cur.append(t)
    if cur:
        groups.append(cur)
    return groups


def _members(body):
    """Split a class body into ('field', names) and ('method', name, ptypes, pnames, body)."""
    out = []
    i = 0
    while i < len(body):
        j = i
        while body[j] not in (";", "(", "{"):
            j += 1
        if body[j] == ";":
            decl = [t for t in body[i:j] if t not in _MODIFIERS][1:]  # drop the type
            out.append(("field", [g[0] for g in _split_commas(decl)]))
            i = j + 1
        else:
            close = _match(body, j, "(", ")")
            groups = _split_commas(body[j + 1:close])
            end = _match(body, close + 1, "{", "}")
            out.append(("method", body[j - 1], [g[0] for g in groups], [g[-1] for g in groups],
                        body[close + 2:end]))
            i = end + 1
    return out


def _statements(body):
    chunk = []
    for t in body:
        if t in (";", "{", "}"):
            if chunk:
                yield chunk
            chunk = []
        else:
            chunk.append(t)
    if chunk:
        yield chunk


def _strip_control(chunk):
    """Drop leading if/while/else heads; returns (rest, condition tokens)."""
    conds = []
    while chunk:
        if chunk[0] in ("if", "while") and len(chunk) > 1 and chunk[1] == "(":
            close = _match(chunk, 1, "(", ")")
            conds += chunk[1:close + 1]
            chunk = chunk[close + 1:]
        elif chunk[0] == "else":
            chunk = chunk[1:]
        else:
            break
    return chunk, conds


def _is_ident(t: str) -> bool:
    return bool(re.match(r"[A-Za-z_]\w*$", t))


def _scan_statement(chunk, fields):
    defs, uses = set(), set()
    chunk, conds = _strip_control(chunk)
    if conds:
        uses |= _scan_statement(["return"] + conds, fields)[1]
    if not chunk:
        return defs, uses
    target, compound = None, False
    is_decl = chunk[0] in _TYPES or (len(chunk) > 1 and _is_ident(chunk[0]) and _is_ident(chunk[1])
                                      and chunk[0] not in ("return", "new", "this"))
    if not is_decl and chunk[0] != "return":
        if chunk[0] in ("++", "--"):
            target, compound = 1, True
        else:
            depth = 0
            for k, t in enumerate(chunk):
                depth += t == "("
                depth -= t == ")"
                if depth == 0 and t in _ASSIGN:
                    target, compound = 0, t != "="
                    break
            else:
                if chunk[-1] in ("++", "--"):
                    target, compound = 0, True
        if target is not None:
            # target must be exactly `x` or `this.x` followed by the operator
            if chunk[target] == "this" and chunk[target + 1] == ".":
                target += 2
            after = chunk[target + 1] if target + 1 < len(chunk) else None
            if after not in _ASSIGN | {"++", "--"} and not (chunk[0] in ("++", "--") and after is None):
                target = None
    for k, t in enumerate(chunk):
        if t not in fields:
            continue
        if k + 1 < len(chunk) and chunk[k + 1] == "(":
            continue
        if k >= 1 and chunk[k - 1] == "." and not (k >= 2 and chunk[k - 2] == "this"):
            continue
        if k == target:
            defs.add(t)
            if compound:
                uses.add(t)
        else:
            uses.add(t)
    return defs, uses


def def_use(source: str) -> dict[str, list[tuple[str, set[str], set[str]]]]:
    """Per class: (member name, defs, uses) for every method and constructor in textual order.

    Assumes no local or parameter shadows a field.
    """
    toks = tokens(source)
    own: dict[str, list[str]] = {}
    bases: dict[str, str | None] = {}
    members = {}
    for name, base, body in _classes(toks):
        ms = _members(body)
        own[name] = [n for m in ms if m[0] == "field" for n in m[1]]
        bases[name] = base
        members[name] = [m for m in ms if m[0] == "method"]

    def effective(name):
        seen, out = set(), []
        while name in own and name not in seen:
            seen.add(name)
            out = own[name] + out
            name = bases[name]
        return set(out)

    result = {}
    for name, ms in members.items():
        fields = effective(name)
        rows = []
        for _, mname, _, params, body in ms:
            defs, uses = set(), set()
            for chunk in _statements(body):
                d, u = _scan_statement(chunk, fields - set(params))
                defs |= d
                uses |= u
            rows.append((mname, defs, uses))
        result[name] = rows
    return result


def maximal_walks(root, methods, defs, uses, field_pos, decl_index):
    """All maximal simple walks from ``root``, in depth-first discovery order.

    ``methods`` are the candidate successors; an edge a -> b exists when b
    defines a field that a uses.  Children are ordered by the smallest
    (field position, declaration index) over the linking fields.
    """
    def rank(parent, child):
        shared = uses[parent] & defs[child]
        return min(field_pos[f] for f in shared), decl_index[child]

    found = []

    def extend(path):
        last = path[-1]
        nxt = [m for m in methods if m not in path and uses[last] & defs[m]]
        if not nxt:
            found.append(tuple(path))
            return
        for m in sorted(nxt, key=lambda m: rank(last, m)):
            extend(path + [m])

    extend([root])
    return found


def coupling_scan(source: str, class_names: set[str]) -> dict[str, list[tuple[str, list[str]]]]:
    """Per class: (member name, user-class parameter types) for members with at least one."""
    out = {}
    for name, _, body in _classes(tokens(source)):
        rows = []
        for m in _members(body):
            if m[0] == "method":
                hits = [t for t in m[2] if t in class_names]
                if hits:
                    rows.append((m[1], hits))
        out[name] = rows
    return out
