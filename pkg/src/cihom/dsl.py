"""Text DSL for declaring rings and modules and queueing commands.

Grammar (one statement per line continuation is not needed; whitespace is
free-form):

    ring R = quotient(field=f32003, vars=[x,y,z,u], degrees=[1,1,1,1],
                      ideal=[x*y, z*u], minimal_primes=[[x,z],[y,u]])
    module M = coker(R, shifts=[0], matrix=[[y, u]])
    resolve M steps=6
    betti M
    tor M N bound=5
    ext M N bound=3
    profile M
    pushforward M
    quasilift M f=x*y
    check 3.12.2 on (M, N)
    search 3.17 with (ring=R, samples=20, seed=1)
    example 3.14

Polynomials use ``3*x^2*y - z*u`` syntax.  Parse errors carry line/column;
undeclared names are rejected at parse time.
"""

from __future__ import annotations

from .fmodules import ModulePresentation
from .polynomials import Polynomial
from .rings import RingPresentation


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


_SYMBOLS = "=[](),*+-^"


def tokenize(text: str):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_."):
                j += 1
            word = text[i:j]
            # trailing dots belong to punctuation, not names
            while word.endswith("."):
                word = word[:-1]
                j -= 1
            tokens.append(Token("name", word, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            word = text[i:j]
            kind = "int" if word.isdigit() else "id"
            tokens.append(Token(kind, word, line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, text=None) -> Token:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {t.text or t.kind!r}",
                             t.line, t.col)
        return self.next()

    def at(self, kind, text=None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def error(self, message):
        t = self.peek()
        raise ParseError(message, t.line, t.col)


def parse_polynomial(cur: _Cursor, poly_ring) -> Polynomial:
    """poly := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := INT | VAR ['^' INT]."""

    def factor():
        t = cur.peek()
        if t.kind == "int":
            cur.next()
            return poly_ring.from_int(int(t.text))
        if t.kind == "name":
            if t.text not in poly_ring.variables:
                raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
            cur.next()
            p = poly_ring.variable(t.text)
            if cur.at("^"):
                cur.next()
                e = cur.expect("int")
                out = poly_ring.one()
                for _ in range(int(e.text)):
                    out = out * p
                return out
            return p
        cur.error(f"expected a variable or integer, found {t.text or t.kind!r}")

    def term():
        p = factor()
        while cur.at("*"):
            cur.next()
            p = p * factor()
        return p

    negate = False
    if cur.at("-"):
        cur.next()
        negate = True
    p = term()
    if negate:
        p = -p
    while cur.at("+") or cur.at("-"):
        op = cur.next().text
        q = term()
        p = p + q if op == "+" else p - q
    return p


def _parse_int_list(cur):
    cur.expect("[")
    out = []
    while not cur.at("]"):
        neg = False
        if cur.at("-"):
            cur.next()
            neg = True
        t = cur.expect("int")
        out.append(-int(t.text) if neg else int(t.text))
        if cur.at(","):
            cur.next()
        elif not cur.at("]"):
            cur.error("expected ',' or ']' in integer list")
    cur.expect("]")
    return out


def _parse_name_list(cur):
    cur.expect("[")
    out = []
    while not cur.at("]"):
        out.append(cur.expect("name").text)
        if cur.at(","):
            cur.next()
        elif not cur.at("]"):
            cur.error("expected ',' or ']' in name list")
    cur.expect("]")
    return out


def _parse_poly_list(cur, poly_ring):
    cur.expect("[")
    out = []
    while not cur.at("]"):
        out.append(parse_polynomial(cur, poly_ring))
        if cur.at(","):
            cur.next()
            if cur.at("]"):
                cur.error("dangling comma in polynomial list")
        elif not cur.at("]"):
            cur.error("expected ',' or ']' in polynomial list")
    cur.expect("]")
    return out


def _parse_glued_id(cur) -> str:
    """An identifier like 3.12.2, pre-3.4 or cor4.7-instance: adjacent
    name/id/int/'-' tokens glued by textual contiguity."""
    t = cur.next()
    if t.kind not in ("name", "id", "int"):
        raise ParseError("expected an identifier", t.line, t.col)
    text = t.text
    end = t.col + len(t.text)
    line = t.line
    while True:
        nxt = cur.peek()
        if (nxt.kind in ("name", "id", "int", "-") and nxt.line == line
                and nxt.col == end):
            text += nxt.text
            end += len(nxt.text)
            cur.next()
        else:
            break
    return text


class Session:
    """Declared rings/modules plus the command list, ready to execute."""

    def __init__(self):
        self.rings: dict = {}
        self.modules: dict = {}
        self.commands: list = []

    def ring_of(self, module_name):
        return self.modules[module_name].ring


def parse_session(text: str) -> Session:
    """Full parse or a first-error report with line and column."""
    cur = _Cursor(tokenize(text))
    session = Session()
    while not cur.at("eof"):
        t = cur.peek()
        if t.kind != "name":
            if t.kind == "id":
                cur.error(f"statements start with a keyword, found {t.text!r}")
            cur.error(f"expected a statement, found {t.text or t.kind!r}")
        keyword = t.text
        if keyword == "ring":
            _parse_ring_decl(cur, session)
        elif keyword == "module":
            _parse_module_decl(cur, session)
        elif keyword in ("resolve", "betti", "profile", "pushforward"):
            _parse_single_module_command(cur, session, keyword)
        elif keyword in ("tor", "ext"):
            _parse_pair_command(cur, session, keyword)
        elif keyword == "quasilift":
            _parse_quasilift(cur, session)
        elif keyword == "check":
            _parse_check(cur, session)
        elif keyword == "search":
            _parse_search(cur, session)
        elif keyword == "example":
            _parse_example(cur, session)
        else:
            cur.error(f"unknown statement {keyword!r}")
    return session


def _parse_options(cur, session, poly_ring=None, allowed=None):
    opts = {}
    while cur.at("name") and cur.tokens[cur.pos + 1].kind == "=":
        key = cur.next().text
        if allowed is not None and key not in allowed:
            cur.error(f"unknown option {key!r}")
        cur.expect("=")
        if key == "f" and poly_ring is not None:
            opts[key] = parse_polynomial(cur, poly_ring)
        elif cur.at("["):
            opts[key] = _parse_int_list(cur)
        else:
            neg = False
            if cur.at("-"):
                cur.next()
                neg = True
            t = cur.next()
            if t.kind == "int":
                opts[key] = -int(t.text) if neg else int(t.text)
            else:
                opts[key] = t.text
    return opts


def _parse_ring_decl(cur, session):
    cur.expect("name", "ring")
    name = cur.expect("name").text
    if name in session.rings or name in session.modules:
        cur.error(f"name {name!r} already declared")
    cur.expect("=")
    cur.expect("name", "quotient")
    cur.expect("(")
    field_tag = "f32003"
    variables = None
    degrees = None
    ideal_tokens_start = None
    poly_ring = None
    ideal = []
    primes = None
    while not cur.at(")"):
        key = cur.expect("name").text
        cur.expect("=")
        if key == "field":
            field_tag = cur.next().text
        elif key == "vars":
            variables = _parse_name_list(cur)
        elif key == "degrees":
            degrees = _parse_int_list(cur)
        elif key == "ideal":
            if variables is None:
                cur.error("declare vars=[] before ideal=[]")
            from .fields import field_by_tag
            poly_ring = poly_ring or _mk_poly_ring(field_tag, variables, degrees)
            ideal = _parse_poly_list(cur, poly_ring)
        elif key == "minimal_primes":
            if variables is None:
                cur.error("declare vars=[] before minimal_primes=[]")
            poly_ring = poly_ring or _mk_poly_ring(field_tag, variables, degrees)
            cur.expect("[")
            primes = []
            while not cur.at("]"):
                primes.append(_parse_poly_list(cur, poly_ring))
                if cur.at(","):
                    cur.next()
            cur.expect("]")
        else:
            cur.error(f"unknown ring option {key!r}")
        if cur.at(","):
            cur.next()
    cur.expect(")")
    if variables is None:
        cur.error("ring declaration needs vars=[...]")
    poly_ring = poly_ring or _mk_poly_ring(field_tag, variables, degrees)
    ring = RingPresentation(poly_ring, ideal, label=name,
                            minimal_primes=primes)
    session.rings[name] = ring


def _mk_poly_ring(field_tag, variables, degrees):
    from .fields import field_by_tag
    from .polynomials import PolyRing
    return PolyRing(field_by_tag(field_tag), variables, degrees)


def _parse_module_decl(cur, session):
    cur.expect("name", "module")
    name = cur.expect("name").text
    if name in session.rings or name in session.modules:
        cur.error(f"name {name!r} already declared")
    cur.expect("=")
    cur.expect("name", "coker")
    cur.expect("(")
    ring_tok = cur.expect("name")
    ring = session.rings.get(ring_tok.text)
    if ring is None:
        raise ParseError(f"undeclared ring {ring_tok.text!r}", ring_tok.line, ring_tok.col)
    shifts = [0]
    rows = None
    while cur.at(","):
        cur.next()
        key = cur.expect("name").text
        cur.expect("=")
        if key == "shifts":
            shifts = _parse_int_list(cur)
        elif key == "matrix":
            cur.expect("[")
            rows = []
            while not cur.at("]"):
                rows.append(_parse_poly_list(cur, ring.poly_ring))
                if cur.at(","):
                    cur.next()
                    if cur.at("]"):
                        cur.error("dangling comma in matrix")
            cur.expect("]")
        else:
            cur.error(f"unknown module option {key!r}")
    cur.expect(")")
    if rows is None:
        rows = [[] for _ in shifts]
    if len(rows) != len(shifts):
        cur.error(f"matrix has {len(rows)} rows but shifts lists {len(shifts)} generators")
    ncols = {len(r) for r in rows}
    if len(ncols) > 1:
        cur.error("matrix rows have unequal lengths")
    columns = []
    width = ncols.pop() if ncols else 0
    for j in range(width):
        columns.append([rows[i][j] for i in range(len(rows))])
    module = ModulePresentation.from_relations(ring, tuple(shifts), columns, label=name)
    session.modules[name] = module


def _require_module(cur, session, tok):
    if tok.text not in session.modules:
        raise ParseError(f"undeclared module {tok.text!r}", tok.line, tok.col)
    return tok.text


def _parse_single_module_command(cur, session, keyword):
    cur.expect("name", keyword)
    mod = _require_module(cur, session, cur.expect("name"))
    opts = _parse_options(cur, session,
                          allowed={"steps", "over", "window"})
    session.commands.append({"command": keyword, "module": mod, **opts})


def _parse_pair_command(cur, session, keyword):
    cur.expect("name", keyword)
    a = _require_module(cur, session, cur.expect("name"))
    b = _require_module(cur, session, cur.expect("name"))
    opts = _parse_options(cur, session, allowed={"bound", "degree_bound", "side"})
    session.commands.append({"command": keyword, "module": a, "argument": b, **opts})


def _parse_quasilift(cur, session):
    cur.expect("name", "quasilift")
    mod = _require_module(cur, session, cur.expect("name"))
    ring = session.ring_of(mod)
    opts = _parse_options(cur, session, poly_ring=ring.poly_ring, allowed={"f"})
    if "f" not in opts:
        cur.error("quasilift needs f=<quotient generator>")
    session.commands.append({"command": "quasilift", "module": mod, "f": opts["f"]})


def _parse_check(cur, session):
    cur.expect("name", "check")
    sid = _parse_glued_id(cur)
    cur.expect("name", "on")
    cur.expect("(")
    mods = []
    opts = {}
    while not cur.at(")"):
        if cur.at("name") and cur.tokens[cur.pos + 1].kind == "=":
            key = cur.next().text
            cur.expect("=")
            neg = False
            if cur.at("-"):
                cur.next()
                neg = True
            v = cur.next()
            opts[key] = -int(v.text) if (neg and v.kind == "int") else (
                int(v.text) if v.kind == "int" else v.text)
        else:
            mods.append(_require_module(cur, session, cur.expect("name")))
        if cur.at(","):
            cur.next()
    cur.expect(")")
    if not mods:
        cur.error("check needs at least one module")
    session.commands.append({"command": "check", "id": sid, "modules": mods, **opts})


def _parse_search(cur, session):
    cur.expect("name", "search")
    qid = _parse_glued_id(cur)
    cur.expect("name", "with")
    cur.expect("(")
    opts = {}
    while not cur.at(")"):
        key = cur.expect("name").text
        cur.expect("=")
        v = cur.next()
        if key == "ring":
            if v.text not in session.rings:
                raise ParseError(f"undeclared ring {v.text!r}", v.line, v.col)
            opts["ring"] = v.text
        else:
            opts[key] = int(v.text) if v.kind == "int" else v.text
        if cur.at(","):
            cur.next()
    cur.expect(")")
    if "ring" not in opts:
        cur.error("search needs ring=<declared ring>")
    session.commands.append({"command": "search", "id": qid, **opts})


def _parse_example(cur, session):
    cur.expect("name", "example")
    session.commands.append({"command": "example", "id": _parse_glued_id(cur)})


def unparse_declarations(session: Session) -> str:
    """Canonical script text for the declared rings and modules.

    Parsing the result reproduces the declarations up to canonical form
    (same rings and presentations), which is the round-trip contract.
    """
    lines = []
    for name, ring in session.rings.items():
        pr = ring.poly_ring
        parts = [f"field={pr.field.tag}",
                 "vars=[" + ",".join(pr.variables) + "]",
                 "degrees=[" + ",".join(str(d) for d in pr.degrees) + "]",
                 "ideal=[" + ", ".join(f.text() for f in ring.quotient_gens) + "]"]
        if ring.has_minimal_primes:
            primes = ring.minimal_primes()
            if any(p.check_status != "computed" for p in primes):
                body = ",".join("[" + ", ".join(g.text() for g in p.gens) + "]"
                                for p in primes)
                parts.append(f"minimal_primes=[{body}]")
        lines.append(f"ring {name} = quotient(" + ", ".join(parts) + ")")
    for name, mod in session.modules.items():
        ring_name = next(rn for rn, r in session.rings.items()
                         if r.same_ring(mod.ring))
        shifts = "[" + ",".join(str(d) for d in mod.gen_degs) + "]"
        rows = ",".join("[" + ", ".join(p.text() for p in row) + "]"
                        for row in mod.relations.entries)
        lines.append(f"module {name} = coker({ring_name}, shifts={shifts}, "
                     f"matrix=[{rows}])")
    return "\n".join(lines) + "\n"
