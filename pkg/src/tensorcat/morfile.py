"""Plain-text morphism files and a small expression language over them.

A file is a sequence of declarations, one per line or block::

    # comments run to the end of the line
    object A = 3
    mat M : 2 -> 3 = [1 0; 0 1; 2/3 -1]
    one f : A -> 2
      row [1 2] [] [1]
      row [3] [1] [0 1]
    end
    two theta : f => g
      entry 1 1 = [1 0 0; 0 1 0]
      ...
    end

Objects are named naturals and may be used wherever a natural is expected.
A ``one`` block has one ``row`` per target index, each listing the component
dimensions of every entry.  A ``two`` block gives every entry of the grid
(1-based ``entry k j``) as a matrix; ``[]`` is an empty matrix, whose shape
is read off the two 1-morphisms.

:func:`dump` writes the canonical form: objects, matrices, 1-morphisms and
2-morphisms, each group sorted by name, integers for objects, rationals as
``p/q``.  Parsing canonical text and dumping it again reproduces it byte for
byte.

Expressions (see :func:`evaluate`) combine names with, loosest first::

    +            addition of parallel 2-morphisms or matrices
    (+)  ⊕       direct sum
    .v   ⊙       vertical composition
    .h   ∘       horizontal composition, whiskering, matrix composition
    .h2  ∘₂      horizontal composition of 2-morphisms

and the builders ``id``, ``zero``, ``p``, ``i``, ``pi``/``π``, ``nu``/``ν``,
``theta``/``θ``, ``normalize``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from . import biproduct2, matcat, twovect
from .field import DenseMatrix, ShapeError, format_rational, rational
from .matcat import MatMor
from .twovect import OneMor, TwoMor


class MorParseError(ValueError):
    """Malformed file or expression text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column


class MorTypeError(ShapeError):
    """A well-formed expression whose operands do not fit together."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(f"column {column}: {message}" if column is not None else message)
        self.column = column


@dataclass
class MorDoc:
    objects: dict[str, int] = dc_field(default_factory=dict)
    mats: dict[str, MatMor] = dc_field(default_factory=dict)
    ones: dict[str, OneMor] = dc_field(default_factory=dict)
    twos: dict[str, TwoMor] = dc_field(default_factory=dict)
    comments: list[str] = dc_field(default_factory=list)

    def names(self) -> set[str]:
        return set(self.objects) | set(self.mats) | set(self.ones) | set(self.twos)

    def lookup(self, name: str):
        for table in (self.objects, self.mats, self.ones, self.twos):
            if name in table:
                return table[name]
        raise KeyError(name)

    def add(self, name: str, value) -> None:
        """Store ``value`` under the table matching its type."""
        if isinstance(value, bool) or not isinstance(value, (int, MatMor, OneMor, TwoMor)):
            raise TypeError(f"cannot store {type(value).__name__} in a morphism file")
        if isinstance(value, int):
            self.objects[name] = value
        elif isinstance(value, MatMor):
            self.mats[name] = value
        elif isinstance(value, OneMor):
            self.ones[name] = value
        else:
            self.twos[name] = value


# ------------------------------------------------------------------- writing

def _fmt_matrix(m: DenseMatrix) -> str:
    if not m.rows or not m.cols:
        return "[]"
    rows = [" ".join(format_rational(x) for x in m.row(i)) for i in range(m.rows)]
    return "[" + "; ".join(rows) + "]"


def _fmt_decomp(d) -> str:
    return "[" + " ".join(str(x) for x in d) + "]"


def _one_name(doc: MorDoc, f: OneMor, prefer: str) -> str:
    for name, g in doc.ones.items():
        if g == f:
            return name
    name, n = prefer, 1
    while name in doc.names():
        n += 1
        name = f"{prefer}{n}"
    doc.ones[name] = f
    return name


def dump(doc: MorDoc) -> str:
    """Canonical text for ``doc``.

    The source and target of every 2-morphism must be stored in ``doc.ones``;
    :func:`with_sources` adds missing ones.
    """
    out = [f"# {c}" if c else "#" for c in doc.comments]
    for name in sorted(doc.objects):
        out.append(f"object {name} = {doc.objects[name]}")
    for name in sorted(doc.mats):
        m = doc.mats[name]
        out.append(f"mat {name} : {m.src} -> {m.tgt} = {_fmt_matrix(m.mat)}")
    for name in sorted(doc.ones):
        f = doc.ones[name]
        out.append(f"one {name} : {f.src} -> {f.tgt}")
        for k in range(f.tgt):
            out.append("  row " + " ".join(_fmt_decomp(f[k, j]) for j in range(f.src)) if f.src
                       else "  row")
        out.append("end")
    inverse = {}
    for name in sorted(doc.ones, reverse=True):
        inverse[doc.ones[name]] = name
    for name in sorted(doc.twos):
        t = doc.twos[name]
        if t.src not in inverse or t.tgt not in inverse:
            raise ValueError(f"2-morphism {name!r} refers to an undeclared 1-morphism")
        out.append(f"two {name} : {inverse[t.src]} => {inverse[t.tgt]}")
        for k, j in t.src.positions():
            out.append(f"  entry {k + 1} {j + 1} = {_fmt_matrix(t[k, j])}")
        out.append("end")
    return "\n".join(out) + "\n"


def with_sources(doc: MorDoc) -> MorDoc:
    """Declare the source and target of every 2-morphism that lacks one."""
    for name in sorted(doc.twos):
        t = doc.twos[name]
        _one_name(doc, t.src, f"{name}_src")
        _one_name(doc, t.tgt, f"{name}_tgt")
    return doc


def dumps(**named) -> str:
    """Serialize keyword-named morphisms (sources of 2-morphisms included)."""
    doc = MorDoc()
    for name, value in named.items():
        doc.add(name, value)
    return dump(with_sources(doc))


# ------------------------------------------------------------------- reading

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_RE_OBJECT = re.compile(rf"object\s+({_NAME})\s*=\s*(\S+)$")
_RE_MAT = re.compile(rf"mat\s+({_NAME})\s*:\s*(\S+)\s*->\s*(\S+)\s*=\s*(\[.*\])$")
_RE_ONE = re.compile(rf"one\s+({_NAME})\s*:\s*(\S+)\s*->\s*(\S+)$")
_RE_TWO = re.compile(rf"two\s+({_NAME})\s*:\s*({_NAME})\s*=>\s*({_NAME})$")
_RE_ENTRY = re.compile(r"entry\s+(\d+)\s+(\d+)\s*=\s*(\[.*\])$")
_RE_DECOMP = re.compile(r"\[([^\[\]]*)\]")


def _parse_natural(text: str, doc: MorDoc, line: int) -> int:
    if text.isdigit():
        return int(text)
    if text in doc.objects:
        return doc.objects[text]
    raise MorParseError(f"expected a natural or a declared object, got {text!r}", line)


def _parse_matrix(text: str, line: int) -> list[list]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise MorParseError(f"matrix must be bracketed: {text!r}", line)
    body = body[1:-1].strip()
    if not body:
        return []
    rows = []
    for chunk in body.split(";"):
        try:
            rows.append([rational(tok) for tok in chunk.split()])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise MorParseError(f"bad matrix entry in {chunk.strip()!r}: {exc}", line) from None
    if any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise MorParseError("ragged or empty matrix row", line)
    return rows


def _parse_row(text: str, line: int) -> list[tuple]:
    rest = _RE_DECOMP.sub("", text)
    if rest.strip():
        raise MorParseError(f"unexpected text in row: {rest.strip()!r}", line)
    out = []
    for m in _RE_DECOMP.finditer(text):
        toks = m.group(1).split()
        if not all(t.isdigit() for t in toks):
            raise MorParseError(f"component dimensions must be naturals: [{m.group(1)}]", line)
        out.append(tuple(int(t) for t in toks))
    return out


def parse(text: str) -> MorDoc:
    """Read a morphism file; raises :class:`MorParseError` or :class:`MorTypeError`."""
    doc = MorDoc()
    lines = text.splitlines()
    pending = []  # 2-morphisms, resolved once every 1-morphism is known
    i = 0
    seen: set[str] = set()

    def claim(name, ln):
        if name in seen:
            raise MorParseError(f"duplicate name {name!r}", ln)
        seen.add(name)

    while i < len(lines):
        ln = i + 1
        raw = lines[i]
        i += 1
        stripped = raw.strip()
        if stripped.startswith("#"):
            doc.comments.append(stripped[1:].strip())
            continue
        if not stripped:
            continue
        if m := _RE_OBJECT.match(stripped):
            claim(m.group(1), ln)
            doc.objects[m.group(1)] = _parse_natural(m.group(2), doc, ln)
        elif m := _RE_MAT.match(stripped):
            name = m.group(1)
            claim(name, ln)
            src, tgt = (_parse_natural(m.group(k), doc, ln) for k in (2, 3))
            rows = _parse_matrix(m.group(4), ln)
            mat = DenseMatrix.from_rows(rows) if rows else DenseMatrix(tgt, src) if not src * tgt else None
            if mat is None or mat.shape != (tgt, src):
                shape = f"{mat.rows}x{mat.cols}" if mat is not None else "empty"
                raise MorTypeError(f"line {ln}: {shape} matrix declared as {src} -> {tgt}")
            doc.mats[name] = MatMor(src, tgt, mat)
        elif m := _RE_ONE.match(stripped):
            name = m.group(1)
            claim(name, ln)
            src, tgt = (_parse_natural(m.group(k), doc, ln) for k in (2, 3))
            grid = []
            while True:
                if i >= len(lines):
                    raise MorParseError(f"unterminated 1-morphism {name!r}", ln)
                body = lines[i].strip()
                i += 1
                if body == "end":
                    break
                if not body or body.startswith("#"):
                    continue
                if not (body == "row" or body.startswith("row ")):
                    raise MorParseError(f"expected 'row' or 'end', got {body!r}", i)
                row = _parse_row(body[3:], i)
                if len(row) != src:
                    raise MorParseError(f"row has {len(row)} entries, expected {src}", i)
                grid.append(row)
            if len(grid) != tgt:
                raise MorParseError(f"1-morphism {name!r} has {len(grid)} rows, expected {tgt}", ln)
            doc.ones[name] = OneMor(src, tgt, grid)
        elif m := _RE_TWO.match(stripped):
            name = m.group(1)
            claim(name, ln)
            entries = {}
            while True:
                if i >= len(lines):
                    raise MorParseError(f"unterminated 2-morphism {name!r}", ln)
                body = lines[i].strip()
                i += 1
                if body == "end":
                    break
                if not body or body.startswith("#"):
                    continue
                e = _RE_ENTRY.match(body)
                if not e:
                    raise MorParseError(f"expected 'entry k j = [...]' or 'end', got {body!r}", i)
                key = (int(e.group(1)) - 1, int(e.group(2)) - 1)
                if key in entries:
                    raise MorParseError(f"entry {e.group(1)} {e.group(2)} given twice", i)
                entries[key] = (_parse_matrix(e.group(3), i), i)
            pending.append((name, m.group(2), m.group(3), entries, ln))
        else:
            raise MorParseError(f"cannot parse {stripped!r}", ln)

    for name, src_name, tgt_name, entries, ln in pending:
        if src_name not in doc.ones or tgt_name not in doc.ones:
            missing = src_name if src_name not in doc.ones else tgt_name
            raise MorParseError(f"2-morphism {name!r} refers to unknown 1-morphism {missing!r}", ln)
        f, g = doc.ones[src_name], doc.ones[tgt_name]
        if (f.src, f.tgt) != (g.src, g.tgt):
            raise MorTypeError(f"line {ln}: 2-morphism {name!r} between non-parallel 1-morphisms")
        extra = set(entries) - set(f.positions())
        if extra:
            k, j = min(extra)
            raise MorParseError(f"entry {k + 1} {j + 1} outside the {f.tgt}x{f.src} grid", ln)
        grid = []
        for k in range(f.tgt):
            row = []
            for j in range(f.src):
                r, c = twovect.total(g[k, j]), twovect.total(f[k, j])
                if (k, j) not in entries:
                    raise MorParseError(f"2-morphism {name!r} is missing entry {k + 1} {j + 1}", ln)
                rows, eln = entries[k, j]
                if not rows:
                    if r * c:
                        raise MorTypeError(f"line {eln}: entry {k + 1} {j + 1} must be {r}x{c}")
                    row.append(DenseMatrix(r, c))
                    continue
                mat = DenseMatrix.from_rows(rows)
                if mat.shape != (r, c):
                    raise MorTypeError(
                        f"line {eln}: entry {k + 1} {j + 1} is {mat.rows}x{mat.cols}, expected {r}x{c}")
                row.append(mat)
            grid.append(row)
        doc.twos[name] = TwoMor(f, g, grid)
    return doc


# --------------------------------------------------------------- expressions

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>\(\+\)|\.h2|\.h|\.v|∘₂|∘|⊙|⊕|\+)
  | (?P<lp>\() | (?P<rp>\)) | (?P<comma>,)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_πνθ][A-Za-z0-9_']*)
""", re.VERBOSE)

_OP_CLASS = {"+": "add", "(+)": "oplus", "⊕": "oplus", ".v": "vert", "⊙": "vert",
             ".h": "horiz", "∘": "horiz", ".h2": "horiz2", "∘₂": "horiz2"}
_LEVELS = (("add",), ("oplus",), ("vert",), ("horiz", "horiz2"))
_BUILDERS = {"id", "zero", "p", "i", "pi", "π", "nu", "ν", "theta", "θ", "normalize"}


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(expr: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m:
            raise MorParseError(f"unexpected character {expr[pos]!r}", column=pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos + 1))
        pos = m.end()
    out.append(_Tok("eof", "", len(expr) + 1))
    return out


class _Parser:
    """Precedence climbing over the four operator levels; builds a nested tuple tree."""

    def __init__(self, expr: str):
        self.toks = _tokenize(expr)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.pos]
        if kind and tok.kind != kind:
            shown = tok.text or "end of expression"
            raise MorParseError(f"expected {kind}, got {shown!r}", column=tok.col)
        self.pos += 1
        return tok

    def parse(self):
        tree = self.level(0)
        tok = self.peek()
        if tok.kind != "eof":
            raise MorParseError(f"unexpected {tok.text!r}", column=tok.col)
        return tree

    def level(self, depth: int):
        if depth == len(_LEVELS):
            return self.atom()
        left = self.level(depth + 1)
        while self.peek().kind == "op" and _OP_CLASS[self.peek().text] in _LEVELS[depth]:
            op = self.take()
            right = self.level(depth + 1)
            left = ("op", _OP_CLASS[op.text], left, right, op.col)
        return left

    def atom(self):
        tok = self.peek()
        if tok.kind == "lp":
            self.take()
            inner = self.level(0)
            self.take("rp")
            return inner
        if tok.kind == "num":
            self.take()
            return ("num", int(tok.text), tok.col)
        if tok.kind == "name":
            self.take()
            if tok.text in _BUILDERS and self.peek().kind == "lp":
                self.take()
                args = []
                if self.peek().kind != "rp":
                    args.append(self.level(0))
                    while self.peek().kind == "comma":
                        self.take()
                        args.append(self.level(0))
                self.take("rp")
                return ("call", tok.text, args, tok.col)
            return ("name", tok.text, tok.col)
        shown = tok.text or "end of expression"
        raise MorParseError(f"unexpected {shown!r}", column=tok.col)


def parse_expr(expr: str):
    """Syntax tree of ``expr``; raises :class:`MorParseError` on bad syntax."""
    return _Parser(expr).parse()


def _kind(v) -> str:
    if isinstance(v, bool):
        return "bool"
    return {int: "object", MatMor: "matrix", OneMor: "1-morphism", TwoMor: "2-morphism"}.get(
        type(v), type(v).__name__)


def _side(v, col) -> int:
    if v in (1, 2) and isinstance(v, int):
        return v
    raise MorTypeError("side must be 1 or 2", col)


def normalize_value(v):
    """Delete dimension-0 components from a 1-morphism, or from both ends of a 2-morphism."""
    if isinstance(v, OneMor):
        return twovect.normalized(v)
    if isinstance(v, TwoMor):
        _, _, into = twovect.normalize(v.src)
        _, out, _ = twovect.normalize(v.tgt)
        return twovect.vcompose2(out, twovect.vcompose2(v, into))
    return v


def _call(name: str, args: list, col: int):
    kinds = tuple(_kind(a) for a in args)
    if name == "id":
        if kinds == ("object",):
            return twovect.id_one(args[0])
        if kinds == ("1-morphism",):
            return twovect.id_two(args[0])
    elif name == "zero":
        if kinds == ("object", "object"):
            return twovect.zero_one(args[0], args[1])
        if kinds == ("1-morphism", "1-morphism"):
            return twovect.zero_two(args[0], args[1])
    elif name in ("p", "i"):
        if kinds == ("object", "object", "object"):
            build = biproduct2.box_proj if name == "p" else biproduct2.box_inj
            return build(args[0], args[1], _side(args[2], col))
    elif name in ("pi", "π", "nu", "ν"):
        if kinds == ("1-morphism", "1-morphism", "object"):
            build = twovect.local_proj if name in ("pi", "π") else twovect.local_inj
            return build(args[0], args[1], _side(args[2], col))
    elif name == "normalize":
        if len(args) == 1:
            return normalize_value(args[0])
    raise MorTypeError(f"{name}() does not accept ({', '.join(kinds)})", col)


def _binary(op: str, a, b, col: int):
    ka, kb = _kind(a), _kind(b)
    if op == "add":
        if ka == kb == "2-morphism":
            return twovect.add_two(a, b)
        if ka == kb == "matrix":
            return matcat.add_via_biproduct(a, b)
    elif op == "oplus":
        if ka == kb == "object":
            return biproduct2.box_obj(a, b)
        if ka == kb == "matrix":
            return matcat.oplus(a, b)
        if ka == kb == "1-morphism":
            return twovect.oplus_one(a, b)
        if ka == kb == "2-morphism":
            return twovect.oplus_two(a, b)
    elif op == "vert":
        if ka == kb == "2-morphism":
            return twovect.vcompose2(a, b)
    elif op == "horiz2":
        if ka == kb == "2-morphism":
            return twovect.hcompose2(a, b)
    elif op == "horiz":
        if ka == kb == "matrix":
            return matcat.compose(a, b)
        if ka == kb == "1-morphism":
            return twovect.hcompose1(a, b)
        if ka == kb == "2-morphism":
            return twovect.hcompose2(a, b)
        if (ka, kb) == ("1-morphism", "2-morphism"):
            return twovect.whisker_left(a, b)
        if (ka, kb) == ("2-morphism", "1-morphism"):
            return twovect.whisker_right(a, b)
    raise MorTypeError(f"operator cannot combine a {ka} with a {kb}", col)


def evaluate(expr: str, doc: MorDoc):
    """Evaluate ``expr`` against the names declared in ``doc``.

    Raises :class:`MorParseError` for bad syntax or unknown names and
    :class:`MorTypeError` when operands do not compose.
    """
    tree = parse_expr(expr)

    def ev(node, tag_ok=False):
        kind = node[0]
        if kind == "num":
            return node[1]
        if kind == "name":
            name = node[1]
            try:
                return doc.lookup(name)
            except KeyError:
                if tag_ok:
                    return _Tag(name)
                raise MorParseError(f"unknown name {name!r}", column=node[2]) from None
        if kind == "call":
            _, name, args, col = node
            is_theta = name in ("theta", "θ")
            vals = [ev(a, tag_ok=is_theta and n == 0) for n, a in enumerate(args)]
            if is_theta and vals and isinstance(vals[0], _Tag):
                vals[0] = vals[0].name
                return _call_theta(vals, col)
            try:
                return _call(name, vals, col)
            except MorTypeError:
                raise
            except ShapeError as exc:
                raise MorTypeError(str(exc), col) from None
        _, op, left, right, col = node
        a, b = ev(left), ev(right)
        try:
            return _binary(op, a, b, col)
        except MorTypeError:
            raise
        except ShapeError as exc:
            raise MorTypeError(str(exc), col) from None

    return ev(tree)


@dataclass(frozen=True)
class _Tag:
    name: str


def _call_theta(vals: list, col: int):
    if len(vals) != 3 or any(_kind(v) != "object" for v in vals[1:]):
        raise MorTypeError("theta takes (A|B|AB|BA|P, n, m)", col)
    if vals[0] not in ("A", "B", "AB", "BA", "P"):
        raise MorTypeError("theta needs one of A, B, AB, BA, P", col)
    return getattr(biproduct2.make_witness(vals[1], vals[2]), "theta_" + vals[0])
