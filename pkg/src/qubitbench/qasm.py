"""OpenQASM 2.0 frontend: parser for the supported subset and canonical emitter.

Supported statements: the `OPENQASM 2.0;` header, `include "qelib1.inc";`
(recognized and skipped; its standard gates are built in), `qreg`/`creg`
declarations, gate applications over the supported set, `barrier`,
`measure a -> b`, and `//` line comments.  Angle expressions accept numeric
literals, `pi`, unary minus, `+ - * /`, and parentheses.  Whole-register
operands broadcast in index order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import BARRIER, GATE_SIGNATURES, MEASURE, Circuit, Instruction


@dataclass
class QasmError(Exception):
    line: int
    column: int
    kind: str  # syntax | unknown_gate | bad_arity | index_out_of_range | redeclaration | unsupported_feature
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind}: {self.message}"


_TOKEN_RE = re.compile(
    r"""
    (?P<COMMENT>//[^\n]*)
  | (?P<WS>[ \t\r]+)
  | (?P<NL>\n)
  | (?P<REAL>(\d+\.\d*|\.\d+)([eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<INT>\d+)
  | (?P<ID>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>"[^"\n]*")
  | (?P<ARROW>->)
  | (?P<SYM>[;,()\[\]{}+\-*/=])
    """,
    re.VERBOSE,
)

_UNSUPPORTED = {"gate", "if", "reset", "opaque"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmError(line, col, "syntax", f"unexpected character {text[pos]!r}")
        kind = m.lastgroup or "SYM"
        tok = m.group()
        if kind == "NL":
            line += 1
            col = 1
        elif kind in ("WS", "COMMENT"):
            col += len(tok)
        else:
            tokens.append(_Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.qregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
        self.cregs: dict[str, tuple[int, int]] = {}
        self.num_qubits = 0
        self.num_clbits = 0
        self.ops: list[Instruction] = []

    # --- token plumbing -------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind.lower()
            raise self.err(tok, "syntax", f"expected {want!r}, got {tok.text!r}")
        return tok

    @staticmethod
    def err(tok: _Token, kind: str, message: str) -> QasmError:
        return QasmError(tok.line, tok.column, kind, message)

    # --- grammar --------------------------------------------------------

    def parse(self) -> Circuit:
        self.header()
        while self.peek().kind != "EOF":
            self.statement()
        return Circuit(self.num_qubits, self.num_clbits, tuple(self.ops))

    def header(self) -> None:
        tok = self.peek()
        if tok.kind != "ID" or tok.text != "OPENQASM":
            raise self.err(tok, "syntax", "file must start with 'OPENQASM 2.0;'")
        self.next()
        version = self.next()
        if version.text != "2.0":
            raise self.err(version, "unsupported_feature",
                           f"only OPENQASM 2.0 is supported, got {version.text!r}")
        self.expect("SYM", ";")

    def statement(self) -> None:
        tok = self.peek()
        if tok.kind != "ID":
            raise self.err(tok, "syntax", f"expected a statement, got {tok.text!r}")
        word = tok.text
        if word == "include":
            self.next()
            name = self.expect("STRING")
            if name.text != '"qelib1.inc"':
                raise self.err(name, "unsupported_feature",
                               f"only qelib1.inc may be included, got {name.text}")
            self.expect("SYM", ";")
        elif word in ("qreg", "creg"):
            self.register_decl(word)
        elif word in _UNSUPPORTED:
            raise self.err(tok, "unsupported_feature", f"{word!r} is not supported")
        elif word == MEASURE:
            self.measure_stmt()
        elif word == BARRIER:
            self.barrier_stmt()
        else:
            self.gate_stmt()

    def register_decl(self, which: str) -> None:
        self.next()
        name = self.expect("ID")
        if name.text in self.qregs or name.text in self.cregs:
            raise self.err(name, "redeclaration", f"register {name.text!r} already declared")
        self.expect("SYM", "[")
        size_tok = self.expect("INT")
        size = int(size_tok.text)
        if size < 1:
            raise self.err(size_tok, "syntax", "register size must be >= 1")
        self.expect("SYM", "]")
        self.expect("SYM", ";")
        if which == "qreg":
            self.qregs[name.text] = (self.num_qubits, size)
            self.num_qubits += size
        else:
            self.cregs[name.text] = (self.num_clbits, size)
            self.num_clbits += size

    def argument(self, registers: dict[str, tuple[int, int]],
                 what: str) -> tuple[list[int], _Token]:
        """Parse `name` or `name[i]`; return flat indices (all for broadcast)."""
        name = self.expect("ID")
        reg = registers.get(name.text)
        if reg is None:
            raise self.err(name, "syntax", f"undeclared {what} register {name.text!r}")
        offset, size = reg
        if self.peek().text == "[":
            self.next()
            idx_tok = self.expect("INT")
            idx = int(idx_tok.text)
            if idx >= size:
                raise self.err(idx_tok, "index_out_of_range",
                               f"{name.text}[{idx}] exceeds size {size}")
            self.expect("SYM", "]")
            return [offset + idx], name
        return [offset + i for i in range(size)], name

    def measure_stmt(self) -> None:
        kw = self.next()
        src, _ = self.argument(self.qregs, "quantum")
        self.expect("ARROW")
        dst, _ = self.argument(self.cregs, "classical")
        self.expect("SYM", ";")
        if len(src) != len(dst):
            raise self.err(kw, "bad_arity",
                           f"measure operand sizes differ ({len(src)} vs {len(dst)})")
        for q, c in zip(src, dst):
            self.ops.append(Instruction(MEASURE, (), (q,), (c,)))

    def barrier_stmt(self) -> None:
        kw = self.next()
        qubits: list[int] = []
        while True:
            arg, name = self.argument(self.qregs, "quantum")
            for q in arg:
                if q in qubits:
                    raise self.err(name, "bad_arity", "duplicate qubit in barrier")
            qubits.extend(arg)
            if self.peek().text != ",":
                break
            self.next()
        self.expect("SYM", ";")
        self.ops.append(Instruction(BARRIER, (), tuple(qubits), ()))

    def gate_stmt(self) -> None:
        name = self.next()
        sig = GATE_SIGNATURES.get(name.text)
        if sig is None:
            raise self.err(name, "unknown_gate", f"unknown gate {name.text!r}")
        n_params, n_qubits = sig
        params: list[float] = []
        if self.peek().text == "(":
            self.next()
            if self.peek().text != ")":
                params.append(self.expression())
                while self.peek().text == ",":
                    self.next()
                    params.append(self.expression())
            self.expect("SYM", ")")
        if len(params) != n_params:
            raise self.err(name, "bad_arity",
                           f"{name.text} takes {n_params} parameter(s), got {len(params)}")
        args: list[list[int]] = []
        while True:
            arg, _ = self.argument(self.qregs, "quantum")
            args.append(arg)
            if self.peek().text != ",":
                break
            self.next()
        self.expect("SYM", ";")
        if len(args) != n_qubits:
            raise self.err(name, "bad_arity",
                           f"{name.text} acts on {n_qubits} qubit(s), got {len(args)}")
        # broadcast: register-sized operands must agree; single indices repeat
        width = max(len(a) for a in args)
        if any(len(a) not in (1, width) for a in args):
            raise self.err(name, "bad_arity", "mismatched broadcast register sizes")
        for i in range(width):
            qubits = tuple(a[i] if len(a) > 1 else a[0] for a in args)
            if len(set(qubits)) != len(qubits):
                raise self.err(name, "bad_arity", f"duplicate qubit operand in {name.text}")
            self.ops.append(Instruction(name.text, tuple(params), qubits, ()))

    # --- angle expressions ----------------------------------------------

    def expression(self) -> float:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            if op.text == "*":
                value *= rhs
            else:
                if rhs == 0.0:
                    raise self.err(op, "syntax", "division by zero in angle expression")
                value /= rhs
        return value

    def factor(self) -> float:
        tok = self.peek()
        if tok.text == "-":
            self.next()
            return -self.factor()
        if tok.text == "(":
            self.next()
            value = self.expression()
            self.expect("SYM", ")")
            return value
        if tok.kind in ("INT", "REAL"):
            self.next()
            return float(tok.text)
        if tok.kind == "ID" and tok.text == "pi":
            self.next()
            return math.pi
        raise self.err(tok, "syntax", f"expected a number, 'pi' or '(', got {tok.text!r}")


def parse_qasm(text: str) -> Circuit:
    """Parse OpenQASM 2.0 source into a Circuit; raises QasmError with location."""
    return _Parser(text).parse()


def _fmt_angle(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"non-finite angle {value!r}")
    return f"{value:.17g}"


def emit_qasm(circuit: Circuit) -> str:
    """Deterministic canonical QASM: one statement per line, explicit indices,
    angles printed with 17 significant digits (re-parse to the same double)."""
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";']
    if circuit.num_qubits > 0:
        lines.append(f"qreg q[{circuit.num_qubits}];")
    if circuit.num_clbits > 0:
        lines.append(f"creg c[{circuit.num_clbits}];")
    for op in circuit.ops:
        qs = ",".join(f"q[{q}]" for q in op.qubits)
        if op.name == MEASURE:
            lines.append(f"measure q[{op.qubits[0]}] -> c[{op.clbits[0]}];")
        elif op.params:
            angles = ",".join(_fmt_angle(p) for p in op.params)
            lines.append(f"{op.name}({angles}) {qs};")
        else:
            lines.append(f"{op.name} {qs};")
    return "\n".join(lines) + "\n"
