"""Tiny evaluator for the continuous-assign Verilog subset the emitters produce.

Every assignment is masked to the declared width of its target, which is how
a simulator treats an unsigned vector, so width bugs in the netlist show up.
"""
import re

_DECL = re.compile(r"\s*(?:input|output)?\s*wire\s+\[(\d+):0\]\s+(\w+)")
_ASSIGN = re.compile(r"\s*assign\s+(\w+)\s*=\s*(.+?);")
_TERM = re.compile(r"\(?\s*(\w+)\s*(<<|>>)?\s*(\d+)?\s*\)?")
_LIT = re.compile(r"(\d+)'h([0-9a-fA-F]+)")


class Module:
    def __init__(self, text):
        self.widths = {}
        self.assigns = []
        self.name = re.search(r"module\s+(\w+)", text).group(1)
        for line in text.splitlines():
            line = line.split("//", 1)[0]
            m = _DECL.match(line)
            if m:
                self.widths[m.group(2)] = int(m.group(1)) + 1
                continue
            m = _ASSIGN.match(line)
            if m:
                self.assigns.append((m.group(1), m.group(2).strip()))
        self.outputs = re.findall(r"output\s+wire\s+\[\d+:0\]\s+(\w+)", text)

    def _operand(self, text, env):
        lit = _LIT.fullmatch(text.strip())
        if lit:
            return int(lit.group(2), 16)
        m = _TERM.fullmatch(text.strip())
        if not m:
            raise ValueError(f"unsupported operand {text!r}")
        v = env[m.group(1)]
        if m.group(2) == "<<":
            v <<= int(m.group(3))
        elif m.group(2) == ">>":
            v >>= int(m.group(3))
        return v

    def _expr(self, text, env):
        for op in (" + ", " - ", " * "):
            if op in text:
                a, b = text.split(op)
                a, b = self._operand(a, env), self._operand(b, env)
                return a + b if op == " + " else a - b if op == " - " else a * b
        return self._operand(text, env)

    def run(self, x):
        env = {"x": x & ((1 << self.widths["x"]) - 1)}
        pending = list(self.assigns)
        while pending:
            rest = []
            for lhs, rhs in pending:
                try:
                    v = self._expr(rhs, env)
                except KeyError:
                    rest.append((lhs, rhs))
                    continue
                env[lhs] = v & ((1 << self.widths[lhs]) - 1)
            if len(rest) == len(pending):
                raise ValueError("combinational loop or undeclared wire")
            pending = rest
        return {o: env[o] for o in self.outputs}
