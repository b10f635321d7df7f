"""Verilog emitters: shift-adds netlist, multiplier reference, testbench."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import InvalidIdentifier
from .graph import Design, Op, evaluate, output_width

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = {
    "always", "and", "assign", "begin", "buf", "case", "default", "else", "end", "endcase",
    "endfunction", "endmodule", "endtask", "for", "function", "if", "initial", "inout", "input",
    "integer", "module", "nand", "nor", "not", "or", "output", "parameter", "reg", "task",
    "wire", "xor", "xnor", "logic", "signed", "unsigned", "genvar", "generate", "localparam",
}


def check_identifier(name: str) -> str:
    if not _IDENT.match(name or "") or name in _KEYWORDS:
        raise InvalidIdentifier(f"{name!r} is not a valid HDL identifier")
    return name


@dataclass
class HdlConfig:
    module_name: str = "vlcm"
    input_width: int = 16
    vector_count: int = 10000
    seed: int = 0

    def __post_init__(self):
        check_identifier(self.module_name)
        if self.vector_count < 1:
            raise ValueError("vector_count must be at least 1")


def _vec(width):
    return f"[{width - 1}:0]"


def _operand(name, shift):
    if shift > 0:
        return f"({name} << {shift})"
    if shift < 0:
        return f"({name} >> {-shift})"
    return name


def _node_names(design: Design):
    g = design.graph
    names = {0: "x"}
    taken = {"x"} | set(design.outputs)
    direct = {}
    for port, ref in design.outputs.items():
        if ref.shift == 0 and ref.node != 0 and ref.node not in direct:
            direct[ref.node] = port
    for n in g.nodes[1:]:
        if n.id in direct:
            names[n.id] = direct[n.id]
            continue
        base = n.label if n.label and _IDENT.match(n.label) else f"n{n.id}"
        name = base
        while name in taken or name in _KEYWORDS:
            name = f"{base}_n{n.id}"
        taken.add(name)
        names[n.id] = name
    return names, direct


def _ports(design: Design, cfg: HdlConfig):
    ports = [f"    input  wire {_vec(cfg.input_width)} x"]
    for port, value in design.targets.items():
        check_identifier(port)
        ports.append(f"    output wire {_vec(output_width(value, cfg.input_width))} {port}")
    return ports


def emit_shift_adds_hdl(design: Design, cfg: HdlConfig) -> str:
    g = design.graph
    w = cfg.input_width
    names, direct = _node_names(design)
    lines = [
        f"// {len(g.nodes) - 1} adders/subtractors, {design.stats.step if design.stats else '?'} adder-steps",
        f"module {cfg.module_name} (",
        ",\n".join(_ports(design, cfg)),
        ");",
    ]
    body = []
    for nid in g.topo_order():
        n = g.nodes[nid]
        if n.op is Op.INPUT:
            continue
        width = output_width(n.value, w)
        assert (n.value * ((1 << w) - 1)).bit_length() <= width
        if nid not in direct:
            lines.append(f"    wire {_vec(width)} {names[nid]};")
        sym = "+" if n.op is Op.ADD else "-"
        a = _operand(names[n.lhs.node], n.lhs.shift)
        b = _operand(names[n.rhs.node], n.rhs.shift)
        body.append(f"    assign {names[nid]} = {a} {sym} {b};  // {n.value}")
    lines.extend(body)
    for port, ref in design.outputs.items():
        if direct.get(ref.node) == port:
            continue
        lines.append(f"    assign {port} = {_operand(names[ref.node], ref.shift)};")
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


def emit_multiplier_hdl(constants: dict, cfg: HdlConfig) -> str:
    """Reference design multiplying ``x`` by each literal constant."""
    w = cfg.input_width
    lines = [f"module {cfg.module_name}_mul (", f"    input  wire {_vec(w)} x"]
    ports, assigns = [], []
    for port, value in constants.items():
        check_identifier(port)
        ow = output_width(value, w)
        ports.append(f"    output wire {_vec(ow)} {port}")
        if value == 1:
            assigns.append(f"    assign {port} = x;")
        else:
            assigns.append(f"    assign {port} = x * {value.bit_length()}'h{value:x};")
    lines[-1] += "," if ports else ""
    lines.append(",\n".join(ports))
    lines.append(");")
    lines.extend(assigns)
    lines.append("endmodule")
    return "\n".join(lines) + "\n"


def test_vectors(cfg: HdlConfig):
    rng = random.Random(cfg.seed)
    w = cfg.input_width
    return [0, 1, (1 << w) - 1] + [rng.getrandbits(w) for _ in range(cfg.vector_count)]


def expected_values(design: Design, cfg: HdlConfig):
    """(x, {port: value}) for every testbench vector, from the evaluator."""
    return [(x, evaluate(design, x)) for x in test_vectors(cfg)]


def emit_testbench(design: Design, cfg: HdlConfig) -> str:
    w = cfg.input_width
    ports = list(design.targets)
    widths = [output_width(design.targets[p], w) for p in ports]
    total = sum(widths)
    vectors = expected_values(design, cfg)
    hx = -(-w // 4)
    he = -(-total // 4)
    lines = [
        "`timescale 1ns/1ps",
        f"module {cfg.module_name}_tb;",
        f"    reg  {_vec(w)} x;",
    ]
    for p, pw in zip(ports, widths):
        lines.append(f"    wire {_vec(pw)} {p};")
    lines += [
        f"    wire {_vec(total)} got = {{{', '.join(reversed(ports))}}};",
        "    integer errors;",
        "",
        f"    {cfg.module_name} dut (.x(x), " + ", ".join(f".{p}({p})" for p in ports) + ");",
        "",
        f"    task chk(input {_vec(w)} xv, input {_vec(total)} want);",
        "        begin",
        "            x = xv;",
        "            #1;",
        "            if (got !== want) begin",
        "                errors = errors + 1;",
        '                $display("FAIL x=%h got=%h want=%h", xv, got, want);',
        "            end",
        "        end",
        "    endtask",
        "",
        "    initial begin",
        "        errors = 0;",
    ]
    for x, vals in vectors:
        packed = 0
        off = 0
        for p, pw in zip(ports, widths):
            packed |= vals[p] << off
            off += pw
        lines.append(f"        chk({w}'h{x:0{hx}x}, {total}'h{packed:0{he}x});")
    lines += [
        "        if (errors == 0)",
        f'            $display("PASS: {len(vectors)} vectors");',
        "        else",
        '            $display("FAIL: %0d mismatches", errors);',
        "        $finish;",
        "    end",
        "endmodule",
    ]
    return "\n".join(lines) + "\n"


test_vectors.__test__ = False
