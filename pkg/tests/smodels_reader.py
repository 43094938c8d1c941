"""Reader for the numeric intermediate format (test utility).

Parses emitted text back into NumericRule records and the section data so
round-trip tests can compare against the translator's output structurally.
"""

from ratground.emitter import NumericRule


def parse_numeric(text):
    lines = text.splitlines()
    pos = 0
    statements = []
    while lines[pos] != "0":
        statements.append(_parse_statement(lines[pos]))
        pos += 1
    pos += 1
    symbols = []
    while lines[pos] != "0":
        ident, _, name = lines[pos].partition(" ")
        symbols.append((int(ident), name))
        pos += 1
    pos += 1
    assert lines[pos] == "B+"
    pos += 1
    bplus = []
    while lines[pos] != "0":
        bplus.append(int(lines[pos]))
        pos += 1
    pos += 1
    assert lines[pos] == "B-"
    pos += 1
    bminus = []
    while lines[pos] != "0":
        bminus.append(int(lines[pos]))
        pos += 1
    pos += 1
    models = int(lines[pos])
    return statements, symbols, bplus, bminus, models


def _parse_statement(line):
    vals = [int(v) for v in line.split()]
    kind = vals[0]
    if kind == 1:
        head, nlits, nneg = vals[1:4]
        lits = vals[4:4 + nlits]
        assert len(lits) == nlits
        return NumericRule(1, heads=(head,), neg=tuple(lits[:nneg]),
                           pos=tuple(lits[nneg:]))
    if kind == 2:
        head, nlits, nneg, bound = vals[1:5]
        lits = vals[5:5 + nlits]
        assert len(lits) == nlits
        return NumericRule(2, heads=(head,), bound=bound,
                           neg=tuple(lits[:nneg]), pos=tuple(lits[nneg:]))
    if kind == 5:
        head, bound, nlits, nneg = vals[1:5]
        lits = vals[5:5 + nlits]
        weights = vals[5 + nlits:5 + 2 * nlits]
        assert len(weights) == nlits
        return NumericRule(5, heads=(head,), bound=bound,
                           neg=tuple(lits[:nneg]), pos=tuple(lits[nneg:]),
                           weights=tuple(weights))
    if kind == 6:
        assert vals[1] == 0
        nlits, nneg = vals[2:4]
        lits = vals[4:4 + nlits]
        weights = vals[4 + nlits:4 + 2 * nlits]
        assert len(weights) == nlits
        return NumericRule(6, neg=tuple(lits[:nneg]), pos=tuple(lits[nneg:]),
                           weights=tuple(weights))
    if kind == 8:
        nheads = vals[1]
        heads = vals[2:2 + nheads]
        nlits, nneg = vals[2 + nheads:4 + nheads]
        lits = vals[4 + nheads:4 + nheads + nlits]
        assert len(lits) == nlits
        return NumericRule(8, heads=tuple(heads), neg=tuple(lits[:nneg]),
                           pos=tuple(lits[nneg:]))
    raise AssertionError(f"unknown statement kind in {line!r}")
