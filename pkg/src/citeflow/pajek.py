"""Reading and writing the Pajek text formats (.net, .vec, .clu).

Supported .net grammar: one ``*Vertices n`` header, optional vertex lines
``id "label"`` (bare labels allowed, trailing layout fields ignored), one or
more ``*Arcs`` sections of ``tail head [weight]`` lines, ``%`` comments and
blank lines anywhere.  ``*Edges`` is rejected: citation networks are directed.
"""

from __future__ import annotations

from fractions import Fraction

from .network import ArcWeights, Network


class PajekParseError(ValueError):
    """Malformed Pajek input; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_pajek(text: str) -> Network:
    """Parse .net text into a Network.

    Vertices without an explicit line get str(id) as label.  Parallel arcs
    and loops are preserved exactly as given.
    """
    n = -1
    labels: list[str] = []
    tails: list[int] = []
    heads: list[int] = []
    weights: list[float] = []
    section = None  # None -> before header, "vertices", "arcs"

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("*"):
            key = line.split()[0].lower()
            if key == "*vertices":
                if n >= 0:
                    raise PajekParseError("duplicate *Vertices section", line_no)
                parts = line.split()
                if len(parts) != 2:
                    raise PajekParseError("expected '*Vertices n'", line_no)
                try:
                    n = int(parts[1])
                except ValueError:
                    raise PajekParseError("vertex count is not an integer",
                                          line_no) from None
                if n < 0:
                    raise PajekParseError("negative vertex count", line_no)
                labels = [str(v) for v in range(1, n + 1)]
                section = "vertices"
            elif key == "*arcs":
                if n < 0:
                    raise PajekParseError("*Arcs before *Vertices", line_no)
                section = "arcs"
            elif key == "*edges":
                raise PajekParseError(
                    "undirected *Edges are not supported; citation networks "
                    "are directed", line_no)
            else:
                raise PajekParseError(f"unsupported section {key!r}", line_no)
            continue
        if section == "vertices":
            vid, label = _vertex_line(line, line_no)
            if not 1 <= vid <= n:
                raise PajekParseError(f"vertex id {vid} out of range 1..{n}",
                                      line_no)
            labels[vid - 1] = label
        elif section == "arcs":
            parts = line.split()
            if len(parts) not in (2, 3):
                raise PajekParseError("expected 'tail head [weight]'", line_no)
            try:
                tail, head = int(parts[0]), int(parts[1])
            except ValueError:
                raise PajekParseError("arc endpoint is not an integer",
                                      line_no) from None
            weight = 1.0
            if len(parts) == 3:
                try:
                    weight = float(parts[2])
                except ValueError:
                    raise PajekParseError("arc weight is not a number",
                                          line_no) from None
            if not 1 <= tail <= n or not 1 <= head <= n:
                raise PajekParseError(
                    f"arc ({tail}, {head}) references a vertex outside 1..{n}",
                    line_no)
            tails.append(tail)
            heads.append(head)
            weights.append(weight)
        else:
            raise PajekParseError("content before *Vertices header", line_no)

    if n < 0:
        raise PajekParseError("missing *Vertices header", max(1, text.count("\n") + 1))
    return Network(n, zip(tails, heads, weights), labels)


def _vertex_line(line: str, line_no: int) -> tuple[int, str]:
    parts = line.split(None, 1)
    try:
        vid = int(parts[0])
    except ValueError:
        raise PajekParseError("vertex id is not an integer", line_no) from None
    if len(parts) == 1:
        return vid, str(vid)
    rest = parts[1].lstrip()
    if rest.startswith('"'):
        end = rest.find('"', 1)
        if end < 0:
            raise PajekParseError("unterminated label quote", line_no)
        return vid, rest[1:end]
    return vid, rest.split()[0]


# --- writers ---

def format_number(value) -> str:
    """Integral values render without a decimal point; floats use repr."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        value = float(value)
    value = float(value)
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def write_pajek(net: Network, weights: ArcWeights | None = None) -> str:
    """Render a Network as .net text.

    `weights` overrides the stored arc weight column (same arc order).
    """
    if weights is not None and len(weights) != net.m:
        raise ValueError("weight vector does not match arc count")
    out = [f"*Vertices {net.n}"]
    for v in range(1, net.n + 1):
        out.append(f'{v} "{net.label(v)}"')
    out.append("*Arcs")
    for i in range(net.m):
        tail, head, w = net.arc(i)
        value = weights[i] if weights is not None else w
        out.append(f"{tail} {head} {format_number(value)}")
    return "\n".join(out) + "\n"


def write_vector(values) -> str:
    """Render per-vertex numeric values as .vec text."""
    seq = list(values)
    out = [f"*Vertices {len(seq)}"]
    out.extend(format_number(v) for v in seq)
    return "\n".join(out) + "\n"


def write_partition(classes) -> str:
    """Render per-vertex integer class ids as .clu text."""
    seq = [int(c) for c in classes]
    out = [f"*Vertices {len(seq)}"]
    out.extend(str(c) for c in seq)
    return "\n".join(out) + "\n"
